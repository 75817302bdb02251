#include "wreathgen/group_spec.hpp"

#include <cctype>
#include <stdexcept>

#include "wreathgen/errors.hpp"

namespace wreathgen {

namespace {

std::size_t skip_space(std::string_view text, std::size_t pos)
{
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
  return pos;
}

std::size_t parse_size(std::string_view text, std::size_t& pos, std::size_t offset)
{
  const std::size_t start = pos;
  std::size_t value = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
    if (value > 1'000'000)
      throw ParseError("degree too large", offset + start, std::string(text.substr(start)));
    ++pos;
  }
  if (pos == start)
    throw ParseError("expected a degree", offset + start,
                     std::string(text.substr(start, 1)));
  return value;
}

Permutation cycle(std::size_t degree, std::size_t from, std::size_t to)
{
  std::vector<Point> c;
  for (std::size_t x = from; x <= to; ++x)
    c.push_back(static_cast<Point>(x));
  return Permutation::from_cycles(degree, {c});
}

std::vector<Permutation> builtin_generators(const GroupSpec& spec)
{
  const std::size_t k = spec.degree;
  switch (spec.kind) {
  case GroupSpec::Kind::symmetric:
    if (k == 2)
      return {cycle(2, 0, 1)};
    return {cycle(k, 0, 1), cycle(k, 0, k - 1)};
  case GroupSpec::Kind::alternating:
    if (k == 3)
      return {cycle(3, 0, 2)};
    // (1 2 3) with (1 ... k) for odd k, (2 ... k) for even k.
    return {cycle(k, 0, 2), k % 2 == 1 ? cycle(k, 0, k - 1) : cycle(k, 1, k - 1)};
  case GroupSpec::Kind::cyclic:
    return {cycle(k, 0, k - 1)};
  case GroupSpec::Kind::dihedral: {
    std::vector<Point> reflection(k);
    for (std::size_t x = 0; x < k; ++x)
      reflection[x] = static_cast<Point>(k - 1 - x);
    return {cycle(k, 0, k - 1), Permutation(reflection)};
  }
  case GroupSpec::Kind::custom:
    return spec.generators;
  }
  return {};
}

} // namespace

GroupSpec GroupSpec::symmetric(std::size_t k)
{
  if (k < 2)
    throw std::invalid_argument("symmetric groups need degree >= 2");
  return {Kind::symmetric, k, {}};
}

GroupSpec GroupSpec::alternating(std::size_t k)
{
  if (k < 3)
    throw std::invalid_argument("alternating groups need degree >= 3");
  return {Kind::alternating, k, {}};
}

GroupSpec GroupSpec::cyclic(std::size_t k)
{
  if (k < 2)
    throw std::invalid_argument("cyclic groups need order >= 2");
  return {Kind::cyclic, k, {}};
}

GroupSpec GroupSpec::dihedral(std::size_t k)
{
  if (k < 3)
    throw std::invalid_argument("dihedral groups need degree >= 3");
  return {Kind::dihedral, k, {}};
}

GroupSpec GroupSpec::custom(std::size_t degree, std::vector<Permutation> generators)
{
  if (degree < 1)
    throw std::invalid_argument("custom groups need degree >= 1");
  for (const auto& g : generators)
    if (g.degree() != degree)
      throw DegreeMismatch("custom generator degree differs from the group degree");
  return {Kind::custom, degree, std::move(generators)};
}

std::string GroupSpec::name() const
{
  switch (kind) {
  case Kind::symmetric:
    return "S" + std::to_string(degree);
  case Kind::alternating:
    return "A" + std::to_string(degree);
  case Kind::cyclic:
    return "C" + std::to_string(degree);
  case Kind::dihedral:
    return "D" + std::to_string(degree);
  case Kind::custom: {
    std::string out = "P" + std::to_string(degree) + "[";
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (i != 0)
        out += ", ";
      out += to_cycle_string(generators[i]);
    }
    return out + "]";
  }
  }
  return {};
}

GroupSpec parse_group_spec(std::string_view text, std::size_t offset)
{
  std::size_t pos = skip_space(text, 0);
  if (pos == text.size())
    throw ParseError("empty group spec", offset + pos);
  const std::size_t head = pos;
  const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
  ++pos;
  const std::size_t degree_pos = pos;
  const std::size_t degree = parse_size(text, pos, offset);

  auto check_end = [&](std::size_t p) {
    p = skip_space(text, p);
    if (p != text.size())
      throw ParseError("unexpected trailing input", offset + p, std::string(text.substr(p)));
  };
  auto build = [&](auto factory) {
    try {
      return factory(degree);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), offset + degree_pos, std::string(text.substr(head, pos - head)));
    }
  };

  switch (kind) {
  case 'S':
    check_end(pos);
    return build(GroupSpec::symmetric);
  case 'A':
    check_end(pos);
    return build(GroupSpec::alternating);
  case 'C':
    check_end(pos);
    return build(GroupSpec::cyclic);
  case 'D':
    check_end(pos);
    return build(GroupSpec::dihedral);
  case 'P': {
    if (degree < 1)
      throw ParseError("custom groups need degree >= 1", offset + degree_pos);
    pos = skip_space(text, pos);
    if (pos >= text.size() || text[pos] != '[')
      throw ParseError("expected '[' after the degree", offset + pos,
                       pos < text.size() ? std::string(1, text[pos]) : std::string{});
    ++pos;
    std::vector<Permutation> gens;
    std::size_t start = pos;
    int depth = 0;
    for (;; ++pos) {
      if (pos >= text.size())
        throw ParseError("unterminated generator list", offset + start - 1, "[");
      const char c = text[pos];
      if (c == '(')
        ++depth;
      else if (c == ')')
        --depth;
      if (depth == 0 && (c == ',' || c == ']')) {
        const std::string_view word = text.substr(start, pos - start);
        const std::size_t first = skip_space(word, 0);
        if (first == word.size()) {
          if (c == ',' || !gens.empty())
            throw ParseError("empty generator", offset + start);
        } else {
          try {
            gens.push_back(parse_permutation(word, degree));
          } catch (const ParseError& e) {
            throw ParseError("bad generator", offset + start + e.position(), e.token());
          }
        }
        start = pos + 1;
        if (c == ']')
          break;
      }
    }
    check_end(pos + 1);
    return GroupSpec::custom(degree, std::move(gens));
  }
  default:
    throw ParseError("unknown group kind (expected S, A, C, D or P)", offset + head,
                     std::string(1, text[head]));
  }
}

std::vector<GroupSpec> parse_group_sequence(std::string_view text)
{
  std::vector<GroupSpec> out;
  std::size_t start = 0;
  std::size_t open = 0;
  int depth = 0;
  for (std::size_t pos = 0; pos <= text.size(); ++pos) {
    const char c = pos < text.size() ? text[pos] : ';';
    if (pos == text.size() && depth > 0)
      throw ParseError("unterminated generator list", open, "[");
    if (c == '[' && depth++ == 0)
      open = pos;
    else if (c == ']')
      --depth;
    if (c == ';' && depth == 0) {
      const std::string_view item = text.substr(start, pos - start);
      if (skip_space(item, 0) == item.size()) {
        if (pos < text.size() || !out.empty())
          throw ParseError("empty entry in group sequence", start);
      } else {
        out.push_back(parse_group_spec(item, start));
      }
      start = pos + 1;
    }
  }
  return out;
}

std::string sequence_name(const std::vector<GroupSpec>& specs)
{
  std::string out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i != 0)
      out += "; ";
    out += specs[i].name();
  }
  return out;
}

PermGroup realize(const GroupSpec& spec)
{
  PermGroup group = PermGroup::generate(builtin_generators(spec), spec.degree);
  if (spec.kind != GroupSpec::Kind::custom && !is_transitive(group))
    throw std::logic_error("built-in group " + spec.name() + " is not transitive");
  return group;
}

} // namespace wreathgen
