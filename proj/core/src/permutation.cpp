#include "wreathgen/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "wreathgen/errors.hpp"

namespace wreathgen {

Permutation::Permutation(std::size_t degree) : images_(degree)
{
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y])
      throw std::invalid_argument("image table is not a bijection");
    seen[y] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles)
{
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (Point x : cycle) {
      if (x >= degree)
        throw std::invalid_argument("cycle point out of range");
      if (used[x])
        throw std::invalid_argument("cycles are not disjoint");
      used[x] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      p.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  return p;
}

bool Permutation::is_identity() const noexcept
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

std::optional<Point> Permutation::first_moved() const noexcept
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return static_cast<Point>(i);
  return std::nullopt;
}

bool Permutation::fixes(std::span<const Point> points) const noexcept
{
  return std::all_of(points.begin(), points.end(),
                     [this](Point x) { return images_[x] == x; });
}

Permutation Permutation::inverse() const
{
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(std::int64_t exponent) const
{
  Permutation base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                 : static_cast<std::uint64_t>(exponent);
  Permutation result(degree());
  while (e != 0) {
    if (e & 1u)
      result = result * base;
    e >>= 1u;
    if (e != 0)
      base = base * base;
  }
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start)
      continue;
    std::vector<Point> cycle;
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

BigInt Permutation::element_order() const
{
  BigInt order = 1;
  for (const auto& cycle : cycles()) {
    BigInt len = cycle.size();
    order = order / boost::multiprecision::gcd(order, len) * len;
  }
  return order;
}

bool Permutation::is_even() const
{
  std::size_t transpositions = 0;
  for (const auto& cycle : cycles())
    transpositions += cycle.size() - 1;
  return transpositions % 2 == 0;
}

Permutation operator*(const Permutation& p, const Permutation& q)
{
  Permutation r;
  r.images_.resize(q.images_.size());
  for (std::size_t i = 0; i < q.images_.size(); ++i)
    r.images_[i] = p.images_[q.images_[i]];
  return r;
}

Permutation compose(const Permutation& p, const Permutation& q)
{
  if (p.degree() != q.degree())
    throw DegreeMismatch("cannot compose permutations of degree " +
                         std::to_string(p.degree()) + " and " + std::to_string(q.degree()));
  return p * q;
}

Permutation invert(const Permutation& p) { return p.inverse(); }

Permutation commutator(const Permutation& a, const Permutation& b)
{
  return a.inverse() * b.inverse() * a * b;
}

Permutation conjugate(const Permutation& p, const Permutation& g)
{
  return g.inverse() * p * g;
}

namespace {

class CycleParser
{
public:
  CycleParser(std::string_view text, std::size_t degree)
    : text_(text), degree_(degree), used_at_(degree, npos)
  {}

  Permutation parse()
  {
    std::vector<std::vector<Point>> cycles;
    skip_space();
    while (pos_ < text_.size()) {
      if (text_[pos_] != '(')
        throw ParseError("expected '('", pos_, std::string(1, text_[pos_]));
      cycles.push_back(parse_cycle());
      skip_space();
    }
    return Permutation::from_cycles(degree_, cycles);
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::vector<Point> parse_cycle()
  {
    const std::size_t open = pos_++;
    std::vector<Point> cycle;
    bool need_point = true;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size())
        throw ParseError("unterminated cycle opened", open, "(");
      const char c = text_[pos_];
      if (c == ')') {
        if (need_point && !cycle.empty())
          throw ParseError("dangling separator before ')'", pos_, ")");
        if (cycle.size() < 2)
          throw ParseError("a cycle needs at least two points", open, "(");
        ++pos_;
        return cycle;
      }
      if (c == ',') {
        if (need_point)
          throw ParseError("unexpected ','", pos_, ",");
        need_point = true;
        ++pos_;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        cycle.push_back(parse_point());
        need_point = false;
        continue;
      }
      if (c == '(')
        throw ParseError("nested '('", pos_, "(");
      throw ParseError("unexpected character", pos_, std::string(1, c));
    }
  }

  Point parse_point()
  {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > degree_ + 1)
        value = degree_ + 1;
      ++pos_;
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (value < 1 || value > degree_)
      throw ParseError("point out of range 1.." + std::to_string(degree_), start, token);
    const auto x = static_cast<Point>(value - 1);
    if (used_at_[x] != npos)
      throw ParseError("repeated point " + token, start, token);
    used_at_[x] = start;
    return x;
  }

  std::string_view text_;
  std::size_t degree_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> used_at_;
};

} // namespace

Permutation parse_permutation(std::string_view text, std::size_t degree)
{
  return CycleParser(text, degree).parse();
}

std::string to_cycle_string(const Permutation& p)
{
  std::string out;
  for (const auto& cycle : p.cycles()) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i != 0)
        out += ' ';
      out += std::to_string(cycle[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept
{
  // FNV-1a over the image table.
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

} // namespace wreathgen
