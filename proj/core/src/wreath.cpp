#include "wreathgen/wreath.hpp"

#include <stdexcept>

#include "wreathgen/errors.hpp"

namespace wreathgen {

PermGroup wreath_product(const PermGroup& top, const PermGroup& bottom)
{
  const std::size_t nx = top.degree();
  const std::size_t ny = bottom.degree();
  std::vector<Permutation> gens;
  for (const auto& g : top.generators()) {
    std::vector<Point> images(nx * ny);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        images[x * ny + y] = static_cast<Point>(g(static_cast<Point>(x)) * ny + y);
    gens.emplace_back(std::move(images));
  }
  for (const auto& h : bottom.generators())
    gens.push_back(rooted_leaf_permutation(nx * ny, 0, ny, 1, h));
  return PermGroup::generate(std::move(gens), nx * ny);
}

WreathSequence::WreathSequence(std::vector<PermGroup> groups, std::vector<std::string> names)
  : groups_(std::move(groups)), names_(std::move(names))
{
  if (groups_.empty())
    throw std::invalid_argument("a wreath sequence needs at least one group");
  if (names_.empty())
    for (std::size_t i = 0; i < groups_.size(); ++i)
      names_.push_back("G" + std::to_string(i + 1));
  if (names_.size() != groups_.size())
    throw std::invalid_argument("one name per group");
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const auto& g = groups_[i];
    if (g.degree() < 2 || g.is_trivial())
      throw std::invalid_argument("level " + std::to_string(i + 1) + " (" + names_[i] +
                                  ") must be nontrivial of degree >= 2");
    if (!is_transitive(g))
      throw std::invalid_argument("level " + std::to_string(i + 1) + " (" + names_[i] +
                                  ") is not transitive");
  }
}

WreathSequence WreathSequence::from_specs(const std::vector<GroupSpec>& specs)
{
  std::vector<PermGroup> groups;
  std::vector<std::string> names;
  for (const auto& s : specs) {
    groups.push_back(realize(s));
    names.push_back(s.name());
  }
  return WreathSequence(std::move(groups), std::move(names));
}

TreeShape WreathSequence::shape() const
{
  std::vector<std::size_t> sizes;
  for (const auto& g : groups_)
    sizes.push_back(g.degree());
  return TreeShape(std::move(sizes));
}

PermGroup iterated_wreath(const WreathSequence& sequence, std::size_t leaf_cap)
{
  std::size_t leaves = 1;
  for (const auto& g : sequence.groups()) {
    leaves *= g.degree();
    if (leaves > leaf_cap)
      throw CapExceeded("tree has more than " + std::to_string(leaf_cap) + " leaves");
  }
  const TreeShape shape = sequence.shape();
  std::vector<Permutation> gens;
  for (std::size_t level = 0; level < shape.depth(); ++level) {
    const std::size_t span = shape.leaves_below(level);
    const std::size_t stride = shape.leaves_below(level + 1);
    for (std::size_t j = 0; j < shape.level_size(level); ++j)
      for (const auto& s : sequence.groups()[level].generators())
        if (!s.is_identity())
          gens.push_back(rooted_leaf_permutation(leaves, j * span, span, stride, s));
  }
  return PermGroup::generate(std::move(gens), leaves);
}

BigInt expected_order(const WreathSequence& sequence)
{
  BigInt order = 1;
  std::uint64_t vertices = 1;
  for (const auto& g : sequence.groups()) {
    order *= big_pow(g.order(), vertices);
    vertices *= g.degree();
  }
  return order;
}

bool check_associativity(const PermGroup& a, const PermGroup& b, const PermGroup& c,
                         std::size_t leaf_cap)
{
  if (a.degree() * b.degree() * c.degree() > leaf_cap)
    throw CapExceeded("tree has more than " + std::to_string(leaf_cap) + " leaves");
  const PermGroup left = wreath_product(wreath_product(a, b), c);
  const PermGroup right = wreath_product(a, wreath_product(b, c));
  return same_group(left, right);
}

} // namespace wreathgen
