#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wreathgen/bigint.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/perm_group.hpp"
#include "wreathgen/tree.hpp"

namespace wreathgen {

inline constexpr std::size_t default_leaf_cap = 10'000;

/**
 * H wr G acting on X x Y, where `top` = G acts on X and `bottom` = H on Y.
 * The point (x, y) is x * |Y| + y. Generators: G on the first coordinate and
 * H on the block x = 0, which suffice when G is transitive.
 */
PermGroup wreath_product(const PermGroup& top, const PermGroup& bottom);

/// Nontrivial transitive groups, root level first.
class WreathSequence
{
public:
  /// Throws std::invalid_argument when a group is intransitive, trivial or of degree < 2.
  explicit WreathSequence(std::vector<PermGroup> groups, std::vector<std::string> names = {});
  static WreathSequence from_specs(const std::vector<GroupSpec>& specs);

  std::size_t size() const noexcept { return groups_.size(); }
  const std::vector<PermGroup>& groups() const noexcept { return groups_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  TreeShape shape() const;

private:
  std::vector<PermGroup> groups_;
  std::vector<std::string> names_;
};

/**
 * G_n wr ... wr G_1 on the leaves of the tree with alphabets deg(G_1), ...:
 * the group generated by rooted copies of the generators of G_k at every
 * vertex of level k-1. Throws CapExceeded above `leaf_cap` leaves.
 */
PermGroup iterated_wreath(const WreathSequence& sequence, std::size_t leaf_cap = default_leaf_cap);

/// prod_k |G_k|^(number of vertices on level k-1).
BigInt expected_order(const WreathSequence& sequence);

/// (C wr B) wr A and C wr (B wr A) as groups on the same leaves (with A at the
/// root); true iff they coincide.
bool check_associativity(const PermGroup& a, const PermGroup& b, const PermGroup& c,
                         std::size_t leaf_cap = default_leaf_cap);

} // namespace wreathgen
