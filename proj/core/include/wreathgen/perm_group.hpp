#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "wreathgen/bigint.hpp"
#include "wreathgen/permutation.hpp"

namespace wreathgen {

/// One level of a stabilizer chain: the basic orbit of `base` under the
/// strong generators fixing all earlier base points, with explicit coset
/// representatives (transversal[i] maps base to orbit[i]).
struct ChainLevel
{
  Point base = 0;
  std::vector<Permutation> generators;
  std::vector<Point> orbit;
  std::vector<std::int32_t> orbit_index; // -1 when the point is not in the orbit
  std::vector<Permutation> transversal;
  std::vector<Permutation> transversal_inv;
};

struct ChainOptions
{
  /// Base points placed first, in order (base change).
  std::vector<Point> base_prefix;
  /// A proven upper bound on the group order (e.g. the order of a known
  /// overgroup). Construction stops as soon as the chain reaches it.
  std::optional<BigInt> order_bound;
};

/**
 * An immutable permutation group given by generators together with a complete
 * stabilizer chain built by deterministic Schreier-Sims.
 */
class PermGroup
{
public:
  static PermGroup generate(std::vector<Permutation> generators, std::size_t degree,
                            const ChainOptions& options = {});
  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<ChainLevel>& chain() const noexcept { return *levels_; }
  const BigInt& order() const noexcept { return order_; }

  std::vector<Point> base() const;
  std::vector<Permutation> strong_generators() const;
  bool is_trivial() const noexcept { return order_ == 1; }

  /// True iff p sifts to the identity. Throws DegreeMismatch.
  bool contains(const Permutation& p) const;

  /// Residue of sifting p through the chain and the level where it stopped
  /// (chain().size() when every level was passed).
  std::pair<Permutation, std::size_t> sift(Permutation p, std::size_t start_level = 0) const;

  /// Uniform random element: one uniformly chosen coset representative per level.
  Permutation random_element(std::mt19937_64& rng) const;

  /// All elements, in chain order. Throws CapExceeded above `cap` elements.
  std::vector<Permutation> elements(std::size_t cap) const;

private:
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::shared_ptr<const std::vector<ChainLevel>> levels);

  friend PermGroup pointwise_stabilizer(const PermGroup&, std::span<const Point>);
  friend PermGroup normal_closure(const PermGroup&, std::vector<Permutation>);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<const std::vector<ChainLevel>> levels_;
  BigInt order_ = 1;
};

std::vector<Point> orbit(const PermGroup& group, Point point);
/// Orbits in order of their smallest point; each orbit sorted.
std::vector<std::vector<Point>> orbits(const PermGroup& group);
bool is_transitive(const PermGroup& group);

PermGroup point_stabilizer(const PermGroup& group, Point point);
/// Stabilizer of every listed point, computed by base change.
PermGroup pointwise_stabilizer(const PermGroup& group, std::span<const Point> points);

/// Smallest normal subgroup of `group` containing `generators`.
PermGroup normal_closure(const PermGroup& group, std::vector<Permutation> generators);
PermGroup derived_subgroup(const PermGroup& group);

/// Every generator of `sub` lies in `group`.
bool is_subgroup(const PermGroup& sub, const PermGroup& group);
/// Mutual generator membership and equal orders.
bool same_group(const PermGroup& a, const PermGroup& b);

bool is_abelian(const PermGroup& group);
bool is_perfect(const PermGroup& group);
/// Derived series reaches the trivial group.
bool is_solvable(const PermGroup& group);

} // namespace wreathgen
