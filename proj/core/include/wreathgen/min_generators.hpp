#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wreathgen/abelian.hpp"
#include "wreathgen/perm_group.hpp"

namespace wreathgen {

enum class GenerationStrategy
{
  automatic,       ///< exhaustive when the order is within the cap, else certified search
  exhaustive,
  certified_search,
};

struct MinGeneratorsOptions
{
  GenerationStrategy strategy = GenerationStrategy::automatic;
  std::size_t order_cap = 5000;
  std::size_t index_cap = default_index_cap;
  std::uint64_t seed = 0;
  /// Random tuples tried per tuple size before moving to the next size.
  std::size_t attempts_per_size = 64;
};

struct MinGeneratorsResult
{
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool certified = false;
  /// "trivial", "exhaustive", "p-group", "bounds-meet" or "interval".
  std::string method;
  /// A generating tuple of size `upper`.
  std::vector<Permutation> witness;

  std::size_t d() const noexcept { return upper; }
};

/// The certified lower bound: d(G/G'), at least 2 for non-cyclic G and at
/// least 1 for nontrivial G.
std::size_t generator_lower_bound(const PermGroup& group, const AbelianInvariants& abelian);

/// True iff the elements generate `group` (subgroup order test).
bool generates(const std::vector<Permutation>& elements, const PermGroup& group);

/**
 * Minimal number of generators.
 *
 * Exhaustive search walks k-subsets of the enumerated elements for increasing
 * k starting at the certified lower bound, so its answer is exact. Certified
 * search pairs the lower bound with random tuples for the upper bound; it is
 * exact when the two meet, or for p-groups where d equals the rank of the
 * Frattini quotient G/G'G^p. Anything else is reported as an interval.
 */
MinGeneratorsResult min_generators(const PermGroup& group, const MinGeneratorsOptions& options = {});

} // namespace wreathgen
