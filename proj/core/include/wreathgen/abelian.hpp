#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wreathgen/bigint.hpp"
#include "wreathgen/perm_group.hpp"

namespace wreathgen {

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
/// Smallest prime p with p^k == n, or 0 when n is not a prime power > 1.
std::uint64_t prime_of_power(std::uint64_t n);

/// A finite abelian group as a direct sum of cyclic groups of prime-power
/// order, sorted by prime then by exponent.
class AbelianInvariants
{
public:
  AbelianInvariants() = default;

  /// Accepts arbitrary cyclic orders and splits them into primary parts;
  /// factors equal to 1 are dropped.
  static AbelianInvariants from_cyclic_orders(const std::vector<std::uint64_t>& orders);

  const std::vector<std::uint64_t>& factors() const noexcept { return factors_; }
  BigInt order() const;
  bool is_trivial() const noexcept { return factors_.empty(); }

  /// Number of factors that are powers of p.
  std::size_t rank(std::uint64_t p) const;
  /// Minimal number of generators: the largest p-rank.
  std::size_t d() const;
  std::vector<std::uint64_t> primes() const;

  /// Direct sum.
  AbelianInvariants merged(const AbelianInvariants& other) const;

  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

private:
  std::vector<std::uint64_t> factors_;
};

/**
 * The quotient G/G' together with the coset enumeration that produced it.
 *
 * Cosets are numbered in breadth-first enumeration order from the identity
 * coset, stepping by the generators of G. `coset_representatives()[i]` is the
 * first element of coset i met by that enumeration. Each primary factor of
 * the invariants comes with an element of G mapping onto a generator of that
 * cyclic factor, and `coordinates()` expresses any element of G in that basis.
 */
class Abelianization
{
public:
  const AbelianInvariants& invariants() const noexcept { return invariants_; }
  std::size_t index() const noexcept { return reps_.size(); }
  const std::vector<Permutation>& coset_representatives() const noexcept { return reps_; }
  const std::vector<Permutation>& factor_generators() const noexcept { return factor_gens_; }
  const PermGroup& derived() const noexcept { return derived_; }

  /// Coset label of g (quotient map). Throws std::invalid_argument if g is not in G.
  std::size_t coset_of(const Permutation& g) const;

  /// Coordinates of g with respect to `factor_generators()`, each reduced
  /// modulo its factor.
  std::vector<std::uint64_t> coordinates(const Permutation& g) const;
  std::vector<std::uint64_t> coset_coordinates(std::size_t coset) const;

  /// The enumeration's first representative of the coset with these coordinates.
  const Permutation& preimage(const std::vector<std::uint64_t>& coordinates) const;

private:
  friend Abelianization abelianization(const PermGroup&, const PermGroup&, std::size_t);

  std::vector<Point> canonical_key(const Permutation& g) const;

  struct KeyHash
  {
    std::size_t operator()(const std::vector<Point>& key) const noexcept;
  };

  PermGroup derived_ = PermGroup::trivial(1);
  std::vector<Point> group_base_;
  AbelianInvariants invariants_;
  std::vector<Permutation> reps_;
  std::unordered_map<std::vector<Point>, std::size_t, KeyHash> key_to_coset_;
  std::vector<std::vector<std::int64_t>> exponents_; // per coset, over the generators of G
  std::vector<Permutation> factor_gens_;
  // coordinate j = (exponents . coord_columns_[j]) mod factors[j]
  std::vector<std::vector<std::int64_t>> coord_columns_;
};

inline constexpr std::size_t default_index_cap = 1'000'000;

/// Throws CapExceeded when |G : G'| exceeds `index_cap`.
Abelianization abelianization(const PermGroup& group, std::size_t index_cap = default_index_cap);
Abelianization abelianization(const PermGroup& group, const PermGroup& derived,
                              std::size_t index_cap = default_index_cap);

/// The regular action of an abelian group on itself, points in mixed radix
/// over the factors. Throws CapExceeded above `order_cap` points.
PermGroup regular_representation(const AbelianInvariants& invariants,
                                 std::size_t order_cap = default_index_cap);

} // namespace wreathgen
