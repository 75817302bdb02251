#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wreathgen/bigint.hpp"

namespace wreathgen {

/// Points are stored 0-based. Cycle notation and every other textual format
/// uses 1-based points.
using Point = std::uint32_t;

/**
 * A bijection of {0, ..., degree-1} stored as an image table.
 *
 * Products follow the left-action convention: (p * q)(x) = p(q(x)), i.e. the
 * right factor is applied first.
 */
class Permutation
{
public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);

  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Builds a permutation from disjoint 0-based cycles.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const noexcept { return images_[x]; }
  Point operator[](Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  std::optional<Point> first_moved() const noexcept;
  bool fixes(std::span<const Point> points) const noexcept;

  Permutation inverse() const;
  Permutation pow(std::int64_t exponent) const;

  /// Disjoint cycles of length >= 2, each starting at its smallest point,
  /// ordered by that point.
  std::vector<std::vector<Point>> cycles() const;

  /// lcm of the cycle lengths.
  BigInt element_order() const;

  bool is_even() const;

  /// Composition p * q, applying q first.
  friend Permutation operator*(const Permutation& p, const Permutation& q);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b)
  {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

/// Throws DegreeMismatch when the degrees differ.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation invert(const Permutation& p);

/// Commutator a^-1 b^-1 a b.
Permutation commutator(const Permutation& a, const Permutation& b);

/// g^-1 p g.
Permutation conjugate(const Permutation& p, const Permutation& g);

/**
 * Parses cycle notation such as "(1 2 3)(4,5)". Whitespace is insignificant,
 * commas and spaces both separate points, and the empty string is the
 * identity. Every cycle needs at least two points and cycles must be disjoint.
 * Errors carry the character offset of the offending token.
 */
Permutation parse_permutation(std::string_view text, std::size_t degree);

/// 1-based cycle notation; the identity formats as the empty string.
std::string to_cycle_string(const Permutation& p);

struct PermutationHash
{
  std::size_t operator()(const Permutation& p) const noexcept;
};

} // namespace wreathgen

template<>
struct std::hash<wreathgen::Permutation>
{
  std::size_t operator()(const wreathgen::Permutation& p) const noexcept
  {
    return wreathgen::PermutationHash{}(p);
  }
};
