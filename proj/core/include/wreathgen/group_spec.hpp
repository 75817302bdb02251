#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wreathgen/perm_group.hpp"
#include "wreathgen/permutation.hpp"

namespace wreathgen {

/**
 * A named transitive permutation group.
 *
 * Text forms: "S<k>" (symmetric), "A<k>" (alternating), "C<k>" (cyclic,
 * regular action), "D<k>" (dihedral on k points), and
 * "P<degree>[<cycles>, <cycles>, ...]" for an explicit generator list, e.g.
 * "P4[(1 2 3 4), (1 3)]".
 */
struct GroupSpec
{
  enum class Kind
  {
    symmetric,
    alternating,
    cyclic,
    dihedral,
    custom,
  };

  Kind kind = Kind::symmetric;
  std::size_t degree = 0;
  std::vector<Permutation> generators; // custom only

  static GroupSpec symmetric(std::size_t k);
  static GroupSpec alternating(std::size_t k);
  static GroupSpec cyclic(std::size_t k);
  static GroupSpec dihedral(std::size_t k);
  static GroupSpec custom(std::size_t degree, std::vector<Permutation> generators);

  /// Canonical text form, accepted by parse_group_spec.
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Errors report positions relative to `text`, shifted by `offset`.
GroupSpec parse_group_spec(std::string_view text, std::size_t offset = 0);

/// Semicolon-separated group specs, outermost (root) group first: "S3; S3; A5".
std::vector<GroupSpec> parse_group_sequence(std::string_view text);

std::string sequence_name(const std::vector<GroupSpec>& specs);

/// The permutation group of a spec. Built-in kinds are transitive by
/// construction (checked); custom groups are returned as given.
PermGroup realize(const GroupSpec& spec);

} // namespace wreathgen
