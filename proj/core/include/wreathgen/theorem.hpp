#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wreathgen/abelian.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/perm_group.hpp"
#include "wreathgen/tree.hpp"
#include "wreathgen/wreath.hpp"

namespace wreathgen {

/// The n-th prime, 1-based (nth_prime(1) == 2).
std::uint64_t nth_prime(std::size_t n);

/// A possibly infinite sequence of groups: a finite prefix followed by nothing,
/// a repeating period, or a named family.
struct SequenceSpec
{
  enum class Tail
  {
    none,
    periodic,
    family,
  };

  std::vector<GroupSpec> prefix;
  Tail tail = Tail::none;
  std::vector<GroupSpec> period;
  /// Only "cyclic-nth-prime": tail level t (0-based) is C_p for p the
  /// (family_start + t)-th prime.
  std::string family;
  std::size_t family_start = 1;
  std::optional<std::size_t> generator_bound;

  static SequenceSpec finite(std::vector<GroupSpec> levels);
  static SequenceSpec periodic(std::vector<GroupSpec> period, std::vector<GroupSpec> prefix = {});
  /// Throws std::invalid_argument for unknown family names.
  static SequenceSpec named_family(std::string name, std::vector<GroupSpec> prefix = {},
                                   std::size_t start = 1);

  /// Number of levels, or nullopt when infinite.
  std::optional<std::size_t> length() const;
  /// Level i, 0-based. Throws std::out_of_range past the end of a finite spec.
  GroupSpec level(std::size_t i) const;
  std::vector<GroupSpec> levels(std::size_t count) const;
  std::string description() const;
};

struct WitnessData
{
  Point x = 0;
  Point y = 0;
  Permutation tau; ///< in G', tau(x) = y
  Permutation pi;  ///< in G', pi(x) = x, pi(y) != y
};

/**
 * The lexicographically first (x, y) in one orbit of `derived` whose point
 * stabilizers differ, or nullopt. Conjugate stabilizers have equal order, so
 * they differ exactly when some generator of stab(x) moves y; pi is the first
 * such strong generator and tau comes from the orbit transversal.
 */
std::optional<WitnessData> find_orbit_stabilizer_witness(const PermGroup& derived);

/// True iff the witness satisfies all its defining conditions in `derived`.
bool is_valid_witness(const WitnessData& w, const PermGroup& derived);

struct RegroupAttempt
{
  std::size_t width = 0;
  bool succeeded = false;
  std::string reason; ///< why the width failed
};

struct RegroupRecord
{
  std::size_t width = 0;
  /// Original 0-based level indices forming each block.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<RegroupAttempt> attempts;
};

/// One level of the regrouped sequence.
struct BlockLevel
{
  std::string name;
  std::vector<GroupSpec> members;
  PermGroup group = PermGroup::trivial(1);
  PermGroup derived = PermGroup::trivial(1);
  std::optional<WitnessData> witness;
};

struct RegroupOptions
{
  std::size_t max_block = 4;
  std::size_t leaf_cap = default_leaf_cap;
};

struct RegroupResult
{
  RegroupRecord record;
  std::vector<BlockLevel> levels;
};

/**
 * Tries widths 1, 2, 4, ... up to `max_block`: `blocks` consecutive blocks of
 * that many levels, each replaced by its iterated wreath product. Returns the
 * first width for which every block is non-abelian and has a witness.
 * Throws ConstructionError listing the failure of every width.
 */
RegroupResult regroup_brackets(const SequenceSpec& spec, std::size_t blocks,
                               const RegroupOptions& options = {});
/// A finite sequence regrouped into len / w blocks (len must be divisible by w).
RegroupResult regroup_brackets(const std::vector<GroupSpec>& levels,
                               const RegroupOptions& options = {});
/// Blocks of a fixed width; witnesses are searched but not required.
std::vector<BlockLevel> regroup_with_width(const SequenceSpec& spec, std::size_t blocks,
                                           std::size_t width, std::size_t leaf_cap);

struct SlotAssignment
{
  std::size_t e = 0;
  /// factor_slot[n][j]: slot of the j-th primary factor of level n.
  std::vector<std::vector<std::size_t>> factor_slot;
  /// coordinates[n][i]: abelianization coordinates of a_i^(n).
  std::vector<std::vector<std::vector<std::uint64_t>>> coordinates;
  /// orders[n][i]: order of a_i^(n).
  std::vector<std::vector<std::uint64_t>> orders;
};

/// Factors of each prime go to slots 1, 2, ... in level order, so within a
/// slot the orders at different levels are coprime (asserted).
SlotAssignment coprime_slot_assignment(const std::vector<AbelianInvariants>& levels);

struct LiftResult
{
  std::vector<Permutation> generators;
  std::size_t lifted = 0;     ///< leading preimages
  std::size_t completion = 0; ///< elements added to reach the whole group
};

/**
 * Preimages (first coset representatives) of the targets, followed by the
 * fewest random elements found that complete them to a generating set. Throws
 * ConstructionError with the reached order when the attempt budget runs out.
 */
LiftResult lift_and_complete(const PermGroup& group, const Abelianization& ab,
                             const std::vector<std::vector<std::uint64_t>>& targets,
                             std::mt19937_64& rng, std::size_t attempts = 256);
/// As above, padded to exactly m by repeating the final generator. Throws
/// ConstructionError when more than m are needed.
std::vector<Permutation> lift_and_complete(const PermGroup& group, const Abelianization& ab,
                                           const std::vector<std::vector<std::uint64_t>>& targets,
                                           std::size_t m, std::uint64_t seed);

/// Spine vertex y_1 ... y_{k-1} x_k (length k).
Vertex spine_vertex(const std::vector<WitnessData>& witnesses, std::size_t k, bool use_y_last = false);

/**
 * Directed generators: g_i carries lifted[k][i] at the spine vertex of length
 * k for k = 1 .. depth-1 and nothing else.
 */
std::vector<Portrait> build_directed_generators(const TreeShape& shape,
                                                const std::vector<WitnessData>& witnesses,
                                                const std::vector<std::vector<Permutation>>& lifted);

/// True iff every label of g sits on the spine and equals lifted[k][i].
bool has_spine_structure(const Portrait& g, std::size_t i, const std::vector<WitnessData>& witnesses,
                         const std::vector<std::vector<Permutation>>& lifted);

/// A rooted-subgroup test: the copy of `group` acting on the `span / stride`
/// units of `stride` leaves from `first`.
struct RootedCheck
{
  std::string vertex; ///< vertex of the verification tree, "1.2" form
  std::string kind;   ///< "root", "x-spine" or "y-spine"
  std::size_t level = 0;
  std::size_t first = 0;
  std::size_t span = 0;
  std::size_t stride = 0;
  PermGroup group = PermGroup::trivial(1);
  std::string group_name;
};

struct RootedCheckResult
{
  std::string vertex;
  std::string kind;
  std::size_t level = 0;
  std::string group_name;
  std::size_t generators_tested = 0;
  BigInt rigid_stabilizer_order = 0;
  bool passed = false;
};

struct VerificationReport
{
  std::size_t leaves = 0;
  BigInt order_expected = 0;  ///< product formula
  BigInt order_reference = 0; ///< stabilizer chain of the full iterated wreath product
  BigInt order_actual = 0;
  bool generators_in_reference = false;
  bool dense = false;
  std::vector<std::size_t> level_orbit_counts;
  bool level_transitive = false;
  std::vector<RootedCheckResult> rooted_checks;

  bool passed() const;
};

struct ConstructionOptions
{
  RegroupOptions regroup;
  std::size_t index_cap = default_index_cap;
  std::uint64_t seed = 0;
  std::size_t completion_attempts = 256;
  bool verify = true;
  /// Sabotage: omit this directed generator (0-based).
  std::optional<std::size_t> drop_directed;
};

struct ConstructionResult
{
  std::string builder; ///< "theorem", "wreath-power" or "nonperfect"
  std::string sequence;
  std::size_t depth = 0; ///< regrouped levels
  RegroupRecord regroup;
  std::vector<BlockLevel> levels;
  TreeShape shape; ///< regrouped tree
  std::vector<AbelianInvariants> abelianizations;
  SlotAssignment slots;
  std::size_t e = 0;
  std::size_t m = 0;
  std::vector<std::size_t> completion;
  std::vector<std::vector<Permutation>> lifted;
  std::vector<Portrait> rooted_generators;
  std::vector<Portrait> directed_generators;
  std::optional<std::size_t> dropped_directed;

  /// Non-perfect builder: b^(i) automorphisms on the fine tree.
  std::vector<Portrait> extra_generators;
  std::size_t abelian_rank = 0; ///< d(H/H') for the non-perfect builder

  /// The tree verification runs on: the original levels, truncated.
  std::vector<GroupSpec> verification_levels;
  std::vector<Permutation> verification_generators;
  std::vector<RootedCheck> checks;
  std::optional<VerificationReport> verification;

  std::uint64_t seed = 0;
  std::size_t leaf_cap = default_leaf_cap;

  std::size_t generator_count() const { return verification_generators.size(); }
};

/// The dense subgroup construction at `depth` regrouped levels.
ConstructionResult construct_dense_subgroup(const SequenceSpec& spec, std::size_t depth,
                                            const ConstructionOptions& options = {});

/// Constant levels H; throws ConstructionError unless H is perfect.
ConstructionResult build_wreath_power_generators(const GroupSpec& h, std::size_t n,
                                                 const ConstructionOptions& options = {});

/// Generators of the n-fold wreath power of a non-perfect H: rooted and
/// directed generators over blocks plus the b^(i). Throws ConstructionError for perfect H.
ConstructionResult build_nonperfect_upper(const GroupSpec& h, std::size_t n,
                                          const ConstructionOptions& options = {});

VerificationReport verify_dense(const ConstructionResult& construction);

nlohmann::json witness_to_json(const WitnessData& w);
nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json construction_to_json(const ConstructionResult& result);

} // namespace wreathgen
