#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wreathgen/group_spec.hpp"
#include "wreathgen/min_generators.hpp"
#include "wreathgen/theorem.hpp"

namespace wreathgen {

struct Verdict
{
  bool finitely_generated = false;
  std::optional<std::size_t> e;
  /// Negative verdicts: the smallest prime of unbounded total rank and a
  /// recurring group contributing to it.
  std::optional<std::uint64_t> witness_prime;
  std::string witness_group;
  std::vector<std::string> assumptions;
};

/**
 * Finite generation of the inverse limit: the total p-rank of the level
 * abelianizations must be bounded over all primes p, and d(G_n) bounded.
 * Finite specs are always finitely generated; periodic tails iff every period
 * group is perfect; cyclic-nth-prime tails contribute rank 1 at distinct primes.
 */
Verdict decide_finite_generation(const SequenceSpec& spec, std::size_t index_cap = default_index_cap);

struct GrowthRow
{
  std::size_t n = 0;
  std::size_t d_lower = 0;
  std::size_t d_upper = 0;
  bool certified = false;
  std::string method;
  std::size_t bound_lower = 0;
  std::optional<std::size_t> bound_upper;
  bool within_bounds = false;
  double runtime_ms = 0; ///< not part of the JSON form
};

struct GrowthTable
{
  std::string group;
  bool perfect = false;
  std::string bound_description;
  std::vector<GrowthRow> rows;
  std::optional<std::string> notice; ///< set when a cap truncated the table
};

struct AnalysisOptions
{
  MinGeneratorsOptions generators;
  std::size_t leaf_cap = default_leaf_cap;
  /// Bound intervals need d of a fixed wreath power; skipped above this size.
  std::size_t bound_leaf_cap = 256;
};

/// d of the n-fold wreath power of H for n = 1 .. n_max, each row annotated
/// with the bound interval of its case (perfect or not).
GrowthTable wreath_power_dsequence(const GroupSpec& h, std::size_t n_max,
                                   const AnalysisOptions& options = {});

struct FormulaCheck
{
  std::string name;
  bool applicable = false;
  std::string reason; ///< why not applicable
  std::size_t formula_value = 0;
  std::size_t measured_lower = 0;
  std::size_t measured_upper = 0;
  bool certified = false;
  bool match = false; ///< certified and equal
  /// Named intermediate values, e.g. "d(H)".
  std::vector<std::pair<std::string, std::size_t>> terms;
  std::string notes;
};

struct FormulaReport
{
  std::string subject;
  std::string measured_method;
  std::vector<FormulaCheck> checks;
};

/**
 * d(H wr G) against the formula for solvable H,
 *   max(d(H/H' wr G), floor((d(H) - 2) / |X|) + 2),
 * and, when H is abelian of order coprime to |G|, against max(d(G), d(H) + 1).
 */
FormulaReport solvable_formula_check(const GroupSpec& h, const GroupSpec& g,
                                     const AnalysisOptions& options = {});

/// d(A_n wr ... wr A_1) against max(d(A_1), d(A_i) + 1 for i >= 2) for
/// abelian groups of pairwise coprime orders.
FormulaReport coprime_abelian_formula_check(const std::vector<GroupSpec>& sequence,
                                            const AnalysisOptions& options = {});

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json growth_to_json(const GrowthTable& t);
std::string growth_to_csv(const GrowthTable& t);
std::string growth_to_table(const GrowthTable& t);
nlohmann::json formula_to_json(const FormulaReport& r);

} // namespace wreathgen
