#include "wreathgen/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wreathgen/errors.hpp"
#include "wreathgen/wreath.hpp"

namespace wreathgen {

namespace {

void add_ranks(std::map<std::uint64_t, std::size_t>& counts, const AbelianInvariants& inv)
{
  for (auto p : inv.primes())
    counts[p] += inv.rank(p);
}

std::size_t max_count(const std::map<std::uint64_t, std::size_t>& counts)
{
  std::size_t e = 0;
  for (const auto& [p, c] : counts)
    e = std::max(e, c);
  return e;
}

} // namespace

Verdict decide_finite_generation(const SequenceSpec& spec, std::size_t index_cap)
{
  Verdict v;
  std::map<std::uint64_t, std::size_t> counts;
  if (!spec.prefix.empty()) {
    const WreathSequence prefix = WreathSequence::from_specs(spec.prefix);
    for (const auto& g : prefix.groups())
      add_ranks(counts, abelianization(g, index_cap).invariants());
  }

  switch (spec.tail) {
  case SequenceSpec::Tail::none:
    v.finitely_generated = true;
    v.e = max_count(counts);
    v.assumptions.push_back("finite sequence: every rank and every d(G_n) is bounded");
    break;

  case SequenceSpec::Tail::periodic: {
    const WreathSequence period = WreathSequence::from_specs(spec.period);
    for (std::size_t i = 0; i < spec.period.size(); ++i) {
      const AbelianInvariants inv = abelianization(period.groups()[i], index_cap).invariants();
      if (inv.is_trivial())
        continue;
      const std::uint64_t p = inv.primes().front();
      if (!v.witness_prime || p < *v.witness_prime) {
        v.witness_prime = p;
        v.witness_group = spec.period[i].name();
      }
    }
    v.finitely_generated = !v.witness_prime;
    if (v.finitely_generated)
      v.e = max_count(counts);
    else
      v.assumptions.push_back("a non-perfect period group recurs infinitely often, so its smallest "
                              "prime has unbounded total rank");
    v.assumptions.push_back("d(G_n) is bounded: the sequence uses finitely many distinct groups");
    break;
  }

  case SequenceSpec::Tail::family: {
    // Tail level t is C_p for the (start + t)-th prime: rank 1 at each such p.
    const std::uint64_t first_tail_prime = nth_prime(spec.family_start);
    std::size_t e = 1;
    for (const auto& [p, c] : counts)
      e = std::max(e, c + (p >= first_tail_prime ? 1 : 0));
    v.finitely_generated = true;
    v.e = e;
    v.assumptions.push_back("cyclic-nth-prime: pairwise coprime cyclic orders, d(G_n) = 1");
    break;
  }
  }
  return v;
}

// ---------------------------------------------------------------------------

GrowthTable wreath_power_dsequence(const GroupSpec& h, std::size_t n_max, const AnalysisOptions& options)
{
  GrowthTable t;
  t.group = h.name();
  const PermGroup group = realize(h);
  const Abelianization ab = abelianization(group, options.generators.index_cap);
  t.perfect = ab.invariants().is_trivial();

  auto power = [&](std::size_t n) {
    return iterated_wreath(WreathSequence::from_specs(std::vector<GroupSpec>(n, h)), options.leaf_cap);
  };
  auto fits = [&](std::size_t n, std::size_t cap) {
    std::size_t leaves = 1;
    for (std::size_t i = 0; i < n; ++i) {
      leaves *= h.degree;
      if (leaves > cap)
        return false;
    }
    return true;
  };

  // Bound interval per case; the upper end uses the upper value of d.
  std::size_t lower_base = 0;
  std::optional<std::size_t> upper_base;
  if (t.perfect) {
    lower_base = min_generators(group, options.generators).lower;
    if (fits(2, std::min(options.bound_leaf_cap, options.leaf_cap)))
      upper_base = 2 * min_generators(power(2), options.generators).upper;
    t.bound_description = "d(H) <= d_n <= 2 d(H wr H)";
  } else {
    lower_base = ab.invariants().d();
    if (fits(4, std::min(options.bound_leaf_cap, options.leaf_cap)))
      upper_base = 2 * min_generators(power(4), options.generators).upper;
    t.bound_description = "n d(H/H') <= d_n <= 2 d(H wr H wr H wr H) + n d(H/H')";
  }

  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!fits(n, options.leaf_cap)) {
      t.notice = "stopped at n = " + std::to_string(n) + ": more than " +
                 std::to_string(options.leaf_cap) + " leaves";
      break;
    }
    const auto start = std::chrono::steady_clock::now();
    const MinGeneratorsResult d = min_generators(power(n), options.generators);
    GrowthRow row;
    row.n = n;
    row.d_lower = d.lower;
    row.d_upper = d.upper;
    row.certified = d.certified;
    row.method = d.method;
    row.bound_lower = t.perfect ? lower_base : n * lower_base;
    if (upper_base)
      row.bound_upper = t.perfect ? *upper_base : *upper_base + n * ab.invariants().d();
    row.within_bounds = row.bound_lower <= row.d_lower && (!row.bound_upper || row.d_upper <= *row.bound_upper);
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    t.rows.push_back(row);
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

struct Measured
{
  std::size_t value;
  bool certified;
};

Measured measure(const PermGroup& group, const AnalysisOptions& options)
{
  const auto r = min_generators(group, options.generators);
  return {r.upper, r.certified};
}

void set_measured(FormulaCheck& c, const MinGeneratorsResult& w)
{
  c.measured_lower = w.lower;
  c.measured_upper = w.upper;
}

void finish(FormulaCheck& c, bool terms_certified, const MinGeneratorsResult& w)
{
  set_measured(c, w);
  c.certified = terms_certified && w.certified;
  c.match = c.certified && c.formula_value == w.upper;
  if (!c.certified && c.formula_value >= w.lower && c.formula_value <= w.upper)
    c.notes = "formula value lies in the measured interval; not certified";
}

} // namespace

FormulaReport solvable_formula_check(const GroupSpec& h, const GroupSpec& g, const AnalysisOptions& options)
{
  const PermGroup H = realize(h);
  const PermGroup G = realize(g);
  FormulaReport report;
  report.subject = h.name() + " wr " + g.name();

  const MinGeneratorsResult w = min_generators(wreath_product(G, H), options.generators);
  report.measured_method = w.method;
  const auto degree = static_cast<std::int64_t>(G.degree());

  FormulaCheck solvable;
  solvable.name = "solvable";
  if (!is_solvable(H)) {
    solvable.reason = h.name() + " is not solvable";
  } else if (!is_transitive(G)) {
    solvable.reason = g.name() + " is not transitive";
  } else {
    solvable.applicable = true;
    const Abelianization ab = abelianization(H, options.generators.index_cap);
    const PermGroup quotient = regular_representation(ab.invariants(), options.generators.index_cap);
    const Measured dq = measure(wreath_product(G, quotient), options);
    const Measured dh = measure(H, options);
    const std::int64_t second = floor_div(static_cast<std::int64_t>(dh.value) - 2, degree) + 2;
    solvable.formula_value = std::max<std::size_t>(dq.value, static_cast<std::size_t>(std::max<std::int64_t>(second, 0)));
    solvable.terms = {{"d(H/H' wr G)", dq.value}, {"d(H)", dh.value}, {"|X|", G.degree()},
                      {"floor((d(H) - 2) / |X|) + 2", static_cast<std::size_t>(std::max<std::int64_t>(second, 0))}};
    finish(solvable, dq.certified && dh.certified, w);
    solvable.notes = "bracket read as floor" + (solvable.notes.empty() ? "" : "; " + solvable.notes);
  }
  if (!solvable.applicable)
    set_measured(solvable, w);
  report.checks.push_back(solvable);

  FormulaCheck coprime;
  coprime.name = "abelian-coprime";
  if (!is_abelian(H)) {
    coprime.reason = h.name() + " is not abelian";
  } else if (boost::multiprecision::gcd(H.order(), G.order()) != 1) {
    coprime.reason = "|" + h.name() + "| and |" + g.name() + "| are not coprime";
  } else {
    coprime.applicable = true;
    const Measured dg = measure(G, options);
    const Measured dh = measure(H, options);
    coprime.formula_value = std::max(dg.value, dh.value + 1);
    coprime.terms = {{"d(G)", dg.value}, {"d(H)", dh.value}};
    finish(coprime, dg.certified && dh.certified, w);
  }
  if (!coprime.applicable)
    set_measured(coprime, w);
  report.checks.push_back(coprime);
  return report;
}

FormulaReport coprime_abelian_formula_check(const std::vector<GroupSpec>& sequence,
                                            const AnalysisOptions& options)
{
  FormulaReport report;
  report.subject = sequence_name(sequence);
  FormulaCheck c;
  c.name = "coprime-abelian";

  std::vector<PermGroup> groups;
  for (const auto& s : sequence)
    groups.push_back(realize(s));
  for (std::size_t i = 0; i < groups.size() && c.reason.empty(); ++i) {
    if (!is_abelian(groups[i]))
      c.reason = sequence[i].name() + " is not abelian";
    else if (!is_transitive(groups[i]))
      c.reason = sequence[i].name() + " is not transitive";
    for (std::size_t j = i + 1; j < groups.size() && c.reason.empty(); ++j)
      if (boost::multiprecision::gcd(groups[i].order(), groups[j].order()) != 1)
        c.reason = "orders of " + sequence[i].name() + " and " + sequence[j].name() + " share a prime";
  }
  if (groups.empty())
    c.reason = "empty sequence";

  if (c.reason.empty()) {
    c.applicable = true;
    bool certified = true;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const Measured d = measure(groups[i], options);
      certified = certified && d.certified;
      c.terms.emplace_back("d(" + sequence[i].name() + ")", d.value);
      c.formula_value = std::max(c.formula_value, i == 0 ? d.value : d.value + 1);
    }
    const MinGeneratorsResult w =
        min_generators(iterated_wreath(WreathSequence::from_specs(sequence), options.leaf_cap), options.generators);
    report.measured_method = w.method;
    finish(c, certified, w);
  }
  report.checks.push_back(c);
  return report;
}

// ---------------------------------------------------------------------------

nlohmann::json verdict_to_json(const Verdict& v)
{
  nlohmann::json out = {{"finitely_generated", v.finitely_generated}, {"assumptions", v.assumptions}};
  out["e"] = v.e ? nlohmann::json(*v.e) : nlohmann::json(nullptr);
  if (v.witness_prime)
    out["witness"] = {{"prime", *v.witness_prime}, {"group", v.witness_group}};
  return out;
}

nlohmann::json growth_to_json(const GrowthTable& t)
{
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json row = {{"n", r.n},
                          {"d_lower", r.d_lower},
                          {"d_upper", r.d_upper},
                          {"certified", r.certified},
                          {"method", r.method},
                          {"bound_lower", r.bound_lower},
                          {"within_bounds", r.within_bounds}};
    row["bound_upper"] = r.bound_upper ? nlohmann::json(*r.bound_upper) : nlohmann::json(nullptr);
    if (r.certified)
      row["d"] = r.d_upper;
    rows.push_back(row);
  }
  nlohmann::json out = {{"group", t.group}, {"perfect", t.perfect}, {"bounds", t.bound_description}, {"rows", rows}};
  if (t.notice)
    out["notice"] = *t.notice;
  return out;
}

namespace {

std::string d_cell(const GrowthRow& r)
{
  if (r.certified)
    return std::to_string(r.d_upper);
  return "[" + std::to_string(r.d_lower) + ", " + std::to_string(r.d_upper) + "]";
}

std::string bound_cell(const GrowthRow& r)
{
  return "[" + std::to_string(r.bound_lower) + ", " +
         (r.bound_upper ? std::to_string(*r.bound_upper) : std::string("?")) + "]";
}

} // namespace

std::string growth_to_csv(const GrowthTable& t)
{
  std::ostringstream out;
  out << "n,d_lower,d_upper,certified,method,bound_lower,bound_upper,within_bounds,runtime_ms\n";
  for (const auto& r : t.rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.runtime_ms);
    out << r.n << ',' << r.d_lower << ',' << r.d_upper << ',' << (r.certified ? "true" : "false") << ','
        << r.method << ',' << r.bound_lower << ',' << (r.bound_upper ? std::to_string(*r.bound_upper) : "")
        << ',' << (r.within_bounds ? "true" : "false") << ',' << ms << '\n';
  }
  return out.str();
}

std::string growth_to_table(const GrowthTable& t)
{
  std::ostringstream out;
  out << t.group << (t.perfect ? " (perfect)" : " (not perfect)") << ": " << t.bound_description << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%4s  %-10s  %-9s  %-12s  %-12s  %10s\n", "n", "d", "certified", "method",
                "bounds", "time(ms)");
  out << line;
  for (const auto& r : t.rows) {
    std::snprintf(line, sizeof line, "%4zu  %-10s  %-9s  %-12s  %-12s  %10.1f\n", r.n, d_cell(r).c_str(),
                  r.certified ? "yes" : "no", r.method.c_str(), bound_cell(r).c_str(), r.runtime_ms);
    out << line;
  }
  if (t.notice)
    out << "note: " << *t.notice << '\n';
  return out.str();
}

nlohmann::json formula_to_json(const FormulaReport& r)
{
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j = {{"formula", c.name}, {"applicable", c.applicable}};
    if (!c.applicable) {
      j["reason"] = c.reason;
    } else {
      nlohmann::json terms = nlohmann::json::object();
      for (const auto& [k, v] : c.terms)
        terms[k] = v;
      j["formula_value"] = c.formula_value;
      j["terms"] = terms;
      j["certified"] = c.certified;
      j["match"] = c.match;
      if (!c.notes.empty())
        j["notes"] = c.notes;
    }
    j["measured"] = {{"lower", c.measured_lower}, {"upper", c.measured_upper}};
    checks.push_back(j);
  }
  return {{"subject", r.subject}, {"measured_method", r.measured_method}, {"checks", checks}};
}

} // namespace wreathgen
