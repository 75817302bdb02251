#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wreathgen/analysis.hpp"
#include "wreathgen/errors.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/min_generators.hpp"
#include "wreathgen/theorem.hpp"
#include "wreathgen/tree_groups.hpp"
#include "wreathgen/version.hpp"
#include "wreathgen/wreath.hpp"

namespace wreathgen::cli {

namespace {

using nlohmann::json;

/// What a command hands back: its result object, whether its checks held, and
/// an optional text rendering that replaces the generic one.
struct Outcome
{
  json result;
  bool passed = true;
  std::string table;
  std::string csv;
};

json envelope(const RunConfig& config, json result)
{
  return {{"tool", "wreathgen"},
          {"version", version},
          {"command", config.command},
          {"config",
           {{"seed", config.seed},
            {"leaf_cap", config.leaf_cap},
            {"order_cap", config.order_cap},
            {"index_cap", config.index_cap},
            {"format", config.format}}},
          {"result", std::move(result)}};
}

// Generic "path  value" rendering of a report, one scalar per line.
void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows)
{
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (scalars) {
      std::string line;
      for (const auto& x : j)
        line += (line.empty() ? "" : ", ") + (x.is_string() ? x.get<std::string>() : x.dump());
      rows.emplace_back(path, "[" + line + "]");
    } else {
      for (std::size_t i = 0; i < j.size(); ++i)
        flatten(j[i], path + "[" + std::to_string(i + 1) + "]", rows);
    }
  } else {
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render_table(const json& report)
{
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows)
    width = std::max(width, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows)
    os << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
  return os.str();
}

MinGeneratorsOptions generator_options(const RunConfig& c)
{
  MinGeneratorsOptions o;
  o.order_cap = c.order_cap;
  o.index_cap = c.index_cap;
  o.seed = c.seed;
  return o;
}

AnalysisOptions analysis_options(const RunConfig& c)
{
  AnalysisOptions o;
  o.generators = generator_options(c);
  o.leaf_cap = c.leaf_cap;
  return o;
}

ConstructionOptions construction_options(const RunConfig& c, std::size_t max_block)
{
  ConstructionOptions o;
  o.regroup.max_block = max_block;
  o.regroup.leaf_cap = c.leaf_cap;
  o.index_cap = c.index_cap;
  o.seed = c.seed;
  return o;
}

json min_generators_json(const MinGeneratorsResult& r)
{
  json witness = json::array();
  for (const auto& p : r.witness)
    witness.push_back(to_cycle_string(p));
  return {{"lower", r.lower},
          {"upper", r.upper},
          {"certified", r.certified},
          {"method", r.method},
          {"witness", witness}};
}

SequenceSpec make_sequence(const std::string& text, bool periodic, const std::string& family,
                           const std::string& prefix)
{
  if (periodic && !family.empty())
    throw CLI::ValidationError("--periodic and --family are mutually exclusive");
  auto parse = [](const std::string& s) {
    return s.empty() ? std::vector<GroupSpec>{} : parse_group_sequence(s);
  };
  if (!family.empty()) {
    // The positional sequence, if any, is the prefix.
    std::vector<GroupSpec> head = parse(prefix);
    for (auto& g : parse(text))
      head.push_back(std::move(g));
    return SequenceSpec::named_family(family, std::move(head));
  }
  if (text.empty())
    throw CLI::ValidationError("a group sequence is required");
  if (periodic)
    return SequenceSpec::periodic(parse_group_sequence(text), parse(prefix));
  if (!prefix.empty())
    throw CLI::ValidationError("--prefix needs --periodic or --family");
  return SequenceSpec::finite(parse_group_sequence(text));
}

// --- commands --------------------------------------------------------------

Outcome group_info(const RunConfig& c, const std::string& text)
{
  const GroupSpec spec = parse_group_spec(text);
  const PermGroup g = realize(spec);
  json gens = json::array();
  for (const auto& p : g.generators())
    gens.push_back(to_cycle_string(p));
  const PermGroup d = derived_subgroup(g);
  json r = {{"group", spec.name()},
            {"degree", g.degree()},
            {"order", to_decimal(g.order())},
            {"generators", gens},
            {"orbits", orbits(g).size()},
            {"transitive", is_transitive(g)},
            {"derived_order", to_decimal(d.order())},
            {"abelian", is_abelian(g)},
            {"perfect", d.order() == g.order()},
            {"solvable", is_solvable(g)},
            {"abelianization", abelianization(g, c.index_cap).invariants().to_string()},
            {"d", min_generators_json(min_generators(g, generator_options(c)))}};
  return {r, true, {}, {}};
}

Outcome wreath_order(const RunConfig& c, const std::string& text)
{
  const auto specs = parse_group_sequence(text);
  const WreathSequence seq = WreathSequence::from_specs(specs);
  const TreeShape shape = seq.shape();
  json r = {{"sequence", sequence_name(specs)},
            {"shape", shape.alphabet_sizes()},
            {"leaves", shape.leaf_count()},
            {"order_expected", to_decimal(expected_order(seq))}};
  bool passed = true;
  if (shape.leaf_count() <= c.leaf_cap) {
    const BigInt actual = iterated_wreath(seq, c.leaf_cap).order();
    r["order_chain"] = to_decimal(actual);
    r["match"] = passed = actual == expected_order(seq);
  } else {
    r["notice"] = "more than " + std::to_string(c.leaf_cap) + " leaves: chain order not computed";
  }
  return {r, passed, {}, {}};
}

Outcome wreath_build(const RunConfig& c, const std::string& text, bool check_assoc)
{
  const auto specs = parse_group_sequence(text);
  const WreathSequence seq = WreathSequence::from_specs(specs);
  const TreeShape shape = seq.shape();
  const PermGroup w = iterated_wreath(seq, c.leaf_cap);
  const BigInt expected = expected_order(seq);

  json gens = json::array();
  for (const auto& p : w.generators())
    gens.push_back(portrait_to_json(from_leaf_permutation(shape, p)));

  json r = {{"sequence", sequence_name(specs)},
            {"shape", shape.alphabet_sizes()},
            {"leaves", shape.leaf_count()},
            {"order", to_decimal(w.order())},
            {"order_expected", to_decimal(expected)},
            {"generators", gens},
            {"level_orbit_counts", level_orbit_counts(w, shape)},
            {"level_transitive", is_level_transitive(w, shape)}};
  bool passed = w.order() == expected && is_level_transitive(w, shape);

  // The product's abelianization against the merged level abelianizations.
  try {
    AbelianInvariants merged;
    for (const auto& g : seq.groups())
      merged = merged.merged(abelianization(g, c.index_cap).invariants());
    const AbelianInvariants whole = abelianization(w, c.index_cap).invariants();
    r["abelianization"] = whole.to_string();
    r["abelianization_merged"] = merged.to_string();
    r["abelianization_multiplicative"] = whole == merged;
    passed = passed && whole == merged;
  } catch (const CapExceeded& e) {
    r["abelianization_notice"] = e.what();
  }

  if (check_assoc) {
    if (seq.size() != 3)
      throw CLI::ValidationError("--check-assoc needs exactly three groups");
    const auto& g = seq.groups();
    const bool assoc = check_associativity(g[0], g[1], g[2], c.leaf_cap);
    r["associative"] = assoc;
    passed = passed && assoc;
  }
  return {r, passed, {}, {}};
}

Outcome theorem_verify(const RunConfig& c, const SequenceSpec& spec, std::size_t depth, std::size_t max_block,
                       std::optional<std::size_t> drop)
{
  ConstructionOptions o = construction_options(c, max_block);
  if (drop)
    o.drop_directed = *drop - 1;
  const ConstructionResult res = construct_dense_subgroup(spec, depth, o);
  json r = construction_to_json(res);
  r["sequence_spec"] = spec.description();
  return {r, res.verification && res.verification->passed(), {}, {}};
}

Outcome theorem_wreath_power(const RunConfig& c, const std::string& text, std::size_t n, bool nonperfect,
                             std::size_t max_block)
{
  const GroupSpec h = parse_group_spec(text);
  const ConstructionOptions o = construction_options(c, max_block);
  const ConstructionResult res = nonperfect ? build_nonperfect_upper(h, n, o) : build_wreath_power_generators(h, n, o);
  return {construction_to_json(res), res.verification && res.verification->passed(), {}, {}};
}

Outcome decide(const RunConfig& c, const SequenceSpec& spec)
{
  json r = verdict_to_json(decide_finite_generation(spec, c.index_cap));
  r["sequence_spec"] = spec.description();
  return {r, true, {}, {}};
}

Outcome dseq(const RunConfig& c, const std::string& text, std::size_t max_n)
{
  const GrowthTable t = wreath_power_dsequence(parse_group_spec(text), max_n, analysis_options(c));
  const bool passed = std::all_of(t.rows.begin(), t.rows.end(), [](const GrowthRow& r) { return r.within_bounds; });
  return {growth_to_json(t), passed, growth_to_table(t), growth_to_csv(t)};
}

Outcome formula(const FormulaReport& report)
{
  bool passed = true;
  for (const auto& check : report.checks)
    if (check.applicable && check.certified && !check.match)
      passed = false;
  return {formula_to_json(report), passed, {}, {}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  RunConfig config;
  CLI::App app{"Iterated wreath products on rooted trees and dense generating sets", "wreathgen"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version));
  app.add_option("--seed", config.seed, "Seed for every randomized routine")->capture_default_str();
  app.add_option("--leaf-cap", config.leaf_cap, "Largest tree (in leaves) to realize")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--order-cap", config.order_cap, "Largest group order for exhaustive generator search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--index-cap", config.index_cap, "Largest |G : G'| to enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->capture_default_str();

  std::function<Outcome()> action;
  std::string text, second, family, prefix;
  std::size_t depth = 0, n = 0, max_n = 0, max_block = 4, drop = 0;
  bool periodic = false, nonperfect = false, check_assoc = false;

  auto* group = app.add_subcommand("group", "Single groups")->require_subcommand(1);
  auto* info = group->add_subcommand("info", "Order, derived subgroup, abelianization and d of a group");
  info->add_option("spec", text, "Group spec, e.g. S3, A5, C6, D4, P4[(1 2 3 4), (1 3)]")->required();
  info->callback([&] { action = [&] { return group_info(config, text); }; });

  auto* wreath = app.add_subcommand("wreath", "Iterated wreath products")->require_subcommand(1);
  auto* order = wreath->add_subcommand("order", "Formula and stabilizer-chain order");
  order->add_option("sequence", text, "Semicolon-separated groups, root first")->required();
  order->callback([&] { action = [&] { return wreath_order(config, text); }; });
  auto* build = wreath->add_subcommand("build", "Realize the iterated wreath product on the leaves");
  build->add_option("sequence", text, "Semicolon-separated groups, root first")->required();
  build->add_flag("--check-assoc", check_assoc, "Compare both bracketings (three groups)");
  build->callback([&] { action = [&] { return wreath_build(config, text, check_assoc); }; });

  auto* theorem = app.add_subcommand("theorem", "Dense finitely generated subgroups")->require_subcommand(1);
  auto* verify = theorem->add_subcommand("verify", "Build the generating set at a depth and verify density");
  verify->add_option("sequence", text, "Groups, root first (the period with --periodic)");
  verify->add_option("--depth", depth, "Regrouped levels to build")->required()->check(CLI::PositiveNumber);
  verify->add_flag("--periodic", periodic, "Repeat the sequence forever");
  verify->add_option("--family", family, "Named tail family (cyclic-nth-prime)");
  verify->add_option("--prefix", prefix, "Groups before the periodic or family tail");
  verify->add_option("--max-block", max_block, "Largest regrouping width")->capture_default_str();
  auto* drop_opt = verify->add_option("--drop-directed", drop, "Omit this directed generator (1-based)")
                       ->check(CLI::PositiveNumber);
  verify->callback([&] {
    action = [&] {
      const SequenceSpec spec = make_sequence(text, periodic, family, prefix);
      return theorem_verify(config, spec, depth, max_block,
                            drop_opt->count() ? std::optional<std::size_t>(drop) : std::nullopt);
    };
  });
  auto* power = theorem->add_subcommand("wreath-power", "Generators of the n-fold wreath power of H");
  power->add_option("spec", text, "The group H")->required();
  power->add_option("--n", n, "Number of factors")->required()->check(CLI::PositiveNumber);
  power->add_flag("--nonperfect", nonperfect, "Use the construction for non-perfect H");
  power->add_option("--max-block", max_block, "Largest regrouping width")->capture_default_str();
  power->callback([&] { action = [&] { return theorem_wreath_power(config, text, n, nonperfect, max_block); }; });

  auto* dec = app.add_subcommand("decide", "Is the inverse limit topologically finitely generated?");
  dec->add_option("sequence", text, "Groups, root first (the period with --periodic)");
  dec->add_flag("--periodic", periodic, "Repeat the sequence forever");
  dec->add_option("--family", family, "Named tail family (cyclic-nth-prime)");
  dec->add_option("--prefix", prefix, "Groups before the periodic or family tail");
  dec->callback([&] { action = [&] { return decide(config, make_sequence(text, periodic, family, prefix)); }; });

  auto* ds = app.add_subcommand("dseq", "d of the wreath powers of H");
  ds->add_option("spec", text, "The group H")->required();
  ds->add_option("--max-n", max_n, "Largest power")->required()->check(CLI::PositiveNumber);
  ds->callback([&] { action = [&] { return dseq(config, text, max_n); }; });

  auto* form = app.add_subcommand("formula", "Generator-count formulas against measured d")->require_subcommand(1);
  auto* solv = form->add_subcommand("solvable", "d(H wr G) for solvable H");
  solv->add_option("H", text, "Bottom group")->required();
  solv->add_option("G", second, "Top group")->required();
  solv->callback([&] {
    action = [&] {
      return formula(solvable_formula_check(parse_group_spec(text), parse_group_spec(second), analysis_options(config)));
    };
  });
  auto* ab = form->add_subcommand("abelian", "Iterated wreath products of coprime abelian groups");
  ab->add_option("sequence", text, "Abelian groups, root first")->required();
  ab->callback([&] {
    action = [&] { return formula(coprime_abelian_formula_check(parse_group_sequence(text), analysis_options(config))); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage_error;
  }

  for (const CLI::App* sub = &app; sub;) {
    const auto chosen = sub->get_subcommands();
    if (chosen.empty())
      break;
    config.command += (config.command.empty() ? "" : " ") + chosen.front()->get_name();
    sub = chosen.front();
  }

  try {
    const Outcome outcome = action();
    if (config.format == "csv") {
      if (outcome.csv.empty()) {
        err << "error: csv output is only available for dseq\n";
        return usage_error;
      }
      out << outcome.csv;
    } else {
      json report = envelope(config, outcome.result);
      if (config.format == "table") {
        report.erase("result");
        out << render_table(report) << '\n' << (outcome.table.empty() ? render_table(outcome.result) : outcome.table);
      } else {
        out << report.dump(2) << '\n';
      }
    }
    return outcome.passed ? ok : check_failed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return check_failed;
  }
}

} // namespace wreathgen::cli
