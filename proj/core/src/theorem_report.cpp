#include <nlohmann/json.hpp>

#include "wreathgen/theorem.hpp"

namespace wreathgen {

namespace {

nlohmann::json cycles(const std::vector<Permutation>& perms)
{
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : perms)
    out.push_back(to_cycle_string(p));
  return out;
}

nlohmann::json portraits(const std::vector<Portrait>& gs)
{
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : gs)
    out.push_back(portrait_to_json(g));
  return out;
}

} // namespace

nlohmann::json witness_to_json(const WitnessData& w)
{
  return {{"x", w.x + 1}, {"y", w.y + 1}, {"tau", to_cycle_string(w.tau)}, {"pi", to_cycle_string(w.pi)}};
}

nlohmann::json report_to_json(const VerificationReport& r)
{
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.rooted_checks)
    checks.push_back({{"vertex", c.vertex},
                      {"kind", c.kind},
                      {"level", c.level},
                      {"group", c.group_name},
                      {"generators_tested", c.generators_tested},
                      {"rigid_stabilizer_order", to_decimal(c.rigid_stabilizer_order)},
                      {"passed", c.passed}});
  return {{"leaves", r.leaves},
          {"order_expected", to_decimal(r.order_expected)},
          {"order_reference", to_decimal(r.order_reference)},
          {"order_actual", to_decimal(r.order_actual)},
          {"generators_in_reference", r.generators_in_reference},
          {"dense", r.dense},
          {"level_orbit_counts", r.level_orbit_counts},
          {"level_transitive", r.level_transitive},
          {"rooted_checks", checks},
          {"passed", r.passed()}};
}

nlohmann::json construction_to_json(const ConstructionResult& c)
{
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t j = 0; j < c.levels.size(); ++j) {
    nlohmann::json indices = nlohmann::json::array();
    for (auto i : c.regroup.blocks.at(j))
      indices.push_back(i + 1);
    blocks.push_back({{"levels", indices},
                      {"group", c.levels[j].name},
                      {"degree", c.levels[j].group.degree()},
                      {"order", to_decimal(c.levels[j].group.order())},
                      {"abelianization", c.abelianizations.at(j).to_string()}});
  }
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : c.regroup.attempts) {
    nlohmann::json entry = {{"width", a.width}, {"succeeded", a.succeeded}};
    if (!a.succeeded)
      entry["reason"] = a.reason;
    attempts.push_back(entry);
  }

  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& b : c.levels)
    witnesses.push_back(b.witness ? witness_to_json(*b.witness) : nlohmann::json(nullptr));

  nlohmann::json lifted = nlohmann::json::array();
  for (const auto& level : c.lifted)
    lifted.push_back(cycles(level));

  nlohmann::json slots = nlohmann::json::array();
  for (std::size_t n = 0; n < c.slots.orders.size(); ++n)
    slots.push_back({{"factor_slots", c.slots.factor_slot[n]}, {"orders", c.slots.orders[n]}});

  nlohmann::json out = {
      {"builder", c.builder},
      {"sequence", c.sequence},
      {"depth", c.depth},
      {"shape", c.shape.alphabet_sizes()},
      {"regrouping", {{"width", c.regroup.width}, {"blocks", blocks}, {"attempts", attempts}}},
      {"witnesses", witnesses},
      {"e", c.e},
      {"m", c.m},
      {"slot_assignment", slots},
      {"completion_counts", c.completion},
      {"lifted_generators", lifted},
      {"rooted_generators", portraits(c.rooted_generators)},
      {"directed_generators", portraits(c.directed_generators)},
      {"generator_count", c.generator_count()},
  };
  if (c.dropped_directed)
    out["dropped_directed"] = *c.dropped_directed + 1;
  if (c.builder == "nonperfect") {
    out["abelian_rank"] = c.abelian_rank;
    out["extra_generators"] = portraits(c.extra_generators);
  }
  out["verification_levels"] = sequence_name(c.verification_levels);
  if (c.verification)
    out["verification"] = report_to_json(*c.verification);
  return out;
}

} // namespace wreathgen
