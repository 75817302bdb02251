#include <doctest.h>

#include <nlohmann/json.hpp>

#include "wreathgen/analysis.hpp"

using namespace wreathgen;

TEST_CASE("finite generation verdicts")
{
  auto v = decide_finite_generation(SequenceSpec::periodic(parse_group_sequence("A5")));
  CHECK(v.finitely_generated);
  CHECK(v.e == 0u);

  v = decide_finite_generation(SequenceSpec::periodic(parse_group_sequence("S3")));
  CHECK_FALSE(v.finitely_generated);
  CHECK(v.witness_prime == 2u);

  v = decide_finite_generation(SequenceSpec::named_family("cyclic-nth-prime"));
  CHECK(v.finitely_generated);
  CHECK(v.e == 1u);

  v = decide_finite_generation(SequenceSpec::finite(parse_group_sequence("S3; S3; C3")));
  CHECK(v.finitely_generated);
  CHECK(v.e == 2u);
  CHECK(v.e == coprime_slot_assignment({abelianization(realize(GroupSpec::symmetric(3))).invariants(),
                                         abelianization(realize(GroupSpec::symmetric(3))).invariants(),
                                         abelianization(realize(GroupSpec::cyclic(3))).invariants()})
                   .e);

  // Rotating the period does not change the verdict.
  const auto a = decide_finite_generation(SequenceSpec::periodic(parse_group_sequence("A5; C3; S3")));
  const auto b = decide_finite_generation(SequenceSpec::periodic(parse_group_sequence("S3; A5; C3")));
  CHECK(a.finitely_generated == b.finitely_generated);
  CHECK(a.witness_prime == b.witness_prime);
  CHECK(a.witness_prime == 2u);
}

TEST_CASE("growth of d for wreath powers")
{
  const auto c2 = wreath_power_dsequence(GroupSpec::cyclic(2), 4);
  REQUIRE(c2.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(c2.rows[i].certified);
    CHECK(c2.rows[i].d_upper == i + 1);
    CHECK(c2.rows[i].within_bounds);
  }

  const auto a5 = wreath_power_dsequence(GroupSpec::alternating(5), 2);
  REQUIRE(a5.rows.size() == 2);
  CHECK(a5.rows[0].d_upper == 2);
  CHECK(a5.rows[1].d_upper == 2);
  CHECK(a5.rows[1].certified);
  CHECK(a5.perfect);

  const auto c6 = wreath_power_dsequence(GroupSpec::cyclic(6), 2);
  REQUIRE(c6.rows.size() == 2);
  CHECK(c6.rows[0].d_upper == 1);
  CHECK(c6.rows[1].d_lower >= 2);
  CHECK(c6.rows[1].within_bounds);

  AnalysisOptions tight;
  tight.leaf_cap = 8;
  CHECK(wreath_power_dsequence(GroupSpec::cyclic(2), 5, tight).notice);
}

TEST_CASE("solvable formulas")
{
  struct Case
  {
    const char* h;
    const char* g;
    std::size_t value;
  };
  for (const Case c : {Case{"C3", "C2", 2}, Case{"S3", "C2", 2}, Case{"C5", "C3", 2}}) {
    CAPTURE(c.h);
    const auto r = solvable_formula_check(parse_group_spec(c.h), parse_group_spec(c.g));
    for (const auto& check : r.checks) {
      if (!check.applicable)
        continue;
      CHECK(check.certified);
      CHECK(check.match);
      CHECK(check.formula_value == c.value);
    }
  }
  const auto s3 = solvable_formula_check(parse_group_spec("S3"), parse_group_spec("C2"));
  CHECK(s3.checks[0].applicable);
  CHECK_FALSE(s3.checks[1].applicable);
  CHECK_FALSE(solvable_formula_check(parse_group_spec("A5"), parse_group_spec("C2")).checks[0].applicable);
}

TEST_CASE("coprime abelian formula")
{
  auto r = coprime_abelian_formula_check(parse_group_sequence("C2; C3"));
  CHECK(r.checks[0].match);
  CHECK(r.checks[0].formula_value == 2);
  r = coprime_abelian_formula_check(parse_group_sequence("C2; C3; C5"));
  CHECK(r.checks[0].match);
  r = coprime_abelian_formula_check(parse_group_sequence("C2; C4"));
  CHECK_FALSE(r.checks[0].applicable);
}

TEST_CASE("growth table formats")
{
  const auto t = wreath_power_dsequence(GroupSpec::cyclic(2), 2);
  CHECK(growth_to_csv(t).rfind("n,d_lower", 0) == 0);
  CHECK(growth_to_table(t).find("C2") != std::string::npos);
  CHECK(growth_to_json(t)["rows"].size() == 2);
}
