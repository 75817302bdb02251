#include <doctest.h>

#include <numeric>

#include "wreathgen/errors.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/min_generators.hpp"
#include "wreathgen/theorem.hpp"
#include "wreathgen/tree_groups.hpp"

using namespace wreathgen;

namespace {

ConstructionOptions fast()
{
  ConstructionOptions o;
  o.verify = true;
  return o;
}

} // namespace

TEST_CASE("sequence specs")
{
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(5) == 11);
  const auto fam = SequenceSpec::named_family("cyclic-nth-prime");
  CHECK(fam.level(2).name() == "C5");
  CHECK_FALSE(fam.length());
  const auto per = SequenceSpec::periodic(parse_group_sequence("S3; C2"), parse_group_sequence("A5"));
  CHECK(per.level(0).name() == "A5");
  CHECK(per.level(3).name() == "S3");
  CHECK(per.level(4).name() == "C2");
  CHECK_THROWS_AS(SequenceSpec::finite(parse_group_sequence("A5")).level(1), std::out_of_range);
  CHECK_THROWS_AS(SequenceSpec::named_family("fibonacci"), std::invalid_argument);
}

TEST_CASE("orbit-stabilizer witnesses")
{
  const PermGroup a5 = realize(GroupSpec::alternating(5));
  const auto w = find_orbit_stabilizer_witness(derived_subgroup(a5));
  REQUIRE(w);
  CHECK(w->x == 0);
  CHECK(w->y == 1);
  CHECK(is_valid_witness(*w, a5));

  // A3 acts regularly: all point stabilizers are trivial.
  CHECK_FALSE(find_orbit_stabilizer_witness(derived_subgroup(realize(GroupSpec::symmetric(3)))));
  CHECK_FALSE(find_orbit_stabilizer_witness(PermGroup::trivial(4)));
}

TEST_CASE("regrouping widths")
{
  CHECK(regroup_brackets(SequenceSpec::periodic(parse_group_sequence("A5")), 2).record.width == 1);

  const auto s3 = regroup_brackets(SequenceSpec::periodic(parse_group_sequence("S3")), 2);
  CHECK(s3.record.width >= 2);
  CHECK_FALSE(s3.record.attempts.front().succeeded);
  for (const auto& b : s3.levels)
    CHECK(is_valid_witness(*b.witness, b.derived));

  const auto c2 = regroup_brackets(SequenceSpec::periodic(parse_group_sequence("C2")), 1);
  CHECK(c2.record.width > 1);
  CHECK(c2.record.attempts.front().reason.find("abelian") != std::string::npos);

  RegroupOptions narrow;
  narrow.max_block = 1;
  CHECK_THROWS_AS(regroup_brackets(SequenceSpec::periodic(parse_group_sequence("S3")), 1, narrow),
                  ConstructionError);
  CHECK_THROWS_AS(regroup_brackets(parse_group_sequence("S3; S3; S3")), ConstructionError);
}

TEST_CASE("coprime slot assignment")
{
  const auto two = AbelianInvariants::from_cyclic_orders({2});
  auto s = coprime_slot_assignment({two, two});
  CHECK(s.e == 2);
  CHECK(s.orders[0] == std::vector<std::uint64_t>{2, 1});
  CHECK(s.orders[1] == std::vector<std::uint64_t>{1, 2});

  s = coprime_slot_assignment({AbelianInvariants::from_cyclic_orders({6}), AbelianInvariants::from_cyclic_orders({35})});
  CHECK(s.e == 1);
  CHECK(s.orders[0] == std::vector<std::uint64_t>{6});
  CHECK(s.orders[1] == std::vector<std::uint64_t>{35});

  CHECK(coprime_slot_assignment({{}, {}, {}}).e == 0);
}

TEST_CASE("lift and complete")
{
  const PermGroup s3 = realize(GroupSpec::symmetric(3));
  const Abelianization ab = abelianization(s3);
  const auto gens = lift_and_complete(s3, ab, {{1}}, 2, 0);
  REQUIRE(gens.size() == 2);
  CHECK(ab.coordinates(gens[0]) == std::vector<std::uint64_t>{1});
  CHECK(generates(gens, s3));

  const PermGroup a5 = realize(GroupSpec::alternating(5));
  const auto pair = lift_and_complete(a5, abelianization(a5), {}, 2, 0);
  CHECK(generates(pair, a5));

  const PermGroup c6 = realize(GroupSpec::cyclic(6));
  const auto ab6 = abelianization(c6);
  const auto one = lift_and_complete(c6, ab6, {{1, 1}}, 1, 0);
  CHECK(one[0].element_order() == 6);
  CHECK_THROWS_AS(lift_and_complete(a5, abelianization(a5), {}, 1, 0), ConstructionError);
}

TEST_CASE("A5 at depth 2: dense, spine structure, rooted checks")
{
  const auto r = construct_dense_subgroup(SequenceSpec::finite(parse_group_sequence("A5; A5")), 2, fast());
  REQUIRE(r.verification);
  const auto& v = *r.verification;
  CHECK(v.order_actual == big_pow(60, 6));
  CHECK(v.order_expected == big_pow(60, 6));
  CHECK(v.dense);
  CHECK(v.level_transitive);
  CHECK(v.passed());
  CHECK(r.e == 0);
  CHECK(r.m == 2);
  std::vector<WitnessData> ws;
  for (const auto& b : r.levels)
    ws.push_back(*b.witness);
  for (std::size_t i = 0; i < r.directed_generators.size(); ++i) {
    CHECK(has_spine_structure(r.directed_generators[i], i, ws, r.lifted));
    for (const auto& [vertex, s] : r.directed_generators[i].labels())
      CHECK(vertex == Vertex{0});
  }
  CHECK(r.checks.size() == 3);
}

TEST_CASE("depth 1 degenerates to the root group")
{
  const auto r = construct_dense_subgroup(SequenceSpec::finite(parse_group_sequence("A5")), 1, fast());
  for (const auto& g : r.directed_generators)
    CHECK(g.is_identity());
  CHECK(r.verification->dense);
}

TEST_CASE("non-perfect levels use coprime slots")
{
  const auto spec = SequenceSpec::periodic(parse_group_sequence("S3"));
  const auto r = construct_dense_subgroup(spec, 2, fast());
  CHECK(r.regroup.width == 2);
  // Each block S3 wr S3 has abelianization C2 x C2.
  CHECK(r.e == 4);
  REQUIRE(r.verification);
  CHECK(r.verification->dense);
  CHECK(r.verification->passed());

  // Dense groups have the merged abelianization of the levels.
  const PermGroup g = PermGroup::generate(r.verification_generators, r.verification->leaves);
  AbelianInvariants merged;
  for (const auto& inv : r.abelianizations)
    merged = merged.merged(inv);
  CHECK(abelianization(g).invariants() == merged);
}

TEST_CASE("sabotage: dropping a directed generator loses density")
{
  ConstructionOptions o = fast();
  o.drop_directed = 0;
  const auto r = construct_dense_subgroup(SequenceSpec::finite(parse_group_sequence("A5; A5")), 2, o);
  REQUIRE(r.verification);
  CHECK_FALSE(r.verification->dense);
  CHECK(r.verification->order_actual < r.verification->order_expected);
  CHECK(r.verification->order_expected % r.verification->order_actual == 0);
}

TEST_CASE("monotone density under truncation")
{
  const auto r = construct_dense_subgroup(SequenceSpec::finite(parse_group_sequence("A5; A5; S4")), 3, fast());
  REQUIRE(r.verification);
  CHECK(r.verification->dense);
  const TreeShape shape = r.shape;
  std::vector<Permutation> cut;
  for (const auto& g : r.verification_generators)
    cut.push_back(induced_on_level(shape, g, 2));
  CHECK(PermGroup::generate(cut, 25).order() == big_pow(60, 6));
}

TEST_CASE("wreath power builder")
{
  const auto r = build_wreath_power_generators(GroupSpec::alternating(5), 2, fast());
  CHECK(r.generator_count() == 4);
  CHECK(r.verification->dense);
  const auto one = build_wreath_power_generators(GroupSpec::alternating(5), 1, fast());
  CHECK(one.verification->order_actual == 60);
  CHECK_THROWS_AS(build_wreath_power_generators(GroupSpec::symmetric(3), 2), ConstructionError);
}

TEST_CASE("non-perfect builder")
{
  CHECK_THROWS_AS(build_nonperfect_upper(GroupSpec::alternating(5), 2), ConstructionError);

  for (std::size_t n : {2, 3, 4}) {
    CAPTURE(n);
    const auto r = build_nonperfect_upper(GroupSpec::symmetric(3), n, fast());
    REQUIRE(r.verification);
    CHECK(r.verification->dense);
    CHECK(r.generator_count() <= 2 * r.m + n * r.abelian_rank);
  }
  const auto c2 = build_nonperfect_upper(GroupSpec::cyclic(2), 3, fast());
  CHECK(c2.verification->dense);
  CHECK(c2.generator_count() <= 2 * c2.m + 3);
}
