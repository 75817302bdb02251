#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/perm_group.hpp"

using namespace wreathgen;

namespace {

const char* const catalog[] = {"S2", "S3", "S4", "S5", "A3", "A4", "A5", "A6", "C2", "C3",
                               "C4", "C5", "C6", "D3", "D4", "D5", "D6", "P4[(1 2)(3 4), (1 3)(2 4)]",
                               "P6[(1 2 3), (4 5)]"};

} // namespace

TEST_CASE("orders agree with brute-force closure on the catalog")
{
  for (const char* text : catalog) {
    CAPTURE(text);
    const GroupSpec spec = parse_group_spec(text);
    const PermGroup g = realize(spec);
    const auto elements = oracle::closure(g.generators(), g.degree());
    CHECK(g.order() == elements.size());
    for (const auto& e : elements)
      CHECK(g.contains(e));
    CHECK(g.elements(100000).size() == elements.size());
  }
}

TEST_CASE("orbit-stabilizer identity on the catalog")
{
  for (const char* text : catalog) {
    CAPTURE(text);
    const PermGroup g = realize(parse_group_spec(text));
    for (Point x = 0; x < g.degree(); ++x) {
      const auto o = orbit(g, x);
      CHECK(o.size() == oracle::orbit(g.generators(), x).size());
      CHECK(g.order() == BigInt(o.size()) * point_stabilizer(g, x).order());
    }
  }
}

TEST_CASE("membership rejects outsiders")
{
  const PermGroup a5 = realize(GroupSpec::alternating(5));
  CHECK(a5.order() == 60);
  CHECK_FALSE(a5.contains(parse_permutation("(1 2)", 5)));
  CHECK(a5.contains(parse_permutation("(1 2)(3 4)", 5)));
}

TEST_CASE("pointwise stabilizers match brute force")
{
  const PermGroup s5 = realize(GroupSpec::symmetric(5));
  const std::vector<Point> fixed{0, 3};
  const PermGroup st = pointwise_stabilizer(s5, fixed);
  CHECK(st.order() == 6);
  for (const auto& g : st.generators())
    CHECK(g.fixes(fixed));
}

TEST_CASE("derived subgroups and structural predicates")
{
  for (const char* text : catalog) {
    CAPTURE(text);
    const PermGroup g = realize(parse_group_spec(text));
    const auto elements = oracle::closure(g.generators(), g.degree());
    const auto d = oracle::derived(elements, g.degree());
    CHECK(derived_subgroup(g).order() == d.size());
    CHECK(is_abelian(g) == (d.size() == 1));
  }
  CHECK(is_perfect(realize(GroupSpec::alternating(5))));
  CHECK_FALSE(is_solvable(realize(GroupSpec::alternating(5))));
  CHECK(is_solvable(realize(GroupSpec::symmetric(4))));
  CHECK(derived_subgroup(realize(GroupSpec::symmetric(3))).order() == 3);
}

TEST_CASE("normal closure")
{
  const PermGroup s4 = realize(GroupSpec::symmetric(4));
  CHECK(normal_closure(s4, {parse_permutation("(1 2)(3 4)", 4)}).order() == 4);
  CHECK(normal_closure(s4, {parse_permutation("(1 2 3)", 4)}).order() == 12);
}

TEST_CASE("order bound stops early without losing correctness")
{
  const PermGroup s6 = realize(GroupSpec::symmetric(6));
  ChainOptions options;
  options.order_bound = BigInt(720);
  const PermGroup again = PermGroup::generate(s6.generators(), 6, options);
  CHECK(again.order() == 720);
  CHECK(same_group(again, s6));
}

TEST_CASE("random elements are members")
{
  const PermGroup g = realize(GroupSpec::dihedral(7));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i)
    CHECK(g.contains(g.random_element(rng)));
}
