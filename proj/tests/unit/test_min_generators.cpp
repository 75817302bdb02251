#include <doctest.h>

#include "oracles.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/min_generators.hpp"
#include "wreathgen/wreath.hpp"

using namespace wreathgen;

TEST_CASE("exhaustive d agrees with brute force")
{
  for (const char* text : {"S3", "S4", "A4", "A5", "C6", "D4", "C2", "P4[(1 2)(3 4), (1 3)(2 4)]"}) {
    CAPTURE(text);
    const PermGroup g = realize(parse_group_spec(text));
    const auto r = min_generators(g);
    CHECK(r.certified);
    CHECK(r.method == "exhaustive");
    CHECK(r.d() == oracle::min_generators(oracle::closure(g.generators(), g.degree()), g.degree()));
    CHECK(generates(r.witness, g));
  }
}

TEST_CASE("p-groups are certified through the Frattini quotient")
{
  const PermGroup g = iterated_wreath(WreathSequence::from_specs(parse_group_sequence("C2; C2; C2; C2")));
  MinGeneratorsOptions options;
  options.strategy = GenerationStrategy::certified_search;
  const auto r = min_generators(g, options);
  CHECK(r.certified);
  CHECK(r.method == "p-group");
  CHECK(r.d() == 4);
}

TEST_CASE("certified search on a large perfect group")
{
  const PermGroup g = iterated_wreath(WreathSequence::from_specs(parse_group_sequence("A5; A5")));
  const auto r = min_generators(g);
  CHECK(r.certified);
  CHECK(r.d() == 2);
  CHECK(generates(r.witness, g));
}

TEST_CASE("trivial group")
{
  const auto r = min_generators(PermGroup::trivial(3));
  CHECK(r.d() == 0);
  CHECK(r.certified);
}
