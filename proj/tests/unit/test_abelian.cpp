#include <doctest.h>

#include "oracles.hpp"
#include "wreathgen/abelian.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/wreath.hpp"

using namespace wreathgen;

namespace {

std::vector<std::uint64_t> counted_invariants(const PermGroup& g)
{
  const auto elements = oracle::closure(g.generators(), g.degree());
  const auto derived = oracle::derived(elements, g.degree());
  return oracle::abelian_invariants_by_counting(oracle::quotient_regular(elements, derived));
}

} // namespace

TEST_CASE("primary decomposition of cyclic orders")
{
  CHECK(AbelianInvariants::from_cyclic_orders({6}).factors() == std::vector<std::uint64_t>{2, 3});
  CHECK(AbelianInvariants::from_cyclic_orders({12, 2}).factors() == std::vector<std::uint64_t>{2, 4, 3});
  CHECK(AbelianInvariants::from_cyclic_orders({1}).is_trivial());
  CHECK(AbelianInvariants::from_cyclic_orders({2, 2, 3}).d() == 2);
  CHECK(AbelianInvariants::from_cyclic_orders({6}).to_string() == "[2, 3]");
}

TEST_CASE("abelianization agrees with the counting oracle")
{
  for (const char* text : {"S3", "S4", "A4", "A5", "C6", "C4", "D4", "D6", "P4[(1 2)(3 4), (1 3)(2 4)]"}) {
    CAPTURE(text);
    const PermGroup g = realize(parse_group_spec(text));
    const Abelianization ab = abelianization(g);
    CHECK(ab.invariants().factors() == counted_invariants(g));
    CHECK(BigInt(ab.index()) * ab.derived().order() == g.order());
  }
}

TEST_CASE("coordinates and preimages are consistent")
{
  const PermGroup g = realize(parse_group_spec("P6[(1 2 3), (4 5)]"));
  const Abelianization ab = abelianization(g);
  CHECK(ab.invariants().factors() == std::vector<std::uint64_t>{2, 3});
  for (std::size_t c = 0; c < ab.index(); ++c) {
    const auto coords = ab.coset_coordinates(c);
    CHECK(ab.coset_of(ab.preimage(coords)) == c);
  }
  for (std::size_t j = 0; j < ab.factor_generators().size(); ++j) {
    auto coords = ab.coordinates(ab.factor_generators()[j]);
    for (std::size_t i = 0; i < coords.size(); ++i)
      CHECK(coords[i] == (i == j ? 1u : 0u));
  }
  CHECK(ab.coset_representatives().front().is_identity());
}

TEST_CASE("multiplicativity over iterated wreath products")
{
  // Abelianization of G_n wr ... wr G_1 is the product of the level abelianizations.
  const char* sequences[] = {"C2; C2", "S3; C2", "C2; S3", "C3; C2", "S3; S3", "D4; C2",
                             "C2; C3", "C2; C2; C2", "S3; C3", "A4; C2", "C4; C2"};
  for (const char* text : sequences) {
    CAPTURE(text);
    const auto specs = parse_group_sequence(text);
    const WreathSequence seq = WreathSequence::from_specs(specs);
    AbelianInvariants expected;
    for (const auto& g : seq.groups())
      expected = expected.merged(abelianization(g).invariants());
    CHECK(abelianization(iterated_wreath(seq)).invariants() == expected);
  }
}

TEST_CASE("regular representation")
{
  const auto inv = AbelianInvariants::from_cyclic_orders({2, 3});
  const PermGroup g = regular_representation(inv);
  CHECK(g.degree() == 6);
  CHECK(g.order() == 6);
  CHECK(is_abelian(g));
  CHECK(is_transitive(g));
}
