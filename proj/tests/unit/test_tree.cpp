#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "wreathgen/errors.hpp"
#include "wreathgen/group_spec.hpp"
#include "wreathgen/tree.hpp"
#include "wreathgen/tree_groups.hpp"
#include "wreathgen/wreath.hpp"

using namespace wreathgen;

namespace {

Portrait random_portrait(const TreeShape& shape, std::mt19937_64& rng)
{
  Portrait g(shape);
  for (std::size_t level = 0; level < shape.depth(); ++level)
    for (std::size_t j = 0; j < shape.level_size(level); ++j) {
      std::vector<Point> images(shape.child_count(level));
      for (Point i = 0; i < images.size(); ++i)
        images[i] = i;
      std::shuffle(images.begin(), images.end(), rng);
      g.set_label(shape.vertex_at(level, j), Permutation(images));
    }
  return g;
}

} // namespace

TEST_CASE("mixed-radix indexing")
{
  const TreeShape shape({2, 3});
  CHECK(shape.leaf_count() == 6);
  CHECK(shape.leaf_index({1, 2}) == 5);
  CHECK(shape.vertex_at(2, 4) == Vertex{1, 1});
  CHECK(shape.first_leaf({1}) == 3);
  CHECK(shape.leaves_below(1) == 3);
  CHECK_THROWS_AS(TreeShape({2, 1}), std::invalid_argument);
}

TEST_CASE("labels act at the original prefix")
{
  // Label (1 2) at the root and (1 2 3) at vertex 1: the leaf 1.1 goes to 2.1,
  // while leaf 2.1 goes to 1.1.
  const TreeShape shape({2, 3});
  Portrait g(shape);
  g.set_label({}, parse_permutation("(1 2)", 2));
  g.set_label({0}, parse_permutation("(1 2 3)", 3));
  CHECK(g.apply({0, 0}) == Vertex{1, 1});
  CHECK(g.apply({1, 0}) == Vertex{0, 0});
  CHECK(g.apply_inverse(g.apply({0, 2})) == Vertex{0, 2});
}

TEST_CASE("portrait and leaf permutations form an isomorphism")
{
  std::mt19937_64 rng(11);
  for (const auto& sizes : {std::vector<std::size_t>{2, 2}, {3, 2}, {2, 3, 2}, {3, 3}, {3, 3, 3}}) {
    const TreeShape shape(sizes);
    for (int trial = 0; trial < 100; ++trial) {
      const Portrait g = random_portrait(shape, rng);
      const Portrait h = random_portrait(shape, rng);
      const Permutation pg = g.to_leaf_permutation();
      CHECK(from_leaf_permutation(shape, pg) == g);
      CHECK((g * h).to_leaf_permutation() == pg * h.to_leaf_permutation());
      CHECK(g.inverse().to_leaf_permutation() == pg.inverse());
      CHECK(portrait_from_json(portrait_to_json(g)) == g);
    }
  }
}

TEST_CASE("non-automorphisms are rejected with the failing block")
{
  const TreeShape shape({2, 2});
  try {
    from_leaf_permutation(shape, parse_permutation("(2 3)", 4));
    FAIL("expected NotAutomorphism");
  } catch (const NotAutomorphism& e) {
    CHECK(e.level() == 1);
    CHECK(e.block() == 0);
  }
  CHECK_FALSE(is_tree_automorphism(shape, parse_permutation("(2 3)", 4)));
  CHECK(is_tree_automorphism(shape, parse_permutation("(1 3)(2 4)", 4)));
}

TEST_CASE("portrait JSON format")
{
  const TreeShape shape({2, 2});
  Portrait g = rooted_automorphism(shape, {1}, parse_permutation("(1 2)", 2));
  const auto j = portrait_to_json(g);
  CHECK(j.dump() == R"j({"labels":{"2":"(1 2)"},"shape":[2,2]})j");
  CHECK_THROWS_AS(portrait_from_json(nlohmann::json::parse(R"j({"shape":[2,2],"labels":{"3":"(1 2)"}})j")),
                  ParseError);
  CHECK(vertex_to_string({}) == "");
  CHECK(parse_vertex("2.1", shape) == Vertex{1, 0});
}

TEST_CASE("induced action and truncation")
{
  std::mt19937_64 rng(3);
  const TreeShape shape({2, 3, 2});
  const Portrait g = random_portrait(shape, rng);
  const Permutation induced = induced_on_level(shape, g.to_leaf_permutation(), 2);
  CHECK(induced == g.truncated(2).to_leaf_permutation());
}

TEST_CASE("level stabilizers of the full automorphism group")
{
  const auto specs = parse_group_sequence("S2; S2");
  const PermGroup w = iterated_wreath(WreathSequence::from_specs(specs));
  const TreeShape shape({2, 2});
  CHECK(w.order() == 8);
  CHECK(level_stabilizer(w, shape, 0).order() == 8);
  CHECK(level_stabilizer(w, shape, 1).order() == 4);
  CHECK(level_stabilizer(w, shape, 2).order() == 1);

  const PermGroup w3 = iterated_wreath(WreathSequence::from_specs(parse_group_sequence("S3; S2")));
  CHECK(level_stabilizer(w3, TreeShape({3, 2}), 1).order() == 8);
}

TEST_CASE("rigid stabilizers, rooted subgroups, level transitivity")
{
  const PermGroup w = iterated_wreath(WreathSequence::from_specs(parse_group_sequence("S3; C2")));
  const TreeShape shape({3, 2});
  CHECK(rigid_vertex_stabilizer(w, shape, {0}).order() == 2);
  CHECK(is_rooted_subgroup(w, shape, {1}, realize(GroupSpec::cyclic(2))));
  CHECK(is_level_transitive(w, shape));

  const PermGroup c = PermGroup::generate({rooted_automorphism(shape, {}, parse_permutation("(1 2 3)", 3)).to_leaf_permutation()}, 6);
  CHECK(level_orbit_counts(c, shape) == std::vector<std::size_t>{1, 2});
  CHECK_FALSE(is_rooted_subgroup(c, shape, {0}, realize(GroupSpec::cyclic(2))));
}
