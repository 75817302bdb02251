#include "wreathgen/tree_groups.hpp"

#include <numeric>

#include "wreathgen/errors.hpp"

namespace wreathgen {

namespace {

void require_degree(const PermGroup& group, const TreeShape& shape)
{
  if (group.degree() != shape.leaf_count())
    throw DegreeMismatch("group degree " + std::to_string(group.degree()) +
                         " differs from the leaf count " + std::to_string(shape.leaf_count()));
}

} // namespace

void require_tree_automorphisms(const PermGroup& group, const TreeShape& shape)
{
  require_degree(group, shape);
  for (const auto& g : group.generators())
    from_leaf_permutation(shape, g);
}

PermGroup level_stabilizer(const PermGroup& group, const TreeShape& shape, std::size_t level)
{
  require_degree(group, shape);
  if (level > shape.depth())
    throw std::out_of_range("level beyond the tree depth");
  if (level == 0)
    return group;
  const std::size_t leaves = shape.leaf_count();
  if (level == shape.depth()) {
    std::vector<Point> all(leaves);
    std::iota(all.begin(), all.end(), Point{0});
    return pointwise_stabilizer(group, all);
  }

  // Act on leaves and level vertices together, then fix every vertex point.
  // The action stays faithful, so |G| bounds the augmented chain.
  const std::size_t vertices = shape.level_size(level);
  std::vector<Permutation> augmented;
  for (const auto& g : group.strong_generators()) {
    std::vector<Point> images(g.images().begin(), g.images().end());
    const Permutation induced = induced_on_level(shape, g, level);
    for (std::size_t j = 0; j < vertices; ++j)
      images.push_back(static_cast<Point>(leaves + induced(static_cast<Point>(j))));
    augmented.emplace_back(std::move(images));
  }
  ChainOptions options;
  options.order_bound = group.order();
  const PermGroup big = PermGroup::generate(std::move(augmented), leaves + vertices, options);

  std::vector<Point> vertex_points(vertices);
  std::iota(vertex_points.begin(), vertex_points.end(), static_cast<Point>(leaves));
  const PermGroup kernel = pointwise_stabilizer(big, vertex_points);

  std::vector<Permutation> restricted;
  for (const auto& k : kernel.strong_generators()) {
    const auto images = k.images();
    restricted.emplace_back(std::vector<Point>(images.begin(), images.begin() + static_cast<std::ptrdiff_t>(leaves)));
  }
  ChainOptions bound;
  bound.order_bound = kernel.order();
  return PermGroup::generate(std::move(restricted), leaves, bound);
}

PermGroup rigid_vertex_stabilizer(const PermGroup& group, const TreeShape& shape, const Vertex& v)
{
  require_degree(group, shape);
  const std::size_t first = shape.first_leaf(v);
  const std::size_t span = shape.leaves_below(v.size());
  std::vector<Point> outside;
  for (std::size_t x = 0; x < shape.leaf_count(); ++x)
    if (x < first || x >= first + span)
      outside.push_back(static_cast<Point>(x));
  return pointwise_stabilizer(group, outside);
}

bool contains_rooted_copy(const PermGroup& group, std::size_t first, std::size_t span,
                          std::size_t stride, const PermGroup& h)
{
  for (const auto& s : h.generators())
    if (!group.contains(rooted_leaf_permutation(group.degree(), first, span, stride, s)))
      return false;
  return true;
}

bool is_rooted_subgroup(const PermGroup& group, const TreeShape& shape, const Vertex& v,
                        const PermGroup& h)
{
  require_degree(group, shape);
  if (v.size() >= shape.depth() || h.degree() != shape.child_count(v.size()))
    throw DegreeMismatch("rooted group degree differs from the number of children");
  return contains_rooted_copy(group, shape.first_leaf(v), shape.leaves_below(v.size()),
                              shape.leaves_below(v.size() + 1), h);
}

std::vector<std::size_t> level_orbit_counts(const PermGroup& group, const TreeShape& shape)
{
  require_degree(group, shape);
  const auto leaf_orbits = orbits(group);
  std::vector<std::size_t> counts;
  for (std::size_t level = 1; level <= shape.depth(); ++level) {
    const std::size_t size = shape.leaves_below(level);
    std::vector<std::size_t> parent(shape.level_size(level));
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = parent.size();
    for (const auto& o : leaf_orbits) {
      const std::size_t root = find(o.front() / size);
      for (auto x : o) {
        const std::size_t r = find(x / size);
        if (r != root) {
          parent[r] = root;
          --components;
        }
      }
    }
    counts.push_back(components);
  }
  return counts;
}

bool is_level_transitive(const PermGroup& group, const TreeShape& shape)
{
  for (auto c : level_orbit_counts(group, shape))
    if (c != 1)
      return false;
  return true;
}

} // namespace wreathgen
