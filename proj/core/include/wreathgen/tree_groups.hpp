#pragma once

#include <cstddef>
#include <vector>

#include "wreathgen/perm_group.hpp"
#include "wreathgen/tree.hpp"

namespace wreathgen {

/// Throws NotAutomorphism for the first generator that splits a block.
void require_tree_automorphisms(const PermGroup& group, const TreeShape& shape);

/// Kernel of the action on the vertices of `level` (0 = the whole group).
PermGroup level_stabilizer(const PermGroup& group, const TreeShape& shape, std::size_t level);

/// The elements supported on the subtree below v: the pointwise stabilizer of
/// every leaf outside it.
PermGroup rigid_vertex_stabilizer(const PermGroup& group, const TreeShape& shape, const Vertex& v);

/// Every generator of `h`, applied as a rooted automorphism on the `stride`
/// leaf units below `first`, lies in `group`. `h` must have degree span/stride.
bool contains_rooted_copy(const PermGroup& group, std::size_t first, std::size_t span,
                          std::size_t stride, const PermGroup& h);

/// The rooted copy of `h` at v (one level below v) lies in `group`.
bool is_rooted_subgroup(const PermGroup& group, const TreeShape& shape, const Vertex& v,
                        const PermGroup& h);

/// Number of orbits on each level 1..depth.
std::vector<std::size_t> level_orbit_counts(const PermGroup& group, const TreeShape& shape);
bool is_level_transitive(const PermGroup& group, const TreeShape& shape);

} // namespace wreathgen
