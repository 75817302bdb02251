#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wreathgen/permutation.hpp"

namespace wreathgen {

/// A vertex of a spherically homogeneous rooted tree as its word of 0-based
/// letters; the empty word is the root.
using Vertex = std::vector<Point>;

/**
 * The truncated tree with alphabets of sizes k_1, ..., k_n. Level m has
 * k_1 * ... * k_m vertices. Leaves are numbered in mixed radix with the first
 * letter most significant: (x_1, ..., x_n) -> sum x_i * prod_{j>i} k_j.
 */
class TreeShape
{
public:
  TreeShape() = default;
  /// Throws std::invalid_argument unless n >= 1 and every k_i >= 2.
  explicit TreeShape(std::vector<std::size_t> alphabet_sizes);

  std::size_t depth() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& alphabet_sizes() const noexcept { return sizes_; }
  /// Number of children of a vertex on `level` (0 = root).
  std::size_t child_count(std::size_t level) const { return sizes_.at(level); }

  std::size_t level_size(std::size_t level) const;
  std::size_t leaf_count() const { return level_size(depth()); }
  /// Leaves below one vertex of `level`.
  std::size_t leaves_below(std::size_t level) const;

  bool contains(const Vertex& v) const noexcept;
  /// Index of v within its level, mixed radix.
  std::size_t vertex_index(const Vertex& v) const;
  Vertex vertex_at(std::size_t level, std::size_t index) const;
  std::size_t leaf_index(const Vertex& leaf) const { return vertex_index(leaf); }
  /// First leaf below v; the leaves below v are contiguous.
  std::size_t first_leaf(const Vertex& v) const;

  TreeShape truncated(std::size_t depth) const;

  friend bool operator==(const TreeShape&, const TreeShape&) = default;

private:
  std::vector<std::size_t> sizes_;
};

/// "1.2.1" with 1-based letters; the root is the empty string.
std::string vertex_to_string(const Vertex& v);
/// Throws ParseError on malformed words or letters outside the shape.
Vertex parse_vertex(std::string_view text, const TreeShape& shape);

/**
 * A tree automorphism given by its vertex permutations. Only nontrivial labels
 * are stored; the label at v permutes the children of v.
 */
class Portrait
{
public:
  Portrait() = default;
  /// The identity automorphism.
  explicit Portrait(TreeShape shape);

  const TreeShape& shape() const noexcept { return shape_; }
  const std::map<Vertex, Permutation>& labels() const noexcept { return labels_; }

  /// The vertex permutation at v (identity when none is stored).
  Permutation label(const Vertex& v) const;
  /// Sets the vertex permutation at v; the identity erases the entry.
  /// Throws DegreeMismatch / std::out_of_range on a malformed label.
  void set_label(const Vertex& v, Permutation p);

  bool is_identity() const noexcept { return labels_.empty(); }

  /// Image of v: letter i of the image is (g @ v[0..i))(v[i]).
  Vertex apply(const Vertex& v) const;
  Vertex apply_inverse(const Vertex& v) const;

  Portrait inverse() const;
  /// Labels on levels >= depth are dropped.
  Portrait truncated(std::size_t depth) const;

  Permutation to_leaf_permutation() const;

  /// (g * h) @ v = (g @ h(v)) o (h @ v); h acts first.
  friend Portrait operator*(const Portrait& g, const Portrait& h);
  friend bool operator==(const Portrait&, const Portrait&) = default;

private:
  TreeShape shape_;
  std::map<Vertex, Permutation> labels_;
};

/// Throws DegreeMismatch when the shapes differ.
Portrait compose_portraits(const Portrait& g, const Portrait& h);
Portrait invert_portrait(const Portrait& g);

/// Throws NotAutomorphism naming the shallowest level and block where p fails
/// to map blocks of leaves onto blocks.
Portrait from_leaf_permutation(const TreeShape& shape, const Permutation& p);

/// Checks block preservation only.
bool is_tree_automorphism(const TreeShape& shape, const Permutation& p);

/// The automorphism with the single label s at v.
Portrait rooted_automorphism(const TreeShape& shape, const Vertex& v, const Permutation& s);

/// Leaf permutation acting as `s` on the `span / stride` consecutive units of
/// `stride` leaves that start at `first`, fixing everything else. With
/// span = leaves below v and stride = leaves below a child of v this is the
/// rooted automorphism at v; larger strides give rooted copies of a group
/// acting on several levels at once.
Permutation rooted_leaf_permutation(std::size_t leaf_count, std::size_t first, std::size_t span,
                                    std::size_t stride, const Permutation& s);

/// The induced action of a tree automorphism on the vertices of `level`.
Permutation induced_on_level(const TreeShape& shape, const Permutation& leaf_permutation,
                             std::size_t level);

/// {"shape": [k_1, ...], "labels": {"<vertex>": "<cycles>"}}
nlohmann::json portrait_to_json(const Portrait& g);
Portrait portrait_from_json(const nlohmann::json& j);

} // namespace wreathgen
