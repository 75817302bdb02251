#include "wreathgen/tree.hpp"

#include <cctype>
#include <limits>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wreathgen/errors.hpp"

namespace wreathgen {

TreeShape::TreeShape(std::vector<std::size_t> alphabet_sizes) : sizes_(std::move(alphabet_sizes))
{
  if (sizes_.empty())
    throw std::invalid_argument("a tree needs at least one level");
  std::size_t total = 1;
  for (auto k : sizes_) {
    if (k < 2)
      throw std::invalid_argument("every alphabet needs at least two letters");
    if (total > std::numeric_limits<std::uint32_t>::max() / k)
      throw CapExceeded("tree has too many leaves to index");
    total *= k;
  }
}

std::size_t TreeShape::level_size(std::size_t level) const
{
  if (level > depth())
    throw std::out_of_range("level beyond the tree depth");
  std::size_t n = 1;
  for (std::size_t i = 0; i < level; ++i)
    n *= sizes_[i];
  return n;
}

std::size_t TreeShape::leaves_below(std::size_t level) const
{
  if (level > depth())
    throw std::out_of_range("level beyond the tree depth");
  std::size_t n = 1;
  for (std::size_t i = level; i < depth(); ++i)
    n *= sizes_[i];
  return n;
}

bool TreeShape::contains(const Vertex& v) const noexcept
{
  if (v.size() > depth())
    return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= sizes_[i])
      return false;
  return true;
}

std::size_t TreeShape::vertex_index(const Vertex& v) const
{
  if (!contains(v))
    throw std::out_of_range("vertex " + vertex_to_string(v) + " is not in the tree");
  std::size_t index = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    index = index * sizes_[i] + v[i];
  return index;
}

Vertex TreeShape::vertex_at(std::size_t level, std::size_t index) const
{
  if (index >= level_size(level))
    throw std::out_of_range("vertex index beyond the level size");
  Vertex v(level);
  for (std::size_t i = level; i-- > 0;) {
    v[i] = static_cast<Point>(index % sizes_[i]);
    index /= sizes_[i];
  }
  return v;
}

std::size_t TreeShape::first_leaf(const Vertex& v) const
{
  return vertex_index(v) * leaves_below(v.size());
}

TreeShape TreeShape::truncated(std::size_t d) const
{
  if (d == 0 || d > depth())
    throw std::out_of_range("truncation depth must be in 1..depth");
  return TreeShape(std::vector<std::size_t>(sizes_.begin(), sizes_.begin() + static_cast<std::ptrdiff_t>(d)));
}

std::string vertex_to_string(const Vertex& v)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0)
      out += '.';
    out += std::to_string(v[i] + 1);
  }
  return out;
}

Vertex parse_vertex(std::string_view text, const TreeShape& shape)
{
  Vertex v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    std::size_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
      if (value > 1'000'000)
        throw ParseError("letter too large", start, std::string(text.substr(start, pos - start + 1)));
      ++pos;
    }
    if (pos == start)
      throw ParseError("expected a letter", start, std::string(text.substr(start, 1)));
    const std::string token(text.substr(start, pos - start));
    if (v.size() >= shape.depth())
      throw ParseError("vertex deeper than the tree", start, token);
    if (value < 1 || value > shape.child_count(v.size()))
      throw ParseError("letter out of range", start, token);
    v.push_back(static_cast<Point>(value - 1));
    if (pos < text.size()) {
      if (text[pos] != '.')
        throw ParseError("expected '.'", pos, std::string(1, text[pos]));
      ++pos;
      if (pos == text.size())
        throw ParseError("trailing '.'", pos - 1, ".");
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

Portrait::Portrait(TreeShape shape) : shape_(std::move(shape)) {}

Permutation Portrait::label(const Vertex& v) const
{
  auto it = labels_.find(v);
  if (it != labels_.end())
    return it->second;
  if (v.size() >= shape_.depth())
    throw std::out_of_range("leaves carry no label");
  return Permutation(shape_.child_count(v.size()));
}

void Portrait::set_label(const Vertex& v, Permutation p)
{
  if (!shape_.contains(v) || v.size() >= shape_.depth())
    throw std::out_of_range("vertex " + vertex_to_string(v) + " cannot carry a label");
  if (p.degree() != shape_.child_count(v.size()))
    throw DegreeMismatch("label degree differs from the number of children");
  if (p.is_identity())
    labels_.erase(v);
  else
    labels_[v] = std::move(p);
}

Vertex Portrait::apply(const Vertex& v) const
{
  if (!shape_.contains(v))
    throw std::out_of_range("vertex " + vertex_to_string(v) + " is not in the tree");
  Vertex image(v.size());
  Vertex prefix;
  prefix.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = labels_.find(prefix);
    image[i] = it == labels_.end() ? v[i] : it->second(v[i]);
    prefix.push_back(v[i]);
  }
  return image;
}

Vertex Portrait::apply_inverse(const Vertex& v) const
{
  if (!shape_.contains(v))
    throw std::out_of_range("vertex " + vertex_to_string(v) + " is not in the tree");
  Vertex pre;
  pre.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = labels_.find(pre);
    pre.push_back(it == labels_.end() ? v[i] : it->second.inverse()(v[i]));
  }
  return pre;
}

Portrait Portrait::inverse() const
{
  // (g^-1) @ g(u) = (g @ u)^-1
  Portrait out(shape_);
  for (const auto& [u, s] : labels_)
    out.labels_[apply(u)] = s.inverse();
  return out;
}

Portrait Portrait::truncated(std::size_t d) const
{
  Portrait out(shape_.truncated(d));
  for (const auto& [v, s] : labels_)
    if (v.size() < d)
      out.labels_.emplace(v, s);
  return out;
}

Permutation Portrait::to_leaf_permutation() const
{
  const std::size_t n = shape_.leaf_count();
  std::vector<Point> images(n);
  if (labels_.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      images[i] = static_cast<Point>(i);
    return Permutation(std::move(images));
  }
  for (std::size_t i = 0; i < n; ++i)
    images[i] = static_cast<Point>(shape_.leaf_index(apply(shape_.vertex_at(shape_.depth(), i))));
  return Permutation(std::move(images));
}

Portrait operator*(const Portrait& g, const Portrait& h)
{
  if (!(g.shape_ == h.shape_))
    throw DegreeMismatch("portraits live on different trees");
  std::set<Vertex> candidates;
  for (const auto& [v, s] : h.labels_)
    candidates.insert(v);
  for (const auto& [u, s] : g.labels_)
    candidates.insert(h.apply_inverse(u));
  Portrait out(g.shape_);
  for (const auto& v : candidates)
    out.set_label(v, g.label(h.apply(v)) * h.label(v));
  return out;
}

Portrait compose_portraits(const Portrait& g, const Portrait& h)
{
  return g * h;
}

Portrait invert_portrait(const Portrait& g)
{
  return g.inverse();
}

namespace {

/// First (level, block) where p splits a block of leaves, levels 1..depth-1.
std::optional<std::pair<std::size_t, std::size_t>> first_block_failure(const TreeShape& shape,
                                                                       const Permutation& p)
{
  for (std::size_t level = 1; level < shape.depth(); ++level) {
    const std::size_t size = shape.leaves_below(level);
    const std::size_t blocks = shape.level_size(level);
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t target = p(static_cast<Point>(b * size)) / size;
      for (std::size_t x = b * size + 1; x < (b + 1) * size; ++x)
        if (p(static_cast<Point>(x)) / size != target)
          return std::pair{level, b};
    }
  }
  return std::nullopt;
}

} // namespace

bool is_tree_automorphism(const TreeShape& shape, const Permutation& p)
{
  return p.degree() == shape.leaf_count() && !first_block_failure(shape, p);
}

Portrait from_leaf_permutation(const TreeShape& shape, const Permutation& p)
{
  if (p.degree() != shape.leaf_count())
    throw DegreeMismatch("leaf permutation degree " + std::to_string(p.degree()) +
                         " differs from the leaf count " + std::to_string(shape.leaf_count()));
  if (auto failure = first_block_failure(shape, p))
    throw NotAutomorphism("permutation splits the level-" + std::to_string(failure->first) +
                              " block " + std::to_string(failure->second + 1),
                          failure->first, failure->second);

  Portrait out(shape);
  for (std::size_t level = 0; level < shape.depth(); ++level) {
    const std::size_t k = shape.child_count(level);
    const std::size_t child_size = shape.leaves_below(level + 1);
    for (std::size_t j = 0; j < shape.level_size(level); ++j) {
      std::vector<Point> images(k);
      for (std::size_t x = 0; x < k; ++x) {
        const std::size_t child = j * k + x;
        images[x] = static_cast<Point>((p(static_cast<Point>(child * child_size)) / child_size) % k);
      }
      out.set_label(shape.vertex_at(level, j), Permutation(std::move(images)));
    }
  }
  return out;
}

Portrait rooted_automorphism(const TreeShape& shape, const Vertex& v, const Permutation& s)
{
  Portrait out(shape);
  out.set_label(v, s);
  return out;
}

Permutation rooted_leaf_permutation(std::size_t leaf_count, std::size_t first, std::size_t span,
                                    std::size_t stride, const Permutation& s)
{
  if (stride == 0 || span % stride != 0 || span / stride != s.degree() || first + span > leaf_count)
    throw DegreeMismatch("rooted permutation does not fit the given leaf range");
  std::vector<Point> images(leaf_count);
  for (std::size_t i = 0; i < leaf_count; ++i)
    images[i] = static_cast<Point>(i);
  for (std::size_t local = 0; local < span; ++local) {
    const std::size_t unit = local / stride;
    images[first + local] = static_cast<Point>(first + s(static_cast<Point>(unit)) * stride + local % stride);
  }
  return Permutation(std::move(images));
}

Permutation induced_on_level(const TreeShape& shape, const Permutation& leaf_permutation,
                             std::size_t level)
{
  if (leaf_permutation.degree() != shape.leaf_count())
    throw DegreeMismatch("leaf permutation degree differs from the leaf count");
  const std::size_t size = shape.leaves_below(level);
  std::vector<Point> images(shape.level_size(level));
  for (std::size_t j = 0; j < images.size(); ++j)
    images[j] = static_cast<Point>(leaf_permutation(static_cast<Point>(j * size)) / size);
  return Permutation(std::move(images));
}

nlohmann::json portrait_to_json(const Portrait& g)
{
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [v, s] : g.labels())
    labels[vertex_to_string(v)] = to_cycle_string(s);
  return {{"shape", g.shape().alphabet_sizes()}, {"labels", labels}};
}

Portrait portrait_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("shape") || !j.at("shape").is_array())
    throw std::invalid_argument("portrait JSON needs a \"shape\" array");
  Portrait out(TreeShape(j.at("shape").get<std::vector<std::size_t>>()));
  if (j.contains("labels")) {
    for (const auto& [key, value] : j.at("labels").items()) {
      const Vertex v = parse_vertex(key, out.shape());
      if (v.size() >= out.shape().depth())
        throw std::invalid_argument("leaf " + key + " cannot carry a label");
      out.set_label(v, parse_permutation(value.get<std::string>(), out.shape().child_count(v.size())));
    }
  }
  return out;
}

} // namespace wreathgen
