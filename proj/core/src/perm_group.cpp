#include "wreathgen/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "wreathgen/errors.hpp"

namespace wreathgen {

namespace {

/// Incremental deterministic Schreier-Sims. Levels only ever grow: orbits and
/// transversals are extended, never rebuilt, so the per-point count of already
/// verified Schreier generators stays valid across additions.
class ChainBuilder
{
public:
  ChainBuilder(std::size_t degree, std::optional<BigInt> bound)
    : degree_(degree), bound_(std::move(bound))
  {}

  void add_base_point(Point b)
  {
    ChainLevel level;
    level.base = b;
    level.orbit = {b};
    level.orbit_index.assign(degree_, -1);
    level.orbit_index[b] = 0;
    level.transversal.emplace_back(degree_);
    level.transversal_inv.emplace_back(degree_);
    levels_.push_back(std::move(level));
    checked_.emplace_back(1, 0);
  }

  bool contains(const Permutation& p) const
  {
    auto [residue, level] = sift(p, 0);
    return residue.is_identity();
  }

  /// Adds `g` to the generating set and restores completeness.
  void add_generator(const Permutation& g)
  {
    if (g.is_identity() || done_)
      return;
    std::size_t depth = 0;
    while (depth < levels_.size() && g(levels_[depth].base) == levels_[depth].base)
      ++depth;
    if (depth == levels_.size())
      add_base_point(*g.first_moved());
    for (std::size_t l = 0; l <= depth; ++l)
      add_to_level(l, g);
    if (reached_bound())
      return;
    complete(depth);
  }

  bool done() const noexcept { return done_; }

  BigInt order() const
  {
    BigInt result = 1;
    for (const auto& level : levels_)
      result *= level.orbit.size();
    return result;
  }

  std::vector<ChainLevel> release() { return std::move(levels_); }

  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start) const
  {
    std::vector<Point> buffer(degree_);
    for (std::size_t l = start; l < levels_.size(); ++l) {
      const ChainLevel& level = levels_[l];
      const std::int32_t idx = level.orbit_index[g(level.base)];
      if (idx < 0)
        return {std::move(g), l};
      if (idx == 0)
        continue;
      const auto inv = level.transversal_inv[static_cast<std::size_t>(idx)].images();
      const auto cur = g.images();
      for (std::size_t x = 0; x < degree_; ++x)
        buffer[x] = inv[cur[x]];
      g = Permutation(buffer);
    }
    return {std::move(g), levels_.size()};
  }

private:
  bool reached_bound()
  {
    if (bound_ && order() == *bound_)
      done_ = true;
    return done_;
  }

  void add_to_level(std::size_t l, const Permutation& g)
  {
    ChainLevel& level = levels_[l];
    const std::size_t first_new_gen = level.generators.size();
    level.generators.push_back(g);
    const std::size_t old_size = level.orbit.size();
    for (std::size_t idx = 0; idx < level.orbit.size(); ++idx) {
      const std::size_t gfirst = idx < old_size ? first_new_gen : 0;
      for (std::size_t gi = gfirst; gi < level.generators.size(); ++gi) {
        const Point y = level.generators[gi](level.orbit[idx]);
        if (level.orbit_index[y] >= 0)
          continue;
        level.orbit_index[y] = static_cast<std::int32_t>(level.orbit.size());
        level.orbit.push_back(y);
        Permutation u = level.generators[gi] * level.transversal[idx];
        level.transversal_inv.push_back(u.inverse());
        level.transversal.push_back(std::move(u));
      }
    }
    checked_[l].resize(level.orbit.size(), 0);
  }

  void complete(std::size_t start)
  {
    auto i = static_cast<std::ptrdiff_t>(start);
    std::vector<Point> h(degree_);
    while (i >= 0) {
      const auto li = static_cast<std::size_t>(i);
      bool restarted = false;
      for (std::size_t idx = 0; idx < levels_[li].orbit.size() && !restarted; ++idx) {
        while (checked_[li][idx] < levels_[li].generators.size()) {
          const ChainLevel& level = levels_[li];
          const std::size_t s_idx = checked_[li][idx]++;
          const Permutation& s = level.generators[s_idx];
          const Point beta = level.orbit[idx];
          const auto target = static_cast<std::size_t>(level.orbit_index[s(beta)]);
          const auto u = level.transversal[idx].images();
          const auto uinv = level.transversal_inv[target].images();
          for (std::size_t x = 0; x < degree_; ++x)
            h[x] = uinv[s(u[x])];
          auto [residue, j] = sift(Permutation(h), li + 1);
          if (residue.is_identity())
            continue;
          if (j == levels_.size())
            add_base_point(*residue.first_moved());
          for (std::size_t l = li + 1; l <= j; ++l)
            add_to_level(l, residue);
          if (reached_bound())
            return;
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
          break;
        }
      }
      if (!restarted)
        --i;
    }
  }

  std::size_t degree_;
  std::optional<BigInt> bound_;
  bool done_ = false;
  std::vector<ChainLevel> levels_;
  std::vector<std::vector<std::size_t>> checked_;
};

void check_degree(const Permutation& p, std::size_t degree)
{
  if (p.degree() != degree)
    throw DegreeMismatch("permutation of degree " + std::to_string(p.degree()) +
                         " used with a group of degree " + std::to_string(degree));
}

std::vector<Permutation> dedupe_nontrivial(const std::vector<Permutation>& perms)
{
  std::vector<Permutation> out;
  std::unordered_set<Permutation> seen;
  for (const auto& p : perms)
    if (!p.is_identity() && seen.insert(p).second)
      out.push_back(p);
  return out;
}

} // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators,
                     std::shared_ptr<const std::vector<ChainLevel>> levels)
  : degree_(degree), generators_(std::move(generators)), levels_(std::move(levels))
{
  order_ = 1;
  for (const auto& level : *levels_)
    order_ *= level.orbit.size();
}

PermGroup PermGroup::generate(std::vector<Permutation> generators, std::size_t degree,
                              const ChainOptions& options)
{
  if (degree == 0)
    throw std::invalid_argument("permutation groups need degree >= 1");
  for (const auto& g : generators)
    check_degree(g, degree);
  ChainBuilder builder(degree, options.order_bound);
  for (Point b : options.base_prefix) {
    if (b >= degree)
      throw std::out_of_range("base point out of range");
    builder.add_base_point(b);
  }
  for (const auto& g : dedupe_nontrivial(generators))
    builder.add_generator(g);
  return PermGroup(degree, std::move(generators),
                   std::make_shared<const std::vector<ChainLevel>>(builder.release()));
}

PermGroup PermGroup::trivial(std::size_t degree) { return generate({}, degree); }

std::vector<Point> PermGroup::base() const
{
  std::vector<Point> out;
  for (const auto& level : *levels_)
    out.push_back(level.base);
  return out;
}

std::vector<Permutation> PermGroup::strong_generators() const
{
  std::vector<Permutation> all;
  for (const auto& level : *levels_)
    all.insert(all.end(), level.generators.begin(), level.generators.end());
  return dedupe_nontrivial(all);
}

std::pair<Permutation, std::size_t> PermGroup::sift(Permutation p, std::size_t start_level) const
{
  check_degree(p, degree_);
  const auto& levels = *levels_;
  for (std::size_t l = start_level; l < levels.size(); ++l) {
    const std::int32_t idx = levels[l].orbit_index[p(levels[l].base)];
    if (idx < 0)
      return {std::move(p), l};
    if (idx != 0)
      p = levels[l].transversal_inv[static_cast<std::size_t>(idx)] * p;
  }
  return {std::move(p), levels.size()};
}

bool PermGroup::contains(const Permutation& p) const
{
  return sift(p).first.is_identity();
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const
{
  Permutation g(degree_);
  for (const auto& level : *levels_) {
    std::uniform_int_distribution<std::size_t> pick(0, level.orbit.size() - 1);
    g = g * level.transversal[pick(rng)];
  }
  return g;
}

std::vector<Permutation> PermGroup::elements(std::size_t cap) const
{
  if (order_ > cap)
    throw CapExceeded("group of order " + to_decimal(order_) + " exceeds the element cap " +
                      std::to_string(cap));
  std::vector<Permutation> out{Permutation(degree_)};
  // g = u_0 u_1 ... u_k; extend from the deepest level upwards.
  const auto& levels = *levels_;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    std::vector<Permutation> next;
    next.reserve(out.size() * it->transversal.size());
    for (const auto& u : it->transversal)
      for (const auto& rest : out)
        next.push_back(u * rest);
    out = std::move(next);
  }
  return out;
}

std::vector<Point> orbit(const PermGroup& group, Point point)
{
  std::vector<bool> seen(group.degree(), false);
  std::vector<Point> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : group.generators()) {
      const Point y = g(out[i]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

std::vector<std::vector<Point>> orbits(const PermGroup& group)
{
  std::vector<std::vector<Point>> out;
  std::vector<bool> assigned(group.degree(), false);
  for (Point x = 0; x < group.degree(); ++x) {
    if (assigned[x])
      continue;
    auto o = orbit(group, x);
    for (Point y : o)
      assigned[y] = true;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

bool is_transitive(const PermGroup& group)
{
  return orbit(group, 0).size() == group.degree();
}

PermGroup point_stabilizer(const PermGroup& group, Point point)
{
  const Point points[] = {point};
  return pointwise_stabilizer(group, points);
}

PermGroup pointwise_stabilizer(const PermGroup& group, std::span<const Point> points)
{
  std::vector<Point> prefix;
  std::vector<bool> seen(group.degree(), false);
  for (Point p : points) {
    if (p >= group.degree())
      throw std::out_of_range("stabilized point out of range");
    if (!seen[p]) {
      seen[p] = true;
      prefix.push_back(p);
    }
  }
  ChainOptions options;
  options.base_prefix = prefix;
  options.order_bound = group.order();
  const PermGroup rebased = PermGroup::generate(group.strong_generators(), group.degree(), options);

  const auto& levels = rebased.chain();
  std::vector<ChainLevel> tail(levels.begin() + static_cast<std::ptrdiff_t>(prefix.size()),
                               levels.end());
  std::vector<Permutation> gens;
  for (const auto& level : tail)
    gens.insert(gens.end(), level.generators.begin(), level.generators.end());
  return PermGroup(group.degree(), dedupe_nontrivial(gens),
                   std::make_shared<const std::vector<ChainLevel>>(std::move(tail)));
}

PermGroup normal_closure(const PermGroup& group, std::vector<Permutation> generators)
{
  for (const auto& g : generators)
    check_degree(g, group.degree());
  ChainBuilder builder(group.degree(), group.order());
  std::vector<Permutation> closure_gens;
  std::deque<Permutation> queue;
  auto offer = [&](const Permutation& p) {
    if (builder.done() || builder.contains(p))
      return;
    builder.add_generator(p);
    closure_gens.push_back(p);
    queue.push_back(p);
  };
  for (const auto& g : generators)
    offer(g);
  while (!queue.empty() && !builder.done()) {
    const Permutation n = queue.front();
    queue.pop_front();
    for (const auto& g : group.generators())
      offer(conjugate(n, g));
  }
  return PermGroup(group.degree(), std::move(closure_gens),
                   std::make_shared<const std::vector<ChainLevel>>(builder.release()));
}

PermGroup derived_subgroup(const PermGroup& group)
{
  const auto& gens = group.generators();
  std::vector<Permutation> commutators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      commutators.push_back(commutator(gens[i], gens[j]));
  return normal_closure(group, dedupe_nontrivial(commutators));
}

bool is_subgroup(const PermGroup& sub, const PermGroup& group)
{
  return std::all_of(sub.generators().begin(), sub.generators().end(),
                     [&](const Permutation& g) { return group.contains(g); });
}

bool same_group(const PermGroup& a, const PermGroup& b)
{
  return a.degree() == b.degree() && a.order() == b.order() && is_subgroup(a, b) &&
         is_subgroup(b, a);
}

bool is_abelian(const PermGroup& group)
{
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i])
        return false;
  return true;
}

bool is_perfect(const PermGroup& group)
{
  return derived_subgroup(group).order() == group.order();
}

bool is_solvable(const PermGroup& group)
{
  PermGroup current = group;
  while (!current.is_trivial()) {
    PermGroup next = derived_subgroup(current);
    if (next.order() == current.order())
      return false;
    current = std::move(next);
  }
  return true;
}

} // namespace wreathgen
