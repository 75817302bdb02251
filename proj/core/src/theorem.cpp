#include "wreathgen/theorem.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "wreathgen/errors.hpp"
#include "wreathgen/min_generators.hpp"
#include "wreathgen/tree_groups.hpp"

namespace wreathgen {

std::uint64_t nth_prime(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("primes are numbered from 1");
  std::uint64_t candidate = 1;
  while (n > 0) {
    ++candidate;
    if (is_prime(candidate))
      --n;
  }
  return candidate;
}

// ---------------------------------------------------------------------------
// SequenceSpec

SequenceSpec SequenceSpec::finite(std::vector<GroupSpec> levels)
{
  SequenceSpec s;
  s.prefix = std::move(levels);
  return s;
}

SequenceSpec SequenceSpec::periodic(std::vector<GroupSpec> period, std::vector<GroupSpec> prefix)
{
  if (period.empty())
    throw std::invalid_argument("a periodic tail needs at least one group");
  SequenceSpec s;
  s.prefix = std::move(prefix);
  s.tail = Tail::periodic;
  s.period = std::move(period);
  return s;
}

SequenceSpec SequenceSpec::named_family(std::string name, std::vector<GroupSpec> prefix,
                                        std::size_t start)
{
  if (name != "cyclic-nth-prime")
    throw std::invalid_argument("unsupported family '" + name + "' (expected cyclic-nth-prime)");
  if (start == 0)
    throw std::invalid_argument("family start index is 1-based");
  SequenceSpec s;
  s.prefix = std::move(prefix);
  s.tail = Tail::family;
  s.family = std::move(name);
  s.family_start = start;
  return s;
}

std::optional<std::size_t> SequenceSpec::length() const
{
  if (tail == Tail::none)
    return prefix.size();
  return std::nullopt;
}

GroupSpec SequenceSpec::level(std::size_t i) const
{
  if (i < prefix.size())
    return prefix[i];
  const std::size_t t = i - prefix.size();
  switch (tail) {
  case Tail::none:
    break;
  case Tail::periodic:
    return period[t % period.size()];
  case Tail::family:
    return GroupSpec::cyclic(static_cast<std::size_t>(nth_prime(family_start + t)));
  }
  throw std::out_of_range("sequence has only " + std::to_string(prefix.size()) + " levels");
}

std::vector<GroupSpec> SequenceSpec::levels(std::size_t count) const
{
  std::vector<GroupSpec> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(level(i));
  return out;
}

std::string SequenceSpec::description() const
{
  std::string out = sequence_name(prefix);
  auto append = [&](const std::string& part) {
    if (!out.empty())
      out += "; ";
    out += part;
  };
  if (tail == Tail::periodic)
    append("periodic(" + sequence_name(period) + ")");
  else if (tail == Tail::family)
    append(family + "(from p_" + std::to_string(family_start) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses

std::optional<WitnessData> find_orbit_stabilizer_witness(const PermGroup& derived)
{
  const std::size_t n = derived.degree();
  for (Point x = 0; x < n; ++x) {
    // Orbit of x with a transversal built from the generators.
    std::vector<std::optional<Permutation>> word(n);
    word[x] = Permutation(n);
    std::vector<Point> queue{x};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Point p = queue[head];
      for (const auto& g : derived.generators()) {
        const Point q = g(p);
        if (!word[q]) {
          word[q] = g * *word[p];
          queue.push_back(q);
        }
      }
    }
    if (queue.size() < 2)
      continue;
    std::sort(queue.begin(), queue.end());
    const PermGroup stab = point_stabilizer(derived, x);
    const auto strong = stab.strong_generators();
    for (Point y : queue) {
      if (y == x)
        continue;
      for (const auto& s : strong)
        if (s(y) != y)
          return WitnessData{x, y, *word[y], s};
    }
  }
  return std::nullopt;
}

bool is_valid_witness(const WitnessData& w, const PermGroup& derived)
{
  return w.tau(w.x) == w.y && w.pi(w.x) == w.x && w.pi(w.y) != w.y && derived.contains(w.tau) &&
         derived.contains(w.pi);
}

// ---------------------------------------------------------------------------
// Regrouping

namespace {

std::string block_name(const std::vector<GroupSpec>& members)
{
  if (members.size() == 1)
    return members.front().name();
  return "[" + sequence_name(members) + "]";
}

class BlockCache
{
public:
  explicit BlockCache(std::size_t leaf_cap) : leaf_cap_(leaf_cap) {}

  const BlockLevel& get(const std::vector<GroupSpec>& members)
  {
    const std::string name = block_name(members);
    auto it = cache_.find(name);
    if (it != cache_.end())
      return it->second;
    BlockLevel b;
    b.name = name;
    b.members = members;
    const WreathSequence seq = WreathSequence::from_specs(members);
    b.group = members.size() == 1 ? seq.groups().front() : iterated_wreath(seq, leaf_cap_);
    if (b.group.degree() > leaf_cap_)
      throw CapExceeded("block " + name + " has more than " + std::to_string(leaf_cap_) + " points");
    b.derived = derived_subgroup(b.group);
    b.witness = find_orbit_stabilizer_witness(b.derived);
    return cache_.emplace(name, std::move(b)).first->second;
  }

private:
  std::size_t leaf_cap_;
  std::map<std::string, BlockLevel> cache_;
};

std::vector<BlockLevel> blocks_of_width(const std::vector<GroupSpec>& levels, std::size_t width,
                                        BlockCache& cache)
{
  std::vector<BlockLevel> out;
  for (std::size_t start = 0; start + width <= levels.size(); start += width)
    out.push_back(cache.get(std::vector<GroupSpec>(levels.begin() + static_cast<std::ptrdiff_t>(start),
                                                   levels.begin() + static_cast<std::ptrdiff_t>(start + width))));
  return out;
}

/// `levels_for(w, reason)` yields the levels to cut into blocks of width w,
/// or nullopt with a reason.
RegroupResult regroup_impl(
    const std::function<std::optional<std::vector<GroupSpec>>(std::size_t, std::string&)>& levels_for,
    const RegroupOptions& options)
{
  if (options.max_block < 1)
    throw std::invalid_argument("max_block must be at least 1");
  RegroupResult result;
  BlockCache cache(options.leaf_cap);
  std::string failures;
  for (std::size_t w = 1; w <= options.max_block; w *= 2) {
    RegroupAttempt attempt;
    attempt.width = w;
    std::string reason;
    if (auto levels = levels_for(w, reason)) {
      try {
        auto blocks = blocks_of_width(*levels, w, cache);
        for (std::size_t j = 0; j < blocks.size() && reason.empty(); ++j) {
          const auto& b = blocks[j];
          if (b.derived.is_trivial())
            reason = "block " + std::to_string(j + 1) + " (" + b.name + ") is abelian";
          else if (!b.witness)
            reason = "the derived subgroup of block " + std::to_string(j + 1) + " (" + b.name +
                     ") has no orbit with two different point stabilizers";
        }
        if (reason.empty()) {
          attempt.succeeded = true;
          result.record.width = w;
          for (std::size_t j = 0; j < blocks.size(); ++j) {
            std::vector<std::size_t> members(w);
            std::iota(members.begin(), members.end(), j * w);
            result.record.blocks.push_back(std::move(members));
          }
          result.levels = std::move(blocks);
          result.record.attempts.push_back(attempt);
          return result;
        }
      } catch (const CapExceeded& e) {
        reason = std::string("cap exceeded: ") + e.what();
      }
    }
    attempt.reason = reason;
    failures += "\n  width " + std::to_string(w) + ": " + reason;
    result.record.attempts.push_back(attempt);
  }
  throw ConstructionError("no regrouping width up to " + std::to_string(options.max_block) +
                          " works:" + failures);
}

} // namespace

RegroupResult regroup_brackets(const SequenceSpec& spec, std::size_t blocks,
                               const RegroupOptions& options)
{
  if (blocks == 0)
    throw std::invalid_argument("at least one block is needed");
  return regroup_impl(
      [&](std::size_t w, std::string& reason) -> std::optional<std::vector<GroupSpec>> {
        const auto len = spec.length();
        if (len && *len < blocks * w) {
          reason = "needs " + std::to_string(blocks * w) + " levels, the sequence has " +
                   std::to_string(*len);
          return std::nullopt;
        }
        return spec.levels(blocks * w);
      },
      options);
}

RegroupResult regroup_brackets(const std::vector<GroupSpec>& levels, const RegroupOptions& options)
{
  if (levels.empty())
    throw std::invalid_argument("cannot regroup an empty sequence");
  return regroup_impl(
      [&](std::size_t w, std::string& reason) -> std::optional<std::vector<GroupSpec>> {
        if (levels.size() % w != 0) {
          reason = "length " + std::to_string(levels.size()) + " is not a multiple of the width";
          return std::nullopt;
        }
        return levels;
      },
      options);
}

std::vector<BlockLevel> regroup_with_width(const SequenceSpec& spec, std::size_t blocks,
                                           std::size_t width, std::size_t leaf_cap)
{
  BlockCache cache(leaf_cap);
  return blocks_of_width(spec.levels(blocks * width), width, cache);
}

// ---------------------------------------------------------------------------
// Slots and lifts

SlotAssignment coprime_slot_assignment(const std::vector<AbelianInvariants>& levels)
{
  SlotAssignment out;
  std::map<std::uint64_t, std::size_t> next_slot;
  for (const auto& inv : levels) {
    std::vector<std::size_t> slots;
    for (auto f : inv.factors()) {
      const std::size_t slot = next_slot[prime_of_power(f)]++;
      slots.push_back(slot);
      out.e = std::max(out.e, slot + 1);
    }
    out.factor_slot.push_back(std::move(slots));
  }
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const auto& factors = levels[n].factors();
    std::vector<std::vector<std::uint64_t>> coords(out.e, std::vector<std::uint64_t>(factors.size(), 0));
    std::vector<std::uint64_t> orders(out.e, 1);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const std::size_t slot = out.factor_slot[n][j];
      coords[slot][j] = 1;
      orders[slot] *= factors[j];
    }
    out.coordinates.push_back(std::move(coords));
    out.orders.push_back(std::move(orders));
  }
  for (std::size_t i = 0; i < out.e; ++i)
    for (std::size_t a = 0; a < levels.size(); ++a)
      for (std::size_t b = a + 1; b < levels.size(); ++b)
        if (std::gcd(out.orders[a][i], out.orders[b][i]) != 1)
          throw std::logic_error("slot assignment produced non-coprime orders");
  return out;
}

LiftResult lift_and_complete(const PermGroup& group, const Abelianization& ab,
                             const std::vector<std::vector<std::uint64_t>>& targets,
                             std::mt19937_64& rng, std::size_t attempts)
{
  LiftResult r;
  for (const auto& t : targets)
    r.generators.push_back(ab.preimage(t));
  r.lifted = r.generators.size();

  const std::size_t lower = generator_lower_bound(group, ab.invariants());
  const std::size_t start = lower > r.lifted ? lower - r.lifted : 0;
  for (std::size_t c = start; c <= start + 2; ++c) {
    const std::size_t tries = c == 0 ? 1 : attempts;
    for (std::size_t a = 0; a < tries; ++a) {
      std::vector<Permutation> candidate = r.generators;
      for (std::size_t i = 0; i < c; ++i)
        candidate.push_back(group.random_element(rng));
      if (generates(candidate, group)) {
        r.generators = std::move(candidate);
        r.completion = c;
        return r;
      }
    }
  }

  // Greedy: keep random elements that enlarge the subgroup.
  ChainOptions bound;
  bound.order_bound = group.order();
  PermGroup reached = PermGroup::generate(r.generators, group.degree(), bound);
  for (std::size_t a = 0; a < 4 * attempts && reached.order() != group.order(); ++a) {
    Permutation g = group.random_element(rng);
    if (reached.contains(g))
      continue;
    r.generators.push_back(std::move(g));
    ++r.completion;
    reached = PermGroup::generate(r.generators, group.degree(), bound);
  }
  if (reached.order() != group.order())
    throw ConstructionError("completion stopped at a subgroup of order " + to_decimal(reached.order()) +
                            " of " + to_decimal(group.order()));
  return r;
}

std::vector<Permutation> lift_and_complete(const PermGroup& group, const Abelianization& ab,
                                           const std::vector<std::vector<std::uint64_t>>& targets,
                                           std::size_t m, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  LiftResult r = lift_and_complete(group, ab, targets, rng);
  if (r.generators.size() > m)
    throw ConstructionError("needs " + std::to_string(r.generators.size()) + " generators, m = " +
                            std::to_string(m));
  while (r.generators.size() < m)
    r.generators.push_back(r.generators.empty() ? Permutation(group.degree()) : r.generators.back());
  return r.generators;
}

// ---------------------------------------------------------------------------
// Directed generators

Vertex spine_vertex(const std::vector<WitnessData>& witnesses, std::size_t k, bool use_y_last)
{
  if (k == 0 || k > witnesses.size())
    throw std::out_of_range("spine length out of range");
  Vertex v;
  for (std::size_t j = 0; j + 1 < k; ++j)
    v.push_back(witnesses[j].y);
  v.push_back(use_y_last ? witnesses[k - 1].y : witnesses[k - 1].x);
  return v;
}

std::vector<Portrait> build_directed_generators(const TreeShape& shape,
                                                const std::vector<WitnessData>& witnesses,
                                                const std::vector<std::vector<Permutation>>& lifted)
{
  const std::size_t m = lifted.empty() ? 0 : lifted.front().size();
  std::vector<Portrait> out(m, Portrait(shape));
  for (std::size_t k = 1; k < shape.depth(); ++k) {
    const Vertex v = spine_vertex(witnesses, k);
    for (std::size_t i = 0; i < m; ++i)
      out[i].set_label(v, lifted.at(k).at(i));
  }
  return out;
}

bool has_spine_structure(const Portrait& g, std::size_t i, const std::vector<WitnessData>& witnesses,
                         const std::vector<std::vector<Permutation>>& lifted)
{
  for (const auto& [v, s] : g.labels()) {
    const std::size_t k = v.size();
    if (k == 0 || k >= lifted.size() || v != spine_vertex(witnesses, k) || s != lifted[k].at(i))
      return false;
  }
  for (std::size_t k = 1; k < g.shape().depth(); ++k)
    if (!lifted[k].at(i).is_identity() && !g.labels().contains(spine_vertex(witnesses, k)))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Assembly and verification

namespace {

struct AssemblyInput
{
  std::string builder;
  std::string sequence;
  RegroupResult regroup;
  /// Same generators on every level instead of slot lifts.
  std::optional<std::vector<Permutation>> constant_lifts;
  /// Verification depth on the original levels (0 = everything).
  std::size_t fine_depth = 0;
  std::vector<Portrait> extra_generators;
};

ConstructionResult assemble(AssemblyInput in, const ConstructionOptions& options)
{
  ConstructionResult r;
  r.builder = std::move(in.builder);
  r.sequence = std::move(in.sequence);
  r.regroup = std::move(in.regroup.record);
  r.levels = std::move(in.regroup.levels);
  r.depth = r.levels.size();
  r.seed = options.seed;
  r.leaf_cap = options.regroup.leaf_cap;

  std::vector<std::size_t> sizes;
  for (const auto& b : r.levels)
    sizes.push_back(b.group.degree());
  r.shape = TreeShape(sizes);
  if (r.shape.leaf_count() > options.regroup.leaf_cap)
    throw CapExceeded("tree has " + std::to_string(r.shape.leaf_count()) + " leaves, cap is " +
                      std::to_string(options.regroup.leaf_cap));

  std::mt19937_64 rng(options.seed);
  if (in.constant_lifts) {
    r.m = in.constant_lifts->size();
    r.lifted.assign(r.depth, *in.constant_lifts);
    r.completion.assign(r.depth, 0);
    for (const auto& b : r.levels)
      r.abelianizations.push_back(abelianization(b.group, b.derived, options.index_cap).invariants());
  } else {
    std::map<std::string, Abelianization> abs;
    for (const auto& b : r.levels) {
      auto it = abs.find(b.name);
      if (it == abs.end())
        it = abs.emplace(b.name, abelianization(b.group, b.derived, options.index_cap)).first;
      r.abelianizations.push_back(it->second.invariants());
    }
    r.slots = coprime_slot_assignment(r.abelianizations);
    r.e = r.slots.e;

    std::map<std::pair<std::string, std::vector<std::vector<std::uint64_t>>>, LiftResult> lifts;
    for (std::size_t k = 0; k < r.depth; ++k) {
      const auto key = std::pair{r.levels[k].name, r.slots.coordinates[k]};
      auto it = lifts.find(key);
      if (it == lifts.end())
        it = lifts.emplace(key, lift_and_complete(r.levels[k].group, abs.at(r.levels[k].name),
                                                  r.slots.coordinates[k], rng, options.completion_attempts))
                 .first;
      r.lifted.push_back(it->second.generators);
      r.completion.push_back(it->second.completion);
    }
    r.m = r.e + *std::max_element(r.completion.begin(), r.completion.end());
    for (std::size_t k = 0; k < r.depth; ++k)
      while (r.lifted[k].size() < r.m)
        r.lifted[k].push_back(r.lifted[k].back());
  }

  for (std::size_t i = 0; i < r.m; ++i)
    r.rooted_generators.push_back(rooted_automorphism(r.shape, {}, r.lifted[0][i]));

  std::vector<WitnessData> witnesses;
  for (const auto& b : r.levels)
    witnesses.push_back(b.witness.value_or(WitnessData{}));
  r.directed_generators = build_directed_generators(r.shape, witnesses, r.lifted);
  if (options.drop_directed) {
    if (*options.drop_directed >= r.directed_generators.size())
      throw std::out_of_range("no directed generator " + std::to_string(*options.drop_directed + 1));
    r.dropped_directed = options.drop_directed;
    r.directed_generators.erase(r.directed_generators.begin() +
                                static_cast<std::ptrdiff_t>(*options.drop_directed));
  }
  r.extra_generators = std::move(in.extra_generators);

  // Verification tree: the original levels, possibly cut below a block boundary.
  std::vector<GroupSpec> fine;
  for (const auto& b : r.levels)
    fine.insert(fine.end(), b.members.begin(), b.members.end());
  const std::size_t width = r.regroup.width;
  const std::size_t fine_depth = in.fine_depth == 0 ? fine.size() : in.fine_depth;
  if (fine_depth > fine.size())
    throw std::logic_error("verification depth exceeds the constructed depth");
  r.verification_levels.assign(fine.begin(), fine.begin() + static_cast<std::ptrdiff_t>(fine_depth));

  std::vector<std::size_t> fine_sizes;
  for (const auto& s : fine)
    fine_sizes.push_back(s.degree);
  const TreeShape full(fine_sizes);
  const std::size_t q = full.leaves_below(fine_depth); // full leaves per verification leaf

  auto project = [&](const Permutation& leaf_perm) {
    return q == 1 ? leaf_perm : induced_on_level(full, leaf_perm, fine_depth);
  };
  for (const auto& g : r.rooted_generators)
    r.verification_generators.push_back(project(g.to_leaf_permutation()));
  for (const auto& g : r.directed_generators)
    r.verification_generators.push_back(project(g.to_leaf_permutation()));
  for (const auto& g : r.extra_generators)
    r.verification_generators.push_back(g.to_leaf_permutation());

  auto add_check = [&](const Vertex& v, std::string kind) {
    const std::size_t k = v.size();
    if ((k + 1) * width > fine_depth)
      return;
    RootedCheck c;
    c.vertex = vertex_to_string(v);
    c.kind = std::move(kind);
    c.level = k;
    c.first = r.shape.first_leaf(v) / q;
    c.span = r.shape.leaves_below(k) / q;
    c.stride = r.shape.leaves_below(k + 1) / q;
    c.group = r.levels[k].derived;
    c.group_name = r.levels[k].name + "'";
    r.checks.push_back(std::move(c));
  };
  add_check({}, "root");
  for (std::size_t k = 1; k < r.depth; ++k) {
    add_check(spine_vertex(witnesses, k), "x-spine");
    add_check(spine_vertex(witnesses, k, true), "y-spine");
  }

  if (options.verify)
    r.verification = verify_dense(r);
  return r;
}

} // namespace

bool VerificationReport::passed() const
{
  if (!dense || !level_transitive || !generators_in_reference)
    return false;
  return std::all_of(rooted_checks.begin(), rooted_checks.end(), [](const auto& c) { return c.passed; });
}

VerificationReport verify_dense(const ConstructionResult& c)
{
  const WreathSequence seq = WreathSequence::from_specs(c.verification_levels);
  const TreeShape shape = seq.shape();
  const PermGroup reference = iterated_wreath(seq, c.leaf_cap);

  VerificationReport rep;
  rep.leaves = shape.leaf_count();
  rep.order_expected = expected_order(seq);
  rep.order_reference = reference.order();
  rep.generators_in_reference =
      std::all_of(c.verification_generators.begin(), c.verification_generators.end(),
                  [&](const Permutation& g) { return reference.contains(g); });

  // Valid bound: the generators lie in the reference group.
  ChainOptions options;
  if (rep.generators_in_reference)
    options.order_bound = reference.order();
  const PermGroup g = PermGroup::generate(c.verification_generators, rep.leaves, options);
  rep.order_actual = g.order();
  rep.dense = rep.generators_in_reference && rep.order_actual == rep.order_reference &&
              rep.order_reference == rep.order_expected;
  rep.level_orbit_counts = level_orbit_counts(g, shape);
  rep.level_transitive = std::all_of(rep.level_orbit_counts.begin(), rep.level_orbit_counts.end(),
                                     [](std::size_t n) { return n == 1; });

  for (const auto& check : c.checks) {
    std::vector<Point> outside;
    for (std::size_t x = 0; x < rep.leaves; ++x)
      if (x < check.first || x >= check.first + check.span)
        outside.push_back(static_cast<Point>(x));
    const PermGroup rigid = pointwise_stabilizer(g, outside);
    RootedCheckResult res;
    res.vertex = check.vertex;
    res.kind = check.kind;
    res.level = check.level;
    res.group_name = check.group_name;
    res.generators_tested = check.group.generators().size();
    res.rigid_stabilizer_order = rigid.order();
    res.passed = contains_rooted_copy(rigid, check.first, check.span, check.stride, check.group);
    rep.rooted_checks.push_back(std::move(res));
  }
  return rep;
}

ConstructionResult construct_dense_subgroup(const SequenceSpec& spec, std::size_t depth,
                                            const ConstructionOptions& options)
{
  if (depth == 0)
    throw std::invalid_argument("depth must be at least 1");
  AssemblyInput in;
  in.builder = "theorem";
  in.sequence = spec.description();
  in.regroup = regroup_brackets(spec, depth, options.regroup);
  return assemble(std::move(in), options);
}

namespace {

/// Blocks covering n levels of the constant sequence H, H, ...
RegroupResult constant_blocks(const GroupSpec& h, std::size_t n, const RegroupOptions& options)
{
  const SequenceSpec spec = SequenceSpec::periodic({h});
  const std::size_t width = regroup_brackets(spec, 1, options).record.width;
  return regroup_brackets(spec, (n + width - 1) / width, options);
}

} // namespace

ConstructionResult build_wreath_power_generators(const GroupSpec& h, std::size_t n,
                                                 const ConstructionOptions& options)
{
  if (n == 0)
    throw std::invalid_argument("n must be at least 1");
  if (!is_perfect(realize(h)))
    throw ConstructionError(h.name() + " is not perfect; use the non-perfect builder");
  AssemblyInput in;
  in.builder = "wreath-power";
  in.sequence = "periodic(" + h.name() + ")";
  in.regroup = constant_blocks(h, n, options.regroup);
  in.fine_depth = n;
  return assemble(std::move(in), options);
}

ConstructionResult build_nonperfect_upper(const GroupSpec& h, std::size_t n,
                                          const ConstructionOptions& options)
{
  if (n == 0)
    throw std::invalid_argument("n must be at least 1");
  const PermGroup group = realize(h);
  if (is_perfect(group))
    throw ConstructionError(h.name() + " is perfect; use the wreath-power builder");

  AssemblyInput in;
  in.builder = "nonperfect";
  in.sequence = "periodic(" + h.name() + ")";
  in.regroup = constant_blocks(h, n, options.regroup);
  in.fine_depth = n;

  MinGeneratorsOptions mg;
  mg.seed = options.seed;
  mg.index_cap = options.index_cap;
  in.constant_lifts = min_generators(in.regroup.levels.front().group, mg).witness;

  // Preimages of a minimal generating set of H/H': generator t combines the
  // t-th factor of every prime.
  const Abelianization ab = abelianization(group, options.index_cap);
  const auto& factors = ab.invariants().factors();
  const std::size_t rank = ab.invariants().d();
  std::vector<Permutation> bs;
  for (std::size_t t = 0; t < rank; ++t) {
    std::vector<std::uint64_t> coords(factors.size(), 0);
    std::map<std::uint64_t, std::size_t> seen;
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (seen[prime_of_power(factors[j])]++ == t)
        coords[j] = 1;
    bs.push_back(ab.preimage(coords));
  }

  // b^(i) carries b at the level-i vertex y...yx with x, y the first two letters.
  const TreeShape fine(std::vector<std::size_t>(n, h.degree));
  for (const auto& b : bs) {
    for (std::size_t i = 1; i < n; ++i) {
      Vertex v(i - 1, 1);
      v.push_back(0);
      in.extra_generators.push_back(rooted_automorphism(fine, v, b));
    }
  }

  ConstructionResult r = assemble(std::move(in), options);
  r.abelian_rank = rank;
  return r;
}

} // namespace wreathgen
