#include "wreathgen/min_generators.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "wreathgen/errors.hpp"

namespace wreathgen {

namespace {

bool is_prime_power_order(const BigInt& order)
{
  if (order < 2)
    return false;
  BigInt n = order;
  BigInt p = 2;
  while (n % p != 0)
    ++p;
  while (n % p == 0)
    n /= p;
  return n == 1;
}

/// Elements indexed in chain order with lazily built right-multiplication columns.
class ElementTable
{
public:
  explicit ElementTable(std::vector<Permutation> elements) : elements_(std::move(elements))
  {
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      index_.emplace(elements_[i], i);
    columns_.resize(elements_.size());
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  std::size_t identity() const { return index_.at(Permutation(elements_[0].degree())); }

  const std::vector<std::uint32_t>& column(std::size_t j)
  {
    auto& col = columns_[j];
    if (col.empty()) {
      col.resize(elements_.size());
      for (std::size_t i = 0; i < elements_.size(); ++i)
        col[i] = static_cast<std::uint32_t>(index_.at(elements_[i] * elements_[j]));
    }
    return col;
  }

  /// Closure of the identity under right multiplication by the tuple.
  bool generates(const std::vector<std::size_t>& tuple)
  {
    std::vector<const std::vector<std::uint32_t>*> cols;
    for (auto j : tuple)
      cols.push_back(&column(j));
    std::vector<bool> seen(elements_.size(), false);
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(identity())};
    seen[queue[0]] = true;
    const std::size_t half = elements_.size() / 2;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto* col : cols) {
        const std::uint32_t y = (*col)[queue[head]];
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
          // A proper subgroup has at most half the elements.
          if (queue.size() > half)
            return true;
        }
      }
    }
    return queue.size() == elements_.size();
  }

private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t> index_;
  std::vector<std::vector<std::uint32_t>> columns_;
};

bool next_combination(std::vector<std::size_t>& comb, std::size_t n)
{
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j)
        comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

MinGeneratorsResult exhaustive(const PermGroup& group, std::size_t lower, std::size_t cap)
{
  ElementTable table(group.elements(cap));
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (!table.element(i).is_identity())
      candidates.push_back(i);

  for (std::size_t k = std::max<std::size_t>(lower, 1); k <= candidates.size(); ++k) {
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i)
      comb[i] = i;
    do {
      std::vector<std::size_t> tuple;
      for (auto c : comb)
        tuple.push_back(candidates[c]);
      if (table.generates(tuple)) {
        MinGeneratorsResult r;
        r.lower = r.upper = k;
        r.certified = true;
        r.method = "exhaustive";
        for (auto t : tuple)
          r.witness.push_back(table.element(t));
        return r;
      }
    } while (next_combination(comb, candidates.size()));
  }
  throw std::logic_error("exhaustive search found no generating tuple");
}

} // namespace

std::size_t generator_lower_bound(const PermGroup& group, const AbelianInvariants& abelian)
{
  if (group.is_trivial())
    return 0;
  std::size_t lower = std::max<std::size_t>(abelian.d(), 1);
  const bool abelian_group = abelian.order() == group.order();
  const bool cyclic = abelian_group && abelian.d() <= 1;
  if (!cyclic)
    lower = std::max<std::size_t>(lower, 2);
  return lower;
}

bool generates(const std::vector<Permutation>& elements, const PermGroup& group)
{
  ChainOptions options;
  options.order_bound = group.order();
  return PermGroup::generate(elements, group.degree(), options).order() == group.order();
}

MinGeneratorsResult min_generators(const PermGroup& group, const MinGeneratorsOptions& options)
{
  if (group.is_trivial()) {
    MinGeneratorsResult r;
    r.certified = true;
    r.method = "trivial";
    return r;
  }

  GenerationStrategy strategy = options.strategy;
  if (strategy == GenerationStrategy::automatic)
    strategy = group.order() <= options.order_cap ? GenerationStrategy::exhaustive
                                                  : GenerationStrategy::certified_search;

  const Abelianization ab = abelianization(group, options.index_cap);
  const std::size_t lower = generator_lower_bound(group, ab.invariants());

  if (strategy == GenerationStrategy::exhaustive)
    return exhaustive(group, lower, options.order_cap);

  MinGeneratorsResult r;
  r.lower = lower;

  if (is_prime_power_order(group.order())) {
    // Burnside basis theorem: d(G) = d(G/Phi(G)) and Phi(G) = G'G^p, so lifts
    // of a basis of G/G' generate G.
    r.upper = lower;
    r.certified = true;
    r.method = "p-group";
    r.witness = ab.factor_generators();
    if (r.witness.size() != lower || !generates(r.witness, group))
      throw std::logic_error("Burnside basis lift failed to generate a p-group");
    return r;
  }

  std::vector<Permutation> fallback;
  for (const auto& g : group.generators())
    if (!g.is_identity())
      fallback.push_back(g);
  r.upper = fallback.size();
  r.witness = fallback;

  std::mt19937_64 rng(options.seed);
  for (std::size_t k = lower; k < r.upper; ++k) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < options.attempts_per_size && !found; ++attempt) {
      std::vector<Permutation> tuple;
      for (std::size_t i = 0; i < k; ++i)
        tuple.push_back(group.random_element(rng));
      if (generates(tuple, group)) {
        r.upper = k;
        r.witness = std::move(tuple);
        found = true;
      }
    }
    if (found)
      break;
  }
  r.certified = r.upper == r.lower;
  r.method = r.certified ? "bounds-meet" : "interval";
  return r;
}

} // namespace wreathgen
