#include "wreathgen/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wreathgen/errors.hpp"

namespace wreathgen {

namespace {
__extension__ typedef __int128 Wide;
} // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e != 0)
      out.emplace_back(p, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  const auto f = factorize(n);
  return f.size() == 1 && f[0].second == 1;
}

std::uint64_t prime_of_power(std::uint64_t n)
{
  if (n < 2)
    return 0;
  const auto f = factorize(n);
  return f.size() == 1 ? f[0].first : 0;
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(const std::vector<std::uint64_t>& orders)
{
  AbelianInvariants out;
  for (std::uint64_t n : orders) {
    if (n == 0)
      throw std::invalid_argument("cyclic order must be positive");
    for (auto [p, e] : factorize(n)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i)
        q *= p;
      out.factors_.push_back(q);
    }
  }
  std::sort(out.factors_.begin(), out.factors_.end(), [](std::uint64_t a, std::uint64_t b) {
    const auto pa = prime_of_power(a);
    const auto pb = prime_of_power(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

BigInt AbelianInvariants::order() const
{
  BigInt n = 1;
  for (auto q : factors_)
    n *= q;
  return n;
}

std::size_t AbelianInvariants::rank(std::uint64_t p) const
{
  return static_cast<std::size_t>(std::count_if(
    factors_.begin(), factors_.end(), [p](std::uint64_t q) { return prime_of_power(q) == p; }));
}

std::size_t AbelianInvariants::d() const
{
  std::size_t best = 0;
  for (auto p : primes())
    best = std::max(best, rank(p));
  return best;
}

std::vector<std::uint64_t> AbelianInvariants::primes() const
{
  std::vector<std::uint64_t> out;
  for (auto q : factors_) {
    const auto p = prime_of_power(q);
    if (out.empty() || out.back() != p)
      out.push_back(p);
  }
  return out;
}

AbelianInvariants AbelianInvariants::merged(const AbelianInvariants& other) const
{
  std::vector<std::uint64_t> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic_orders(all);
}

std::string AbelianInvariants::to_string() const
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i)
    os << (i ? ", " : "") << factors_[i];
  os << ']';
  return os.str();
}

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Row-echelon generators of a lattice L in Z^m with modulus*Z^m inside L.
/// Entries are kept in [0, modulus), so the rows only span L together with
/// modulus*Z^m.
class ModularHermite
{
public:
  ModularHermite(std::size_t m, std::int64_t modulus)
    : modulus_(modulus), rows_(m, std::vector<std::int64_t>(m, 0))
  {
    for (std::size_t i = 0; i < m; ++i)
      rows_[i][i] = modulus;
  }

  void insert(std::vector<std::int64_t> v)
  {
    const std::size_t m = rows_.size();
    for (auto& x : v)
      x = mod_floor(x, modulus_);
    for (std::size_t c = 0; c < m; ++c) {
      if (v[c] == 0)
        continue;
      auto& row = rows_[c];
      // Replace (row, v) by (g-combination, eliminated v).
      const auto [g, x, y] = ext_gcd(row[c], v[c]);
      const std::int64_t a = row[c] / g;
      const std::int64_t b = v[c] / g;
      std::vector<std::int64_t> new_row(m), new_v(m);
      for (std::size_t k = c; k < m; ++k) {
        const Wide r = static_cast<Wide>(x) * row[k] + static_cast<Wide>(y) * v[k];
        const Wide w = static_cast<Wide>(b) * row[k] - static_cast<Wide>(a) * v[k];
        new_row[k] = static_cast<std::int64_t>(r % modulus_);
        new_v[k] = static_cast<std::int64_t>(w % modulus_);
      }
      for (std::size_t k = c; k < m; ++k) {
        row[k] = mod_floor(new_row[k], modulus_);
        v[k] = mod_floor(new_v[k], modulus_);
      }
      // The pivot divides the modulus, so it can never reduce to zero.
      if (row[c] == 0)
        row[c] = modulus_;
    }
  }

  const std::vector<std::vector<std::int64_t>>& rows() const noexcept { return rows_; }

private:
  struct Gcd
  {
    std::int64_t g, x, y;
  };

  static Gcd ext_gcd(std::int64_t a, std::int64_t b)
  {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
      std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
      std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    return {old_r, old_s, old_t};
  }

  std::int64_t modulus_;
  std::vector<std::vector<std::int64_t>> rows_;
};

struct SmithForm
{
  std::vector<BigInt> diagonal;
  Matrix q;     // column transform
  Matrix q_inv; // its inverse
};

/// Smith normal form P*A*Q = D of an r x c matrix (r >= c); only Q and Q^-1
/// are tracked.
SmithForm smith_normal_form(Matrix a)
{
  const std::size_t rows = a.size();
  const std::size_t m = a.empty() ? 0 : a[0].size();
  Matrix q(m, std::vector<BigInt>(m, 0)), qi(m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    q[i][i] = qi[i][i] = 1;

  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t r = 0; r < rows; ++r)
      std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < m; ++r)
      std::swap(q[r][i], q[r][j]);
    std::swap(qi[i], qi[j]);
  };
  // col_j -= f * col_t
  auto col_sub = [&](std::size_t j, std::size_t t, const BigInt& f) {
    if (f == 0)
      return;
    for (std::size_t r = 0; r < rows; ++r)
      a[r][j] -= f * a[r][t];
    for (std::size_t r = 0; r < m; ++r)
      q[r][j] -= f * q[r][t];
    for (std::size_t c = 0; c < m; ++c)
      qi[t][c] += f * qi[j][c];
  };

  for (std::size_t t = 0; t < m; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block moves to (t, t).
      std::size_t pr = rows, pc = m;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < m; ++c)
          if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == rows)
        break;
      std::swap(a[t], a[pr]);
      swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0)
          continue;
        const BigInt f = a[r][t] / a[t][t];
        for (std::size_t c = t; c < m; ++c)
          a[r][c] -= f * a[t][c];
        if (a[r][t] != 0)
          clean = false;
      }
      for (std::size_t c = t + 1; c < m; ++c) {
        if (a[t][c] == 0)
          continue;
        col_sub(c, t, a[t][c] / a[t][t]);
        if (a[t][c] != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // Enforce d_t | every remaining entry.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < m; ++c)
          if (a[r][c] % a[t][t] != 0) {
            for (std::size_t k = t; k < m; ++k)
              a[t][k] += a[r][k];
            divides = false;
            break;
          }
      if (divides)
        break;
    }
  }
  SmithForm out;
  for (std::size_t i = 0; i < m; ++i)
    out.diagonal.push_back(abs(a[i][i]));
  out.q = std::move(q);
  out.q_inv = std::move(qi);
  return out;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m)
{
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
  }
  return static_cast<std::uint64_t>(mod_floor(old_s, static_cast<std::int64_t>(m)));
}

Permutation word_element(const std::vector<Permutation>& gens, const std::vector<std::int64_t>& e,
                         std::size_t degree)
{
  Permutation g(degree);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (e[k] != 0)
      g = g * gens[k].pow(e[k]);
  return g;
}

} // namespace

std::size_t Abelianization::KeyHash::operator()(const std::vector<Point>& key) const noexcept
{
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : key) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::vector<Point> Abelianization::canonical_key(const Permutation& g) const
{
  // Lexicographically least base image over the coset g*G'.
  Permutation c = g;
  for (const auto& level : derived_.chain()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < level.orbit.size(); ++i)
      if (c(level.orbit[i]) < c(level.orbit[best]))
        best = i;
    if (best != 0)
      c = c * level.transversal[best];
  }
  std::vector<Point> key;
  key.reserve(group_base_.size());
  for (Point b : group_base_)
    key.push_back(c(b));
  return key;
}

std::size_t Abelianization::coset_of(const Permutation& g) const
{
  const auto it = key_to_coset_.find(canonical_key(g));
  if (it == key_to_coset_.end())
    throw std::invalid_argument("element does not lie in the group");
  return it->second;
}

std::vector<std::uint64_t> Abelianization::coset_coordinates(std::size_t coset) const
{
  const auto& e = exponents_.at(coset);
  const auto& factors = invariants_.factors();
  std::vector<std::uint64_t> out(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto q = static_cast<std::int64_t>(factors[j]);
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < e.size(); ++k)
      acc = mod_floor(acc + mod_floor(e[k], q) * coord_columns_[j][k], q);
    out[j] = static_cast<std::uint64_t>(acc);
  }
  return out;
}

std::vector<std::uint64_t> Abelianization::coordinates(const Permutation& g) const
{
  return coset_coordinates(coset_of(g));
}

const Permutation& Abelianization::preimage(const std::vector<std::uint64_t>& coords) const
{
  if (coords.size() != factor_gens_.size())
    throw std::invalid_argument("coordinate vector has the wrong length");
  Permutation g(derived_.degree());
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (coords[j] % invariants_.factors()[j] != 0)
      g = g * factor_gens_[j].pow(static_cast<std::int64_t>(coords[j] % invariants_.factors()[j]));
  return reps_[coset_of(g)];
}

Abelianization abelianization(const PermGroup& group, std::size_t index_cap)
{
  return abelianization(group, derived_subgroup(group), index_cap);
}

Abelianization abelianization(const PermGroup& group, const PermGroup& derived,
                              std::size_t index_cap)
{
  const BigInt index = group.order() / derived.order();
  if (index > index_cap)
    throw CapExceeded("index |G : G'| = " + to_decimal(index) + " exceeds the cap " +
                      std::to_string(index_cap));

  Abelianization out;
  out.derived_ = derived;
  out.group_base_ = group.base();

  std::vector<Permutation> gens;
  for (const auto& g : group.generators())
    if (!g.is_identity())
      gens.push_back(g);
  const std::size_t m = gens.size();
  const std::size_t degree = group.degree();

  out.reps_.emplace_back(degree);
  out.exponents_.emplace_back(m, 0);
  out.key_to_coset_.emplace(out.canonical_key(out.reps_[0]), 0);

  std::vector<std::vector<std::int64_t>> relations;
  for (std::size_t c = 0; c < out.reps_.size(); ++c) {
    for (std::size_t s = 0; s < m; ++s) {
      Permutation next = out.reps_[c] * gens[s];
      auto key = out.canonical_key(next);
      std::vector<std::int64_t> e = out.exponents_[c];
      e[s] += 1;
      auto [it, inserted] = out.key_to_coset_.emplace(std::move(key), out.reps_.size());
      if (inserted) {
        out.reps_.push_back(std::move(next));
        out.exponents_.push_back(std::move(e));
      } else {
        const auto& known = out.exponents_[it->second];
        std::vector<std::int64_t> rel(m);
        bool zero = true;
        for (std::size_t k = 0; k < m; ++k) {
          rel[k] = e[k] - known[k];
          zero = zero && rel[k] == 0;
        }
        if (!zero)
          relations.push_back(std::move(rel));
      }
    }
  }
  if (out.reps_.size() != index)
    throw std::logic_error("coset enumeration disagrees with |G|/|G'|");

  const auto n = static_cast<std::int64_t>(out.reps_.size());
  if (n == 1)
    return out;

  ModularHermite hermite(m, n);
  for (auto& rel : relations)
    hermite.insert(std::move(rel));
  // The lattice is span(rows) + n*Z^m.
  Matrix a(2 * m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      a[i][j] = hermite.rows()[i][j];
    a[m + i][i] = n;
  }
  const SmithForm snf = smith_normal_form(std::move(a));

  struct Primary
  {
    std::uint64_t prime, power;
    std::vector<std::int64_t> generator_exponents;
    std::vector<std::int64_t> column;
  };
  std::vector<Primary> primaries;
  for (std::size_t i = 0; i < m; ++i) {
    const auto d = static_cast<std::uint64_t>(snf.diagonal[i]);
    if (d <= 1)
      continue;
    for (auto [p, e] : factorize(d)) {
      std::uint64_t q = 1;
      for (unsigned k = 0; k < e; ++k)
        q *= p;
      const std::uint64_t cofactor = d / q;
      const auto sq = static_cast<std::int64_t>(q);
      Primary pr{p, q, std::vector<std::int64_t>(m), std::vector<std::int64_t>(m)};
      const auto inv = static_cast<std::int64_t>(mod_inverse(cofactor % q, q));
      for (std::size_t k = 0; k < m; ++k) {
        const BigInt row = (snf.q_inv[i][k] * cofactor) % n;
        pr.generator_exponents[k] = mod_floor(static_cast<std::int64_t>(row), n);
        const BigInt col = snf.q[k][i] % sq;
        pr.column[k] =
          mod_floor(static_cast<std::int64_t>(mod_floor(static_cast<std::int64_t>(col), sq)) * inv, sq);
      }
      primaries.push_back(std::move(pr));
    }
  }
  std::stable_sort(primaries.begin(), primaries.end(), [](const Primary& x, const Primary& y) {
    return x.prime != y.prime ? x.prime < y.prime : x.power < y.power;
  });

  std::vector<std::uint64_t> factors;
  for (auto& pr : primaries) {
    factors.push_back(pr.power);
    out.factor_gens_.push_back(word_element(gens, pr.generator_exponents, degree));
    out.coord_columns_.push_back(std::move(pr.column));
  }
  out.invariants_ = AbelianInvariants::from_cyclic_orders(factors);
  return out;
}

PermGroup regular_representation(const AbelianInvariants& invariants, std::size_t order_cap)
{
  const BigInt order = invariants.order();
  if (order > order_cap)
    throw CapExceeded("regular representation of order " + to_decimal(order) +
                      " exceeds the cap " + std::to_string(order_cap));
  const auto& factors = invariants.factors();
  const auto degree = static_cast<std::size_t>(order);
  std::vector<Permutation> gens;
  // Point index = sum c_j * stride_j with the last factor least significant.
  std::vector<std::size_t> strides(factors.size(), 1);
  for (std::size_t j = factors.size(); j-- > 1;)
    strides[j - 1] = strides[j] * factors[j];
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::vector<Point> images(degree);
    for (std::size_t x = 0; x < degree; ++x) {
      const std::size_t c = (x / strides[j]) % factors[j];
      const std::size_t shifted = x - c * strides[j] + ((c + 1) % factors[j]) * strides[j];
      images[x] = static_cast<Point>(shifted);
    }
    gens.emplace_back(std::move(images));
  }
  return PermGroup::generate(std::move(gens), degree);
}

} // namespace wreathgen
