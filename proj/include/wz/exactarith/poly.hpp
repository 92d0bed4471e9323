#pragma once

// Dense univariate polynomials over a finite field, with factorization.
//
// The coefficient type E is either Fp or Gf. Both expose the same small
// field interface (zero/one/from_int/inv/pow/pth_root/random/field_order and
// canonical_compare), which is all the algorithms below rely on.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wz/exactarith/integer.hpp"

namespace wz {

template <class E>
class Poly {
 public:
  explicit Poly(const E& ref) : ref_(ref.zero()) {}
  Poly(const E& ref, std::vector<E> coeffs) : ref_(ref.zero()), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const E& c) { return Poly(c, {c}); }
  static Poly x(const E& ref) { return Poly(ref, {ref.zero(), ref.one()}); }
  static Poly monomial(const E& c, int deg) {
    std::vector<E> v(static_cast<std::size_t>(deg) + 1, c.zero());
    v.back() = c;
    return Poly(c, std::move(v));
  }
  /// Build from integer coefficients, lowest degree first.
  static Poly from_ints(const E& ref, const std::vector<std::int64_t>& ints) {
    std::vector<E> v;
    v.reserve(ints.size());
    for (auto i : ints) v.push_back(ref.from_int(i));
    return Poly(ref, std::move(v));
  }

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] bool is_one() const { return c_.size() == 1 && c_[0] == ref_.one(); }
  [[nodiscard]] const std::vector<E>& coeffs() const { return c_; }
  [[nodiscard]] const E& ref() const { return ref_; }
  [[nodiscard]] E coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : ref_;
  }
  [[nodiscard]] E leading() const { return c_.empty() ? ref_ : c_.back(); }
  [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == ref_.one(); }

  [[nodiscard]] Poly monic() const {
    if (c_.empty()) return *this;
    const E inv = c_.back().inv();
    Poly r = *this;
    for (auto& a : r.c_) a *= inv;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ref_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ref_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ref_);
    std::vector<E> out(a.c_.size() + b.c_.size() - 1, a.ref_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.ref_, std::move(out));
  }
  friend Poly operator*(const E& s, Poly a) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
  }

  /// Euclidean division; returns (quotient, remainder).
  [[nodiscard]] std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly r = *this;
    if (r.degree() < d.degree()) return {Poly(ref_), r};
    std::vector<E> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), ref_);
    const E lead_inv = d.leading().inv();
    for (int i = r.degree(); i >= d.degree(); --i) {
      const E coef = r.c_[static_cast<std::size_t>(i)] * lead_inv;
      q[static_cast<std::size_t>(i - d.degree())] = coef;
      if (coef.is_zero()) continue;
      for (int j = 0; j <= d.degree(); ++j) {
        r.c_[static_cast<std::size_t>(i - d.degree() + j)] -= coef * d.c_[static_cast<std::size_t>(j)];
      }
    }
    r.trim();
    return {Poly(ref_, std::move(q)), r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  [[nodiscard]] E eval(const E& x) const {
    E acc = ref_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Poly derivative() const {
    if (c_.size() <= 1) return Poly(ref_);
    std::vector<E> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * ref_.from_int(static_cast<std::int64_t>(i)));
    return Poly(ref_, std::move(out));
  }

  [[nodiscard]] std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const E& a = c_[static_cast<std::size_t>(i)];
      if (a.is_zero()) continue;
      if (!s.empty()) s += " + ";
      const bool unit = a == ref_.one();
      if (!unit || i == 0) s += "(" + a.str() + ")";
      if (i >= 1) s += (!unit ? "*x" : "x");
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  E ref_;
  std::vector<E> c_;
};

/// Monic gcd (zero if both inputs are zero).
template <class E>
Poly<E> gcd(Poly<E> a, Poly<E> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class E>
Poly<E> powmod(const Poly<E>& base, const BigInt& e, const Poly<E>& mod) {
  if (e < 0) throw std::invalid_argument("powmod: negative exponent");
  Poly<E> result = Poly<E>::constant(base.ref().one()) % mod;
  Poly<E> b = base % mod;
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % mod;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % mod;
  }
  return result;
}

/// Total order on polynomials: by degree, then coefficients from the top down.
template <class E>
bool canonical_less(const Poly<E>& a, const Poly<E>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto c = canonical_compare(a.coeff(i), b.coeff(i));
    if (c != 0) return c < 0;
  }
  return false;
}

template <class E>
using Factorization = std::vector<std::pair<Poly<E>, int>>;

namespace detail {

/// Replace each coefficient c of a polynomial in x^p by c^(1/p), giving g with g(x)^p = f.
template <class E>
Poly<E> pth_root_poly(const Poly<E>& f) {
  const auto p = static_cast<int>(f.ref().characteristic());
  std::vector<E> out;
  for (int i = 0; i <= f.degree(); i += p) out.push_back(f.coeff(i).pth_root());
  return Poly<E>(f.ref(), std::move(out));
}

template <class E>
void squarefree_factor(const Poly<E>& f, int mult, Factorization<E>& out) {
  if (f.degree() < 1) return;
  const int p = static_cast<int>(f.ref().characteristic());
  auto c = gcd(f, f.derivative());
  auto w = f / c;
  int i = 1;
  while (!w.is_one()) {
    auto y = gcd(w, c);
    auto fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) squarefree_factor(pth_root_poly(c.monic()), mult * p, out);
}

template <class E>
std::vector<std::pair<Poly<E>, int>> distinct_degree_factor(Poly<E> f) {
  std::vector<std::pair<Poly<E>, int>> out;
  const BigInt q = f.ref().field_order();
  const auto x = Poly<E>::x(f.ref());
  auto h = x % f;
  for (int i = 1; f.degree() >= 2 * i; ++i) {
    h = powmod(h, q, f);
    auto g = gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

template <class E, class Rng>
void equal_degree_factor(const Poly<E>& f, int e, Rng& rng, std::vector<Poly<E>>& out) {
  if (f.degree() <= e) {
    out.push_back(f.monic());
    return;
  }
  const BigInt q = f.ref().field_order();
  const BigInt qe = pow(q, static_cast<unsigned long>(e));
  const bool odd = mpz_odd_p(q.get_mpz_t()) != 0;
  for (;;) {
    std::vector<E> coeffs;
    for (int i = 0; i < f.degree(); ++i) coeffs.push_back(f.ref().random(rng));
    Poly<E> a(f.ref(), std::move(coeffs));
    if (a.degree() < 1) continue;
    Poly<E> b(f.ref());
    if (odd) {
      b = powmod(a, BigInt((qe - 1) / 2), f) - Poly<E>::constant(f.ref().one());
    } else {
      // Characteristic 2: absolute trace a + a^2 + ... + a^(2^(m-1)) with 2^m = q^e.
      const auto m = mpz_sizeinbase(qe.get_mpz_t(), 2) - 1;
      Poly<E> t = a % f;
      b = t;
      for (std::size_t j = 1; j < m; ++j) {
        t = (t * t) % f;
        b += t;
      }
    }
    auto g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_factor(g, e, rng, out);
      equal_degree_factor(f / g, e, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factor a monic polynomial into monic irreducibles with multiplicities.
/// Output is sorted by canonical_less and does not depend on the RNG path.
template <class E>
Factorization<E> factor(const Poly<E>& f) {
  if (f.degree() < 1) throw std::invalid_argument("factor: degree must be >= 1");
  if (!f.is_monic()) throw std::invalid_argument("factor: polynomial must be monic");
  Factorization<E> squarefree;
  detail::squarefree_factor(f, 1, squarefree);
  std::mt19937_64 rng(0x5eed5eedULL);
  Factorization<E> out;
  for (const auto& [sf, mult] : squarefree) {
    for (const auto& [part, deg] : detail::distinct_degree_factor(sf)) {
      std::vector<Poly<E>> irreducibles;
      detail::equal_degree_factor(part, deg, rng, irreducibles);
      for (auto& g : irreducibles) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (canonical_less(a.first, b.first)) return true;
    if (canonical_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  // Merge equal factors coming from different squarefree layers (possible in characteristic p).
  Factorization<E> merged;
  for (auto& fm : out) {
    if (!merged.empty() && merged.back().first == fm.first) {
      merged.back().second += fm.second;
    } else {
      merged.push_back(std::move(fm));
    }
  }
  return merged;
}

template <class E>
bool is_irreducible(const Poly<E>& f) {
  if (f.degree() < 1) return false;
  auto fac = factor(f.monic());
  return fac.size() == 1 && fac.front().second == 1;
}

/// Distinct roots lying in the coefficient field, in canonical order.
template <class E>
std::vector<E> roots(const Poly<E>& f) {
  std::vector<E> out;
  if (f.degree() < 1) return out;
  for (const auto& [g, m] : factor(f.monic())) {
    if (g.degree() == 1) out.push_back(-g.coeff(0));
  }
  std::sort(out.begin(), out.end(), [](const E& a, const E& b) { return canonical_compare(a, b) < 0; });
  return out;
}

template <class E>
Poly<E> expand(const Factorization<E>& fac, const E& ref) {
  auto r = Poly<E>::constant(ref.one());
  for (const auto& [g, m] : fac) {
    for (int i = 0; i < m; ++i) r = r * g;
  }
  return r;
}

}  // namespace wz
