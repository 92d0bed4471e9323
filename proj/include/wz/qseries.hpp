#pragma once

// Truncated q-expansions of level-one modular forms.
//
// Everything is templated on a coefficient ring: IntegerRing (exact, BigInt
// coefficients) or PrimeFieldRing (Fp coefficients). Precision is always
// explicit: a series with prec N knows a_0 ... a_{N-1} and nothing else.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "wz/exactarith/integer.hpp"
#include "wz/exactarith/prime_field.hpp"

namespace wz {

struct IntegerRing {
  using Coeff = BigInt;
  [[nodiscard]] Coeff from(const BigInt& v) const { return v; }
  [[nodiscard]] Coeff from_int(std::int64_t v) const { return BigInt(static_cast<long>(v)); }
  [[nodiscard]] Coeff zero() const { return BigInt(0); }
  [[nodiscard]] Coeff one() const { return BigInt(1); }
  /// base^e for a small nonnegative integer base.
  [[nodiscard]] Coeff power(std::uint64_t base, unsigned e) const {
    return wz::pow(BigInt(static_cast<unsigned long>(base)), e);
  }
  [[nodiscard]] static bool is_zero(const Coeff& c) { return c == 0; }
  [[nodiscard]] std::string tag() const { return "ZZ"; }
  friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

struct PrimeFieldRing {
  using Coeff = Fp;
  std::uint32_t p = 0;

  explicit PrimeFieldRing(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw std::invalid_argument("PrimeFieldRing: modulus must be prime");
  }
  [[nodiscard]] Coeff from(const BigInt& v) const { return Fp(p, v); }
  [[nodiscard]] Coeff from_int(std::int64_t v) const { return Fp(p, v); }
  [[nodiscard]] Coeff zero() const { return Fp::from_reduced(p, 0); }
  [[nodiscard]] Coeff one() const { return Fp(p, 1); }
  [[nodiscard]] Coeff power(std::uint64_t base, unsigned e) const { return Fp(p, static_cast<std::int64_t>(base % p)).pow(std::uint64_t{e}); }
  [[nodiscard]] static bool is_zero(const Coeff& c) { return c.is_zero(); }
  [[nodiscard]] std::string tag() const { return "GF(" + std::to_string(p) + ")"; }
  friend bool operator==(const PrimeFieldRing&, const PrimeFieldRing&) = default;
};

/// Thrown when a computation needs more coefficients than a series carries.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Ring>
class PowerSeries {
 public:
  using Coeff = typename Ring::Coeff;

  PowerSeries(Ring ring, int weight, std::vector<Coeff> coeffs)
      : ring_(std::move(ring)), weight_(weight), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("PowerSeries: precision must be >= 1");
    if (weight_ < 0 || weight_ % 2 != 0) throw std::invalid_argument("PowerSeries: weight must be even and >= 0");
  }

  static PowerSeries constant(const Ring& ring, int prec, const Coeff& c) {
    if (prec < 1) throw std::invalid_argument("PowerSeries: precision must be >= 1");
    std::vector<Coeff> v(static_cast<std::size_t>(prec), ring.zero());
    v[0] = c;
    return PowerSeries(ring, 0, std::move(v));
  }

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] int prec() const { return static_cast<int>(c_.size()); }
  [[nodiscard]] const std::vector<Coeff>& coeffs() const { return c_; }

  [[nodiscard]] const Coeff& operator[](int n) const {
    if (n < 0 || n >= prec()) {
      throw PrecisionError("coefficient q^" + std::to_string(n) + " requested at precision " + std::to_string(prec()));
    }
    return c_[static_cast<std::size_t>(n)];
  }

  [[nodiscard]] PowerSeries truncated(int prec) const {
    if (prec < 1 || prec > this->prec()) throw PrecisionError("truncated: precision cannot be extended");
    return PowerSeries(ring_, weight_, std::vector<Coeff>(c_.begin(), c_.begin() + prec));
  }

  /// f - c*g for series of equal weight, at the smaller precision.
  [[nodiscard]] PowerSeries minus_multiple(const Coeff& c, const PowerSeries& g) const {
    check_ring(g);
    if (g.weight_ != weight_) throw std::invalid_argument("minus_multiple: weight mismatch");
    const int n = std::min(prec(), g.prec());
    std::vector<Coeff> out(c_.begin(), c_.begin() + n);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] -= c * g.c_[static_cast<std::size_t>(i)];
    return PowerSeries(ring_, weight_, std::move(out));
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.ring_ == b.ring_ && a.weight_ == b.weight_ && a.c_ == b.c_;
  }

  void check_ring(const PowerSeries& o) const {
    if (!(o.ring_ == ring_)) throw std::invalid_argument("PowerSeries: coefficient ring mismatch");
  }

 private:
  Ring ring_;
  int weight_;
  std::vector<Coeff> c_;
};

using IntSeries = PowerSeries<IntegerRing>;
using ModSeries = PowerSeries<PrimeFieldRing>;

/// Reduce an integral series modulo p.
ModSeries reduce(const IntSeries& f, std::uint32_t p);

/// Truncated product: weight adds, precision is the minimum of the two.
template <class Ring>
PowerSeries<Ring> series_mul(const PowerSeries<Ring>& f, const PowerSeries<Ring>& g) {
  f.check_ring(g);
  using Coeff = typename Ring::Coeff;
  const int n = std::min(f.prec(), g.prec());
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<Coeff> out;
  if constexpr (std::is_same_v<Coeff, Fp>) {
    const std::uint64_t p = f.ring().p;
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(n), 0);
    // With p < 2^16 each product is < 2^32, so 2^31 of them fit in 64 bits.
    const bool lazy = p < (1u << 16);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t ai = a[static_cast<std::size_t>(i)].value();
      if (ai == 0) continue;
      for (int j = 0; i + j < n; ++j) {
        auto& slot = acc[static_cast<std::size_t>(i + j)];
        slot += ai * b[static_cast<std::size_t>(j)].value();
        if (!lazy) slot %= p;
      }
    }
    out.reserve(static_cast<std::size_t>(n));
    for (auto v : acc) out.push_back(Fp::from_reduced(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(v % p)));
  } else {
    out.assign(static_cast<std::size_t>(n), f.ring().zero());
    for (int i = 0; i < n; ++i) {
      const auto& ai = a[static_cast<std::size_t>(i)];
      if (Ring::is_zero(ai)) continue;
      for (int j = 0; i + j < n; ++j) {
        mpz_addmul(out[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), b[static_cast<std::size_t>(j)].get_mpz_t());
      }
    }
  }
  return PowerSeries<Ring>(f.ring(), f.weight() + g.weight(), std::move(out));
}

/// Normalized Eisenstein series E_4 (1 + 240 sum sigma_3(n) q^n) or E_6 (1 - 504 sum sigma_5(n) q^n).
template <class Ring>
PowerSeries<Ring> eisenstein(int k, int prec, const Ring& ring);

/// The discriminant form q prod (1 - q^n)^24.
template <class Ring>
PowerSeries<Ring> delta(int prec, const Ring& ring);

/// dim S_k(SL_2(Z)) for even k >= 0.
int dim_cusp(int k);

/// Echelonized integral basis of S_k: form j (1-based) has q^i coefficient delta_ij for 1 <= i <= d.
template <class Ring>
struct MillerBasis {
  int k = 0;
  int prec = 0;
  Ring ring;
  std::vector<PowerSeries<Ring>> forms;

  [[nodiscard]] int dim() const { return static_cast<int>(forms.size()); }
};

/// Builds E_4, E_6, Delta powers once per (ring, prec) and serves Miller bases
/// of many weights from them. Not thread-safe; use one instance per thread.
template <class Ring>
class LevelOneForms {
 public:
  LevelOneForms(Ring ring, int prec);

  [[nodiscard]] int prec() const { return prec_; }
  [[nodiscard]] const Ring& ring() const { return ring_; }

  const PowerSeries<Ring>& e4_power(int a);
  const PowerSeries<Ring>& delta_power(int j);
  /// E_4^a E_6^b with b in {0, 1} determined by w mod 4.
  const PowerSeries<Ring>& eisenstein_monomial(int w);

  MillerBasis<Ring> miller_basis(int k);

 private:
  Ring ring_;
  int prec_;
  PowerSeries<Ring> e4_;
  PowerSeries<Ring> e6_;
  PowerSeries<Ring> delta_;
  std::vector<PowerSeries<Ring>> e4_powers_;
  std::vector<PowerSeries<Ring>> delta_powers_;
  std::map<int, PowerSeries<Ring>> monomials_;
};

/// Victor Miller basis of S_k to precision prec (prec must exceed dim S_k).
template <class Ring>
MillerBasis<Ring> miller_basis(int k, int prec, const Ring& ring);

/// Reduce an exact basis modulo p coefficientwise.
MillerBasis<PrimeFieldRing> reduce(const MillerBasis<IntegerRing>& b, std::uint32_t p);

extern template PowerSeries<IntegerRing> eisenstein(int, int, const IntegerRing&);
extern template PowerSeries<PrimeFieldRing> eisenstein(int, int, const PrimeFieldRing&);
extern template PowerSeries<IntegerRing> delta(int, const IntegerRing&);
extern template PowerSeries<PrimeFieldRing> delta(int, const PrimeFieldRing&);
extern template class LevelOneForms<IntegerRing>;
extern template class LevelOneForms<PrimeFieldRing>;
extern template MillerBasis<IntegerRing> miller_basis(int, int, const IntegerRing&);
extern template MillerBasis<PrimeFieldRing> miller_basis(int, int, const PrimeFieldRing&);

}  // namespace wz
