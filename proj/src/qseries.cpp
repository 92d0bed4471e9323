#include "wz/qseries.hpp"

#include <algorithm>

namespace wz {

ModSeries reduce(const IntSeries& f, std::uint32_t p) {
  PrimeFieldRing ring(p);
  std::vector<Fp> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(ring.from(v));
  return ModSeries(ring, f.weight(), std::move(c));
}

template <class Ring>
PowerSeries<Ring> eisenstein(int k, int prec, const Ring& ring) {
  if (k != 4 && k != 6) throw std::invalid_argument("eisenstein: only weights 4 and 6 are supported");
  if (prec < 1) throw std::invalid_argument("eisenstein: precision must be >= 1");
  const unsigned r = static_cast<unsigned>(k - 1);
  std::vector<typename Ring::Coeff> sigma(static_cast<std::size_t>(prec), ring.zero());
  for (int d = 1; d < prec; ++d) {
    const auto dr = ring.power(static_cast<std::uint64_t>(d), r);
    for (int m = d; m < prec; m += d) sigma[static_cast<std::size_t>(m)] += dr;
  }
  const auto scale = ring.from_int(k == 4 ? 240 : -504);
  sigma[0] = ring.one();
  for (int n = 1; n < prec; ++n) sigma[static_cast<std::size_t>(n)] *= scale;
  return PowerSeries<Ring>(ring, k, std::move(sigma));
}

template <class Ring>
PowerSeries<Ring> delta(int prec, const Ring& ring) {
  if (prec < 1) throw std::invalid_argument("delta: precision must be >= 1");
  std::vector<typename Ring::Coeff> out(static_cast<std::size_t>(prec), ring.zero());
  if (prec == 1) return PowerSeries<Ring>(ring, 12, std::move(out));
  // prod (1 - q^n)^3 = sum_{m >= 0} (-1)^m (2m + 1) q^{m(m+1)/2}  (Jacobi).
  const int n = prec - 1;
  std::vector<typename Ring::Coeff> eta3(static_cast<std::size_t>(n), ring.zero());
  for (std::int64_t m = 0; m * (m + 1) / 2 < n; ++m) {
    eta3[static_cast<std::size_t>(m * (m + 1) / 2)] = ring.from_int((m % 2 == 0 ? 1 : -1) * (2 * m + 1));
  }
  PowerSeries<Ring> s(ring, 0, std::move(eta3));
  for (int i = 0; i < 3; ++i) s = series_mul(s, s);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i + 1)] = s.coeffs()[static_cast<std::size_t>(i)];
  return PowerSeries<Ring>(ring, 12, std::move(out));
}

int dim_cusp(int k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("dim_cusp: weight must be even and >= 0");
  if (k < 12) return 0;
  return k / 12 - (k % 12 == 2 ? 1 : 0);
}

template <class Ring>
LevelOneForms<Ring>::LevelOneForms(Ring ring, int prec)
    : ring_(ring),
      prec_(prec),
      e4_(eisenstein(4, prec, ring)),
      e6_(eisenstein(6, prec, ring)),
      delta_(delta(prec, ring)) {
  e4_powers_.push_back(PowerSeries<Ring>::constant(ring_, prec_, ring_.one()));
  delta_powers_.push_back(PowerSeries<Ring>::constant(ring_, prec_, ring_.one()));
}

template <class Ring>
const PowerSeries<Ring>& LevelOneForms<Ring>::e4_power(int a) {
  while (static_cast<int>(e4_powers_.size()) <= a) e4_powers_.push_back(series_mul(e4_powers_.back(), e4_));
  return e4_powers_[static_cast<std::size_t>(a)];
}

template <class Ring>
const PowerSeries<Ring>& LevelOneForms<Ring>::delta_power(int j) {
  while (static_cast<int>(delta_powers_.size()) <= j) {
    delta_powers_.push_back(series_mul(delta_powers_.back(), delta_));
  }
  return delta_powers_[static_cast<std::size_t>(j)];
}

template <class Ring>
const PowerSeries<Ring>& LevelOneForms<Ring>::eisenstein_monomial(int w) {
  if (w < 0 || w % 2 != 0 || w == 2) throw std::invalid_argument("eisenstein_monomial: no monomial of this weight");
  auto it = monomials_.find(w);
  if (it != monomials_.end()) return it->second;
  const int b = (w % 4 == 2) ? 1 : 0;
  const int a = (w - 6 * b) / 4;
  auto m = b == 0 ? e4_power(a) : series_mul(e4_power(a), e6_);
  return monomials_.emplace(w, std::move(m)).first->second;
}

template <class Ring>
MillerBasis<Ring> LevelOneForms<Ring>::miller_basis(int k) {
  const int d = dim_cusp(k);
  MillerBasis<Ring> basis{k, prec_, ring_, {}};
  if (d == 0) return basis;
  if (prec_ <= d) throw PrecisionError("miller_basis: precision must exceed dim S_k = " + std::to_string(d));

  // Monomials Delta^j E_4^a E_6^b, j = d down to 1; each is q^j + O(q^{j+1}).
  std::vector<PowerSeries<Ring>> reduced;  // reduced[0] corresponds to j = d
  for (int j = d; j >= 1; --j) {
    auto g = series_mul(delta_power(j), eisenstein_monomial(k - 12 * j));
    // Clear q^i for j < i <= d using the already-reduced forms of higher index.
    for (int i = j + 1; i <= d; ++i) {
      const auto c = g[i];
      if (Ring::is_zero(c)) continue;
      g = g.minus_multiple(c, reduced[static_cast<std::size_t>(d - i)]);
    }
    reduced.push_back(std::move(g));
  }
  std::reverse(reduced.begin(), reduced.end());
  basis.forms = std::move(reduced);
  return basis;
}

template <class Ring>
MillerBasis<Ring> miller_basis(int k, int prec, const Ring& ring) {
  const int d = dim_cusp(k);
  if (d > 0 && prec <= d) throw PrecisionError("miller_basis: precision must exceed dim S_k = " + std::to_string(d));
  if (d == 0) return MillerBasis<Ring>{k, prec, ring, {}};
  LevelOneForms<Ring> forms(ring, prec);
  return forms.miller_basis(k);
}

MillerBasis<PrimeFieldRing> reduce(const MillerBasis<IntegerRing>& b, std::uint32_t p) {
  MillerBasis<PrimeFieldRing> out{b.k, b.prec, PrimeFieldRing(p), {}};
  for (const auto& f : b.forms) out.forms.push_back(reduce(f, p));
  return out;
}

template PowerSeries<IntegerRing> eisenstein(int, int, const IntegerRing&);
template PowerSeries<PrimeFieldRing> eisenstein(int, int, const PrimeFieldRing&);
template PowerSeries<IntegerRing> delta(int, const IntegerRing&);
template PowerSeries<PrimeFieldRing> delta(int, const PrimeFieldRing&);
template class LevelOneForms<IntegerRing>;
template class LevelOneForms<PrimeFieldRing>;
template MillerBasis<IntegerRing> miller_basis(int, int, const IntegerRing&);
template MillerBasis<PrimeFieldRing> miller_basis(int, int, const PrimeFieldRing&);

}  // namespace wz
