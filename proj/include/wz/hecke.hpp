#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "wz/exactarith/ext_field.hpp"
#include "wz/exactarith/integer.hpp"
#include "wz/exactarith/matrix.hpp"
#include "wz/qseries.hpp"

namespace wz {

/// a_n(T_m f) = sum over d | gcd(m, n) of d^{k-1} a_{mn/d^2}(f). Needs f.prec() > m*n.
template <class Ring>
typename Ring::Coeff hecke_coeff(const PowerSeries<Ring>& f, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("hecke_coeff: m and n must be positive");
  if (static_cast<std::int64_t>(f.prec()) <= std::int64_t{m} * n) {
    throw PrecisionError("hecke_coeff: need precision > " + std::to_string(std::int64_t{m} * n));
  }
  const auto& ring = f.ring();
  auto acc = ring.zero();
  const int g = static_cast<int>(gcd(std::int64_t{m}, std::int64_t{n}));
  for (int d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    acc += ring.power(static_cast<std::uint64_t>(d), static_cast<unsigned>(f.weight() - 1)) * f[m / d * (n / d)];
  }
  return acc;
}

/// Matrix of T_m on S_k in the Miller basis: entry (i, j) is the q^{i+1} coefficient of T_m(form j+1).
template <class Ring>
struct HeckeMatrix {
  int k;
  int m;
  Ring ring;
  Matrix<typename Ring::Coeff> entries;

  [[nodiscard]] std::size_t dim() const { return entries.rows(); }
};

template <class Ring>
HeckeMatrix<Ring> hecke_matrix(const MillerBasis<Ring>& basis, int m) {
  const auto d = static_cast<std::size_t>(basis.dim());
  HeckeMatrix<Ring> h{basis.k, m, basis.ring, Matrix<typename Ring::Coeff>(d, d, basis.ring.zero())};
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      h.entries(i, j) = hecke_coeff(basis.forms[j], m, static_cast<int>(i) + 1);
    }
  }
  return h;
}

/// T_m on S_k, built from a Miller basis of precision m * dim + 2.
template <class Ring>
HeckeMatrix<Ring> hecke_matrix(int k, int m, const Ring& ring) {
  if (m < 1) throw std::invalid_argument("hecke_matrix: m must be positive");
  const int d = dim_cusp(k);
  return hecke_matrix(miller_basis(k, m * d + 2, ring), m);
}

/// Exact a_p of the unique normalized eigenform when dim S_k = 1.
BigInt exact_ap_dim1(int k, std::uint32_t p);

/// A Galois-conjugacy class of mod-p Hecke eigensystems on S_k.
struct EigenSystem {
  std::uint32_t p = 0;
  int k = 0;
  int degree = 1;                        // [F_p(a_l) : F_p]
  Field field = nullptr;                 // canonical F_{p^degree}, or an ad hoc model on overflow
  int bound = 0;                         // values stored for primes l <= bound
  std::map<std::uint32_t, Gf> values;    // l -> a_l
  Gf ap;                                 // q^p coefficient of the normalized eigenform
  std::vector<Gf> expansion;             // a_0 ... a_{N-1} of the normalized eigenform
  int multiplicity = 1;                  // generalized eigenspace dimension / degree
  bool ordinary = true;
  bool semisimple_action = true;
  bool degree_overflow = false;

  [[nodiscard]] int expansion_prec() const { return static_cast<int>(expansion.size()); }
  /// a_n of the normalized eigenform; throws PrecisionError beyond the stored expansion.
  [[nodiscard]] const Gf& coefficient(int n) const;
  [[nodiscard]] const Gf& value(std::uint32_t ell) const;
};

/// Apply the p-power Frobenius to every stored value.
EigenSystem frobenius_conjugate(const EigenSystem& s);

/// Default number of eigenvalues kept: floor((p+1)/12) + 2, but at least 13.
int default_eigen_bound(std::uint32_t p);

struct EigenOptions {
  int bound = 0;           // 0 selects default_eigen_bound(p)
  int expansion_prec = 0;  // 0 selects p + 1
  int max_degree = kDefaultMaxExtDegree;
};

/// One representative per conjugacy class of mod-p eigensystems on S_k, sorted
/// by degree and then canonically by value. `forms` may be shared across
/// weights for the same p; it is only used if its precision suffices.
std::vector<EigenSystem> eigensystems(std::uint32_t p, int k, const EigenOptions& opts = {},
                                      LevelOneForms<PrimeFieldRing>* forms = nullptr);

inline std::vector<EigenSystem> eigensystems(std::uint32_t p, int k, int bound) {
  return eigensystems(p, k, EigenOptions{bound, 0, kDefaultMaxExtDegree});
}

/// Precision the eigensystem computation needs from a shared LevelOneForms.
int eigensystem_precision(std::uint32_t p, int k, const EigenOptions& opts);

struct ProviderOptions {
  int bound = 0;          // eigenvalue bound; 0 selects default_eigen_bound(p)
  int min_expansion = 0;  // keep q-expansions through at least this index
  int max_degree = kDefaultMaxExtDegree;
};

/// Thread-safe memo of eigensystems(p, k), one entry per (p, k). Forms are
/// shared across weights of the same p. Subclasses may add persistent storage
/// through load/store.
class EigenProvider {
 public:
  explicit EigenProvider(ProviderOptions opts = {}) : opts_(opts) {}
  virtual ~EigenProvider() = default;
  EigenProvider(const EigenProvider&) = delete;
  EigenProvider& operator=(const EigenProvider&) = delete;

  std::shared_ptr<const std::vector<EigenSystem>> systems(std::uint32_t p, int k);
  [[nodiscard]] EigenOptions options_for(std::uint32_t p) const;
  [[nodiscard]] const ProviderOptions& options() const { return opts_; }

 protected:
  virtual std::optional<std::vector<EigenSystem>> load(std::uint32_t, int, const EigenOptions&) { return std::nullopt; }
  virtual void store(std::uint32_t, int, const EigenOptions&, const std::vector<EigenSystem>&) {}

 private:
  struct PrimeSlot {
    std::mutex mu;
    std::unique_ptr<LevelOneForms<PrimeFieldRing>> forms;
  };

  ProviderOptions opts_;
  std::mutex mu_;
  std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const std::vector<EigenSystem>>> memo_;
  std::map<std::uint32_t, std::unique_ptr<PrimeSlot>> slots_;
};

}  // namespace wz
