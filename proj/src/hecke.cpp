#include "wz/hecke.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

namespace wz {

BigInt exact_ap_dim1(int k, std::uint32_t p) {
  if (dim_cusp(k) != 1) throw std::invalid_argument("exact_ap_dim1: dim S_k must be 1");
  const auto basis = miller_basis(k, static_cast<int>(p) + 1, IntegerRing{});
  return basis.forms.front()[static_cast<int>(p)];
}

const Gf& EigenSystem::coefficient(int n) const {
  if (n < 0 || n >= expansion_prec()) {
    throw PrecisionError("eigenform coefficient q^" + std::to_string(n) + " beyond stored precision " +
                         std::to_string(expansion_prec()));
  }
  return expansion[static_cast<std::size_t>(n)];
}

const Gf& EigenSystem::value(std::uint32_t ell) const {
  auto it = values.find(ell);
  if (it != values.end()) return it->second;
  return coefficient(static_cast<int>(ell));
}

EigenSystem frobenius_conjugate(const EigenSystem& s) {
  EigenSystem out = s;
  for (auto& [ell, v] : out.values) v = v.frobenius();
  out.ap = out.ap.frobenius();
  for (auto& a : out.expansion) a = a.frobenius();
  return out;
}

int default_eigen_bound(std::uint32_t p) {
  return std::max(13, static_cast<int>((p + 1) / 12) + 2);
}

int eigensystem_precision(std::uint32_t p, int k, const EigenOptions& opts) {
  const int bound = opts.bound > 0 ? opts.bound : default_eigen_bound(p);
  const int exp_prec = opts.expansion_prec > 0 ? opts.expansion_prec : static_cast<int>(p) + 1;
  const int d = dim_cusp(k);
  return std::max({exp_prec, static_cast<int>(p) + 1, bound + 1, 2 * d + 2});
}

namespace {

struct Component {
  Field field;
  std::vector<Gf> coords;  // eigenvector in Miller coordinates, first coordinate 1
  int multiplicity;
};

// Lexicographic comparison of the value tuple (l ascending, then a_p).
bool tuple_less(const EigenSystem& a, const EigenSystem& b) {
  for (auto ia = a.values.begin(), ib = b.values.begin(); ia != a.values.end() && ib != b.values.end(); ++ia, ++ib) {
    auto c = canonical_compare(ia->second, ib->second);
    if (c != 0) return c < 0;
  }
  return canonical_compare(a.ap, b.ap) < 0;
}

// Fast path: decompose S_k mod p with respect to T_2 alone. A one-dimensional
// T_2-eigenspace over the value field can only belong to one eigensystem, so
// that eigenvector is a joint eigenvector. Returns nothing if some T_2
// eigenspace is larger.
std::optional<std::vector<Component>> decompose_single(const Matrix<Fp>& t, std::uint32_t p) {
  const Fp ref(p, 0);
  std::vector<Component> out;
  for (const auto& [g, mult] : factor(charpoly(t, ref))) {
    Field field = adhoc_field(g);
    const Gf root = Gf::generator(field);
    auto shifted = t.map([&](const Fp& v) { return Gf(field, v); });
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= root;
    auto ker = kernel(std::move(shifted), Gf(field));
    if (ker.size() != 1) return std::nullopt;
    out.push_back(Component{field, std::move(ker.front()), mult});
  }
  return out;
}

// Matrix of `op` restricted to the invariant subspace spanned by `vs`.
Matrix<Gf> restrict_to(const Matrix<Gf>& op, const std::vector<std::vector<Gf>>& vs, const Gf& zero) {
  const std::size_t n = op.rows(), r = vs.size();
  Matrix<Gf> aug(n, 2 * r, zero);
  for (std::size_t j = 0; j < r; ++j) {
    const auto image = mat_vec(op, vs[j]);
    for (std::size_t i = 0; i < n; ++i) {
      aug(i, j) = vs[j][i];
      aug(i, r + j) = image[i];
    }
  }
  const auto pivots = rref(aug);
  if (pivots.size() < r || pivots[r - 1] != r - 1) throw std::logic_error("eigensystems: subspace is not invariant");
  Matrix<Gf> m(r, r, zero);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = aug(i, r + j);
  return m;
}

// Slow path: a random combination T of the generating operators splits S_k into
// generalized eigenspaces, one per eigensystem when the combination separates
// them. Inside each, intersect the eigenspaces of every generator to get the
// joint eigenvector. Returns nothing if this combination fails to separate.
std::optional<std::vector<Component>> decompose_joint(const std::vector<Matrix<Fp>>& ops,
                                                      const std::vector<Fp>& coeffs, std::uint32_t p) {
  const Fp ref(p, 0);
  Matrix<Fp> t = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) t = t + ops[i].map([&](const Fp& v) { return v * coeffs[i]; });
  std::vector<Component> out;
  for (const auto& [g, mult] : factor(charpoly(t, ref))) {
    Field field = adhoc_field(g);
    const Gf zero(field);
    const Gf root = Gf::generator(field);
    auto lift = [&](const Matrix<Fp>& m) { return m.map([&](const Fp& v) { return Gf(field, v); }); };
    auto shifted = lift(t);
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= root;
    auto space = kernel(std::move(shifted), zero);
    for (const auto& op_fp : ops) {
      if (space.size() == 1) break;
      const auto op = lift(op_fp);
      const auto chi = charpoly(restrict_to(op, space, zero), zero);
      const auto rts = roots(chi);
      if (rts.size() != 1) return std::nullopt;
      auto single = GfPoly::constant(zero.one());
      const auto lin = GfPoly::x(zero) - GfPoly::constant(rts.front());
      for (std::size_t i = 0; i < space.size(); ++i) single = single * lin;
      if (!(single == chi)) return std::nullopt;
      // Eigenvectors of op inside the current space, as combinations of its basis.
      Matrix<Gf> cols(op.rows(), space.size(), zero);
      for (std::size_t j = 0; j < space.size(); ++j) {
        const auto image = mat_vec(op, space[j]);
        for (std::size_t i = 0; i < op.rows(); ++i) cols(i, j) = image[i] - rts.front() * space[j][i];
      }
      std::vector<std::vector<Gf>> next;
      for (const auto& y : kernel(std::move(cols), zero)) {
        std::vector<Gf> v(op.rows(), zero);
        for (std::size_t j = 0; j < space.size(); ++j)
          for (std::size_t i = 0; i < v.size(); ++i) v[i] += y[j] * space[j][i];
        next.push_back(std::move(v));
      }
      space = std::move(next);
    }
    if (space.size() != 1) throw std::logic_error("eigensystems: joint eigenspace is not one-dimensional");
    out.push_back(Component{field, std::move(space.front()), mult});
  }
  return out;
}

void normalize(std::vector<Component>& comps) {
  for (auto& c : comps) {
    if (c.coords.front().is_zero()) throw std::logic_error("eigensystems: eigenvector with vanishing a_1");
    const Gf inv = c.coords.front().inv();
    for (auto& x : c.coords) x *= inv;
  }
}

EigenSystem build_system(std::uint32_t p, int k, int bound, int exp_prec, const Component& comp,
                         const MillerBasis<PrimeFieldRing>& basis) {
  EigenSystem s;
  s.p = p;
  s.k = k;
  s.field = comp.field;
  s.degree = comp.field->degree;
  s.bound = bound;
  s.multiplicity = comp.multiplicity;
  s.semisimple_action = comp.multiplicity == 1;
  s.expansion.assign(static_cast<std::size_t>(exp_prec), Gf(comp.field));
  for (std::size_t j = 0; j < comp.coords.size(); ++j) {
    const auto& form = basis.forms[j];
    const Gf& cj = comp.coords[j];
    if (cj.is_zero()) continue;
    for (int n = 0; n < exp_prec; ++n) {
      const Fp& a = form[n];
      if (!a.is_zero()) s.expansion[static_cast<std::size_t>(n)] += cj * a;
    }
  }
  for (auto ell : primes_up_to(static_cast<std::uint32_t>(bound))) s.values.emplace(ell, s.coefficient(static_cast<int>(ell)));
  s.ap = s.coefficient(static_cast<int>(p));
  s.ordinary = !s.ap.is_zero();
  return s;
}

// Move a system from its ad hoc field model into the canonical field, choosing
// the conjugate with the least value tuple.
EigenSystem canonicalize_system(const EigenSystem& s, int max_degree) {
  if (s.degree > max_degree) {
    EigenSystem out = s;
    out.degree_overflow = true;
    return out;
  }
  Field target = ext_field(s.p, s.degree, max_degree);
  std::optional<EigenSystem> best;
  for (const Gf& r : roots_in(field_modulus(s.field), target)) {
    EigenSystem c = s;
    c.field = target;
    for (auto& [ell, v] : c.values) v = embed(v, r);
    c.ap = embed(c.ap, r);
    for (auto& a : c.expansion) a = embed(a, r);
    if (!best || tuple_less(c, *best)) best = std::move(c);
  }
  if (!best) throw std::logic_error("eigensystems: value field has no embedding into the canonical field");
  return *best;
}

}  // namespace

std::vector<EigenSystem> eigensystems(std::uint32_t p, int k, const EigenOptions& opts,
                                      LevelOneForms<PrimeFieldRing>* forms) {
  if (!is_prime(p) || p <= 5) throw std::invalid_argument("eigensystems: p must be a prime > 5");
  if (k % 2 != 0 || k < 0) throw std::invalid_argument("eigensystems: weight must be even and >= 0");
  const int d = dim_cusp(k);
  if (d == 0) return {};
  const int bound = opts.bound > 0 ? opts.bound : default_eigen_bound(p);
  if (bound < 2) throw std::invalid_argument("eigensystems: bound must be >= 2");
  const int exp_prec = std::max({opts.expansion_prec > 0 ? opts.expansion_prec : static_cast<int>(p) + 1,
                                 static_cast<int>(p) + 1, bound + 1});
  const PrimeFieldRing ring(p);
  const int prec = eigensystem_precision(p, k, opts);

  std::optional<LevelOneForms<PrimeFieldRing>> local;
  auto basis_at = [&](int needed) -> MillerBasis<PrimeFieldRing> {
    if (forms != nullptr && forms->ring() == ring && forms->prec() >= needed) return forms->miller_basis(k);
    if (!local || local->prec() < needed) local.emplace(ring, needed);
    return local->miller_basis(k);
  };

  auto basis = basis_at(prec);
  std::optional<std::vector<Component>> comps = decompose_single(hecke_matrix(basis, 2).entries, p);

  // T_2 alone does not separate eigensystems. The operators T_l for primes l up
  // to the Sturm bound, together with T_p, generate the Hecke algebra, so their
  // joint eigenspaces are lines. Combination coefficients come from an RNG
  // seeded by (p, k) so results are reproducible.
  if (!comps) {
    const int sturm = k / 12 + 1;
    std::vector<std::uint32_t> gens = primes_up_to(static_cast<std::uint32_t>(std::max(bound, sturm)));
    if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
    const int big_prec = std::max(prec, static_cast<int>(*std::max_element(gens.begin(), gens.end())) * d + 2);
    const auto big_basis = basis_at(big_prec);
    std::vector<Matrix<Fp>> ops;
    for (auto ell : gens) ops.push_back(hecke_matrix(big_basis, static_cast<int>(ell)).entries);
    std::mt19937_64 rng((std::uint64_t{p} << 32) ^ static_cast<std::uint64_t>(k));
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    for (int attempt = 0; attempt < 256 && !comps; ++attempt) {
      std::vector<Fp> c{Fp(p, 1)};
      for (std::size_t i = 1; i < ops.size(); ++i) c.push_back(Fp::from_reduced(p, dist(rng)));
      comps = decompose_joint(ops, c, p);
    }
    if (!comps) throw std::runtime_error("eigensystems: Hecke operators do not separate eigensystems");
  }
  normalize(*comps);

  // Where the Hecke action is not semisimple, confirm a_p with the full T_p
  // matrix instead of trusting the expansion alone.
  std::optional<Matrix<Fp>> tp;
  std::vector<std::optional<Gf>> tp_eigen(comps->size());
  for (std::size_t i = 0; i < comps->size(); ++i) {
    const auto& comp = (*comps)[i];
    if (comp.multiplicity == 1) continue;
    if (!tp) tp = hecke_matrix(basis_at(static_cast<int>(p) * d + 2), static_cast<int>(p)).entries;
    const auto image = mat_vec(tp->map([&](const Fp& v) { return Gf(comp.field, v); }), comp.coords);
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (!(image[j] == image.front() * comp.coords[j])) throw std::logic_error("eigensystems: eigenvector is not a T_p eigenvector");
    }
    tp_eigen[i] = image.front();
  }

  std::vector<EigenSystem> out;
  for (std::size_t i = 0; i < comps->size(); ++i) {
    auto s = build_system(p, k, bound, exp_prec, (*comps)[i], basis);
    if (tp_eigen[i] && !(*tp_eigen[i] == s.ap)) throw std::logic_error("eigensystems: T_p eigenvalue disagrees with a_p");
    out.push_back(canonicalize_system(s, opts.max_degree));
  }
  std::sort(out.begin(), out.end(), [](const EigenSystem& a, const EigenSystem& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.degree_overflow != b.degree_overflow) return !a.degree_overflow;
    if (a.degree_overflow) return canonical_less(field_modulus(a.field), field_modulus(b.field));
    return tuple_less(a, b);
  });
  return out;
}

EigenOptions EigenProvider::options_for(std::uint32_t p) const {
  EigenOptions o;
  o.bound = opts_.bound > 0 ? opts_.bound : default_eigen_bound(p);
  o.expansion_prec = std::max(static_cast<int>(p), opts_.min_expansion) + 1;
  o.max_degree = opts_.max_degree;
  return o;
}

std::shared_ptr<const std::vector<EigenSystem>> EigenProvider::systems(std::uint32_t p, int k) {
  const auto key = std::make_pair(p, k);
  PrimeSlot* slot = nullptr;
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto& s = slots_[p];
    if (!s) s = std::make_unique<PrimeSlot>();
    slot = s.get();
  }
  std::lock_guard slot_lock(slot->mu);
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const auto opts = options_for(p);
  auto loaded = load(p, k, opts);
  if (!loaded) {
    const int prec = eigensystem_precision(p, k, opts);
    if (!slot->forms || slot->forms->prec() < prec) {
      slot->forms = std::make_unique<LevelOneForms<PrimeFieldRing>>(PrimeFieldRing(p), prec);
    }
    loaded = eigensystems(p, k, opts, slot->forms.get());
    store(p, k, opts, *loaded);
  }
  auto result = std::make_shared<const std::vector<EigenSystem>>(std::move(*loaded));
  std::lock_guard lock(mu_);
  return memo_.emplace(key, std::move(result)).first->second;
}

}  // namespace wz
