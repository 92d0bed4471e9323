#include "wz/exactarith/ext_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace wz {
namespace {

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, int>, Field> canonical;
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::unique_ptr<FieldData>> all;
};

Registry& registry() {
  static Registry r;
  return r;
}

Field intern(std::uint32_t p, std::vector<std::uint32_t> modulus, bool canonical) {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto key = std::make_pair(p, modulus);
  auto it = reg.all.find(key);
  if (it == reg.all.end()) {
    auto data = std::make_unique<FieldData>(
        FieldData{p, static_cast<int>(modulus.size()) - 1, std::move(modulus), canonical});
    it = reg.all.emplace(std::move(key), std::move(data)).first;
  } else if (canonical && !it->second->canonical) {
    // An ad hoc field registered first with the canonical modulus.
    it->second->canonical = true;
  }
  return it->second.get();
}

std::vector<std::uint32_t> reduce_product(Field f, const std::vector<std::uint64_t>& prod) {
  const auto p = std::uint64_t{f->p};
  const int d = f->degree;
  std::vector<std::uint64_t> r(prod.size());
  for (std::size_t i = 0; i < prod.size(); ++i) r[i] = prod[i] % p;
  for (int i = static_cast<int>(r.size()) - 1; i >= d; --i) {
    const std::uint64_t c = r[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    // x^i = x^{i-d} * x^d and x^d = -(m_0 + ... + m_{d-1} x^{d-1}).
    for (int j = 0; j < d; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - d + j)];
      slot = (slot + (p - c) * f->modulus[static_cast<std::size_t>(j)]) % p;
    }
    r[static_cast<std::size_t>(i)] = 0;
  }
  std::vector<std::uint32_t> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d && i < static_cast<int>(r.size()); ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(r[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

Field ext_field(std::uint32_t p, int d, int max_degree) {
  if (d < 1) throw std::invalid_argument("ext_field: degree must be >= 1");
  if (d > max_degree) throw DegreeOverflow(d);
  if (!is_prime(p)) throw std::invalid_argument("ext_field: p must be prime");
  {
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto it = reg.canonical.find({p, d});
    if (it != reg.canonical.end()) return it->second;
  }
  // Enumerate c_{d-1} ... c_0 as the base-p digits of a counter, most significant first.
  const Fp ref(p, 0);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::vector<Fp> coeffs;
    for (int i = 0; i < d; ++i) coeffs.push_back(Fp::from_reduced(p, digits[static_cast<std::size_t>(i)]));
    coeffs.push_back(ref.one());
    FpPoly candidate(ref, coeffs);
    if (is_irreducible(candidate)) {
      std::vector<std::uint32_t> modulus(digits);
      modulus.push_back(1);
      Field f = intern(p, std::move(modulus), true);
      auto& reg = registry();
      std::lock_guard lock(reg.mu);
      return reg.canonical.emplace(std::make_pair(p, d), f).first->second;
    }
    int i = 0;
    while (i < d && ++digits[static_cast<std::size_t>(i)] == p) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == d) throw std::logic_error("ext_field: no irreducible polynomial found");
  }
}

Field adhoc_field(const FpPoly& irreducible) {
  if (irreducible.degree() < 1 || !irreducible.is_monic()) {
    throw std::invalid_argument("adhoc_field: modulus must be monic of degree >= 1");
  }
  std::vector<std::uint32_t> modulus;
  for (const auto& c : irreducible.coeffs()) modulus.push_back(c.value());
  return intern(irreducible.ref().modulus(), std::move(modulus), false);
}

FpPoly field_modulus(Field f) {
  std::vector<Fp> c;
  for (auto v : f->modulus) c.push_back(Fp::from_reduced(f->p, v));
  return FpPoly(Fp(f->p, 0), std::move(c));
}

Gf::Gf(Field f) : f_(f), c_(static_cast<std::size_t>(f->degree), 0) {}

Gf::Gf(Field f, std::vector<std::uint32_t> coeffs) : f_(f), c_(std::move(coeffs)) {
  if (c_.size() > static_cast<std::size_t>(f->degree)) {
    std::vector<std::uint64_t> wide(c_.begin(), c_.end());
    c_ = reduce_product(f, wide);
  } else {
    c_.resize(static_cast<std::size_t>(f->degree), 0);
    for (auto& v : c_) v %= f->p;
  }
}

Gf::Gf(Field f, const Fp& c) : Gf(f) {
  if (c.modulus() != f->p) throw std::invalid_argument("Gf: characteristic mismatch");
  c_[0] = c.value();
}

Gf Gf::generator(Field f) {
  if (f->degree == 1) {
    // x reduces to -m_0.
    return Gf(f, std::vector<std::uint32_t>{(f->p - f->modulus[0]) % f->p});
  }
  std::vector<std::uint32_t> c(static_cast<std::size_t>(f->degree), 0);
  c[1] = 1;
  return Gf(f, std::move(c));
}

bool Gf::is_zero() const {
  for (auto v : c_) {
    if (v != 0) return false;
  }
  return true;
}

bool Gf::in_prime_field() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

Fp Gf::to_fp() const {
  if (!in_prime_field()) throw std::domain_error("Gf: element is not in the prime field");
  return Fp::from_reduced(f_->p, c_[0]);
}

Gf Gf::one() const {
  Gf r(f_);
  r.c_[0] = 1 % f_->p;
  return r;
}

Gf Gf::from_int(std::int64_t v) const { return Gf(f_, Fp(f_->p, v)); }

BigInt Gf::field_order() const { return wz::pow(BigInt(static_cast<unsigned long>(f_->p)), static_cast<unsigned long>(f_->degree)); }

Gf& Gf::operator+=(const Gf& o) {
  if (o.f_ != f_) throw std::invalid_argument("Gf: field mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::uint64_t s = std::uint64_t{c_[i]} + o.c_[i];
    c_[i] = static_cast<std::uint32_t>(s >= f_->p ? s - f_->p : s);
  }
  return *this;
}

Gf& Gf::operator-=(const Gf& o) {
  if (o.f_ != f_) throw std::invalid_argument("Gf: field mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : static_cast<std::uint32_t>(std::uint64_t{c_[i]} + f_->p - o.c_[i]);
  }
  return *this;
}

Gf Gf::operator-() const {
  Gf r(f_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] == 0 ? 0 : f_->p - c_[i];
  return r;
}

Gf& Gf::operator*=(const Gf& o) {
  if (o.f_ != f_) throw std::invalid_argument("Gf: field mismatch");
  const int d = f_->degree;
  const std::uint64_t p = f_->p;
  if (d == 1) {
    c_[0] = static_cast<std::uint32_t>(std::uint64_t{c_[0]} * o.c_[0] % p);
    return *this;
  }
  std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * d - 1), 0);
  for (int i = 0; i < d; ++i) {
    const std::uint64_t a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (int j = 0; j < d; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = (slot + a * o.c_[static_cast<std::size_t>(j)]) % p;
    }
  }
  c_ = reduce_product(f_, prod);
  return *this;
}

Gf& Gf::operator*=(const Fp& s) {
  if (s.modulus() != f_->p) throw std::invalid_argument("Gf: characteristic mismatch");
  for (auto& v : c_) v = static_cast<std::uint32_t>(std::uint64_t{v} * s.value() % f_->p);
  return *this;
}

Gf Gf::pow(const BigInt& e) const {
  if (e < 0) return inv().pow(BigInt(-e));
  Gf result = one();
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result *= result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= *this;
  }
  return result;
}

Gf Gf::inv() const {
  if (is_zero()) throw std::domain_error("Gf: inverse of zero");
  return pow(BigInt(field_order() - 2));
}

Gf Gf::pth_root() const {
  // Frobenius has order d, so its inverse is x -> x^(p^(d-1)).
  return pow(wz::pow(BigInt(static_cast<unsigned long>(f_->p)), static_cast<unsigned long>(f_->degree - 1)));
}

std::strong_ordering canonical_compare(const Gf& a, const Gf& b) {
  if (a.f_ != b.f_) {
    if (a.f_->degree != b.f_->degree) return a.f_->degree <=> b.f_->degree;
    return a.f_->modulus <=> b.f_->modulus;
  }
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  }
  return std::strong_ordering::equal;
}

std::string Gf::str() const {
  if (in_prime_field()) return std::to_string(c_[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + "]";
}

int element_degree(const Gf& a) {
  Gf conj = a.frobenius();
  int deg = 1;
  while (!(conj == a)) {
    conj = conj.frobenius();
    ++deg;
  }
  return deg;
}

Gf embed(const Gf& a, const Gf& image_of_x) {
  Gf acc = image_of_x.zero();
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * image_of_x + image_of_x.from_int(c[i]);
  }
  return acc;
}

std::vector<Gf> roots_in(const FpPoly& f, Field target) {
  std::vector<Gf> lifted;
  const Gf ref(target);
  for (const auto& c : f.coeffs()) lifted.push_back(Gf(target, c));
  return roots(GfPoly(ref, std::move(lifted)));
}

}  // namespace wz
