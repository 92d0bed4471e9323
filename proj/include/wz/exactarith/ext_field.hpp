#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wz/exactarith/integer.hpp"
#include "wz/exactarith/poly.hpp"
#include "wz/exactarith/prime_field.hpp"

namespace wz {

inline constexpr int kDefaultMaxExtDegree = 8;

/// A finite field F_p[x]/(modulus). Instances are interned for the lifetime of
/// the process, so a Field handle is a stable pointer and field equality is
/// pointer equality.
struct FieldData {
  std::uint32_t p;
  int degree;
  std::vector<std::uint32_t> modulus;  // monic, lowest degree first, size degree + 1
  bool canonical;                      // true iff this is the canonical field for (p, degree)
};
using Field = const FieldData*;

class Gf;
using FpPoly = Poly<Fp>;
using GfPoly = Poly<Gf>;

/// Thrown when a requested extension degree exceeds the configured maximum.
class DegreeOverflow : public std::runtime_error {
 public:
  explicit DegreeOverflow(int degree)
      : std::runtime_error("extension degree " + std::to_string(degree) + " exceeds the configured maximum"),
        degree_(degree) {}
  [[nodiscard]] int degree() const { return degree_; }

 private:
  int degree_;
};

/// The canonical degree-d extension of F_p: its modulus is the lexicographically
/// least monic irreducible x^d + c_{d-1}x^{d-1} + ... + c_0 (c_{d-1} most significant).
Field ext_field(std::uint32_t p, int d, int max_degree = kDefaultMaxExtDegree);

/// F_p[x]/(g) for a monic irreducible g; not canonical unless g happens to be.
Field adhoc_field(const FpPoly& irreducible);

/// Canonical modulus as a polynomial over F_p.
FpPoly field_modulus(Field f);

/// Element of an extension field, stored as coefficients of 1, x, ..., x^{d-1}.
class Gf {
 public:
  Gf() = default;
  explicit Gf(Field f);
  Gf(Field f, std::vector<std::uint32_t> coeffs);
  Gf(Field f, const Fp& c);

  static Gf generator(Field f);

  [[nodiscard]] Field field() const { return f_; }
  [[nodiscard]] const std::vector<std::uint32_t>& coeffs() const { return c_; }
  [[nodiscard]] std::uint32_t characteristic() const { return f_->p; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool in_prime_field() const;
  /// The F_p value when in_prime_field(); throws otherwise.
  [[nodiscard]] Fp to_fp() const;

  [[nodiscard]] Gf zero() const { return Gf(f_); }
  [[nodiscard]] Gf one() const;
  [[nodiscard]] Gf from_int(std::int64_t v) const;
  [[nodiscard]] BigInt field_order() const;

  Gf& operator+=(const Gf& o);
  Gf& operator-=(const Gf& o);
  Gf& operator*=(const Gf& o);
  Gf& operator*=(const Fp& s);
  Gf& operator/=(const Gf& o) { return *this *= o.inv(); }
  friend Gf operator+(Gf a, const Gf& b) { return a += b; }
  friend Gf operator-(Gf a, const Gf& b) { return a -= b; }
  friend Gf operator*(Gf a, const Gf& b) { return a *= b; }
  friend Gf operator*(Gf a, const Fp& s) { return a *= s; }
  friend Gf operator/(Gf a, const Gf& b) { return a /= b; }
  Gf operator-() const;

  friend bool operator==(const Gf& a, const Gf& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

  [[nodiscard]] Gf pow(const BigInt& e) const;
  [[nodiscard]] Gf pow(std::uint64_t e) const { return pow(BigInt(static_cast<unsigned long>(e))); }
  [[nodiscard]] Gf inv() const;
  [[nodiscard]] Gf frobenius() const { return pow(static_cast<std::uint64_t>(f_->p)); }
  [[nodiscard]] Gf pth_root() const;

  template <class Rng>
  [[nodiscard]] Gf random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, f_->p - 1);
    std::vector<std::uint32_t> c(static_cast<std::size_t>(f_->degree));
    for (auto& v : c) v = dist(rng);
    return Gf(f_, std::move(c));
  }

  /// Coefficient vectors compared from the top coefficient down.
  friend std::strong_ordering canonical_compare(const Gf& a, const Gf& b);

  /// "c0" for prime-field values, otherwise "[c0,c1,...]".
  [[nodiscard]] std::string str() const;

 private:
  Field f_ = nullptr;
  std::vector<std::uint32_t> c_;
};

/// Degree of the subfield of F_{p^d} generated by a over F_p.
int element_degree(const Gf& a);

/// Image of a under the embedding F_p[x]/(m_src) -> target sending x to image_of_x.
Gf embed(const Gf& a, const Gf& image_of_x);

/// Distinct roots in `target` of a polynomial with F_p coefficients, canonically ordered.
std::vector<Gf> roots_in(const FpPoly& f, Field target);

}  // namespace wz
