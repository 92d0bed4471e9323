#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "wz/exactarith/integer.hpp"

namespace wz {

/// Element of the prime field F_p. The modulus travels with the value so that
/// mixing elements of different fields is caught at runtime.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t p, std::int64_t v) : p_(p), v_(static_cast<std::uint32_t>(mod_floor(v, p))) {}
  Fp(std::uint32_t p, const BigInt& v) : p_(p), v_(static_cast<std::uint32_t>(mod_floor(v, p))) {}

  static Fp from_reduced(std::uint32_t p, std::uint32_t v) {
    Fp r;
    r.p_ = p;
    r.v_ = v;
    return r;
  }

  [[nodiscard]] std::uint32_t modulus() const { return p_; }
  [[nodiscard]] std::uint32_t value() const { return v_; }
  [[nodiscard]] std::uint32_t characteristic() const { return p_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }

  [[nodiscard]] Fp zero() const { return from_reduced(p_, 0); }
  [[nodiscard]] Fp one() const { return from_reduced(p_, 1 % p_); }
  [[nodiscard]] Fp from_int(std::int64_t v) const { return Fp(p_, v); }
  [[nodiscard]] BigInt field_order() const { return BigInt(static_cast<unsigned long>(p_)); }

  Fp& operator+=(const Fp& o) {
    check(o);
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t{v_} + p_ - o.v_);
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    v_ = static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const { return from_reduced(p_, v_ == 0 ? 0 : p_ - v_); }

  friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }

  [[nodiscard]] Fp pow(std::uint64_t e) const { return from_reduced(p_, static_cast<std::uint32_t>(pow_mod(v_, e, p_))); }
  [[nodiscard]] Fp pow(const BigInt& e) const {
    // Exponents only matter modulo p-1 for nonzero bases.
    if (v_ == 0) return e == 0 ? one() : zero();
    return pow(static_cast<std::uint64_t>(mod_floor(e, p_ - 1)));
  }
  [[nodiscard]] Fp inv() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return pow(std::uint64_t{p_} - 2);
  }
  /// Frobenius is the identity on F_p, so is its inverse.
  [[nodiscard]] Fp frobenius() const { return *this; }
  [[nodiscard]] Fp pth_root() const { return *this; }

  template <class Rng>
  [[nodiscard]] Fp random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
    return from_reduced(p_, dist(rng));
  }

  /// Total order used for canonical sorting: by residue as an integer in [0, p).
  friend std::strong_ordering canonical_compare(const Fp& a, const Fp& b) { return a.v_ <=> b.v_; }

  [[nodiscard]] std::string str() const { return std::to_string(v_); }

 private:
  void check(const Fp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Fp: modulus mismatch");
  }

  std::uint32_t p_ = 0;
  std::uint32_t v_ = 0;
};

}  // namespace wz
