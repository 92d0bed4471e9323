#pragma once

// Tame inertial characters of G_Qp and multisets of them.
//
// Level 1 characters are powers of the mod-p cyclotomic character eps (order
// p-1). Level 2 characters are powers of the fundamental character w2 (order
// p^2-1); on inertia w2^(p+1) = eps, and w2^e always appears together with its
// conjugate w2^(pe), so a level 2 entry stands for the pair {e, pe}.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wz/exactarith/integer.hpp"
#include "wz/exactarith/prime_field.hpp"
#include "wz/galoischecks.hpp"

namespace wz {

struct TameChar {
  std::uint32_t p = 0;
  int level = 1;
  /// Level 1: exponent of eps mod p-1. Level 2: least member of {e, pe mod p^2-1}.
  std::int64_t exponent = 0;

  [[nodiscard]] std::int64_t modulus() const;
  /// The conjugate exponent p*e mod p^2-1 (level 2 only).
  [[nodiscard]] std::int64_t conjugate() const;
  [[nodiscard]] int dim() const { return level; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const TameChar&, const TameChar&) = default;
  /// Level 1 before level 2, then by exponent.
  friend auto operator<=>(const TameChar& a, const TameChar& b) {
    if (a.level != b.level) return a.level <=> b.level;
    return a.exponent <=> b.exponent;
  }
};

/// Input to canonicalize().
struct RawChar {
  enum class Kind {
    Level1,      // eps^e, one dimension
    Level2Pair,  // w2^e + w2^(pe), two dimensions; e and pe are interchangeable
    Omega2,      // a single w2^e, one dimension; must pair with w2^(pe) unless (p+1) | e
  };
  std::uint32_t p;
  Kind kind;
  std::int64_t exponent;
};

class InertialType {
 public:
  InertialType() = default;
  /// Canonical form: level 2 exponents reduced to their least conjugate and
  /// not divisible by p+1, entries sorted.
  InertialType(std::uint32_t p, std::vector<TameChar> chars);

  [[nodiscard]] std::uint32_t p() const { return p_; }
  [[nodiscard]] const std::vector<TameChar>& chars() const { return chars_; }
  [[nodiscard]] int dim() const;
  /// Multiplicity of each distinct character.
  [[nodiscard]] std::map<TameChar, int> counts() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const InertialType&, const InertialType&) = default;

 private:
  std::uint32_t p_ = 0;
  std::vector<TameChar> chars_;
};

InertialType canonicalize(const std::vector<RawChar>& raw);

/// Multiset equality; throws if the primes differ.
bool type_equal(const InertialType& a, const InertialType& b);

/// Sym^(n-1)(eps^a + eps^b): exponents a(n-1-i) + b i mod p-1, i < n.
InertialType sym_power_level1(std::uint32_t p, std::int64_t a, std::int64_t b, int n);

/// Sym^(n-1)(rho_f tensor eps^((k-2)/2)) for split ordinary rho_f|I_p = 1 + eps^(1-k):
/// exponents (n-1)(k-2)/2 - (k-1)i mod p-1.
InertialType sym_ordinary(std::uint32_t p, int k, int n);

/// Raw w2 exponents a(n-1-i) + p a i mod p^2-1 of Sym^(n-1)(w2^a + w2^(pa)).
std::vector<std::int64_t> sym_level2_exponents(std::uint32_t p, std::int64_t a, int n);

/// Canonical type of Sym^(n-1)(w2^a + w2^(pa)). Requires (p+1) not dividing a.
InertialType sym_level2(std::uint32_t p, std::int64_t a, int n);

/// Inertial type of the reduction of rho_{n,m}: Sym^(n-1)(w2^(-m) + w2^(-pm)).
InertialType rho_nm_inertial(std::uint32_t p, int n, int m);

/// rho_{p,m} and rho_{p,1} have the same reduction on inertia.
bool rho_pm_independent(std::uint32_t p, int m);

/// Ordinary unit root data; alpha = a_p mod p must be nonzero.
struct OrdinaryLocalData {
  std::uint32_t p;
  int k;
  Fp alpha;
  OrdinaryLocalData(std::uint32_t p, int k, Fp alpha);
};

struct LiftCheck {
  Verdict verdict = Verdict::Fail;
  int n = 0;
  InertialType actual;
  InertialType target;
  std::map<std::string, std::string> description;  // symbolic lift on PASS, first mismatch on FAIL
};

/// Sym^(n-1) of a split ordinary rho_f against eps^0 + eps^-1 + ... + eps^-(n-1). n must be p-1 or p-2.
LiftCheck lift_check_ordinary(std::uint32_t p, int k, int n);
LiftCheck lift_check_ordinary(const OrdinaryLocalData& local, int n);

/// Sym^(p-1)(w2^(k-1) + w2^(p(k-1))) against the reduction of rho_{p,1}, given gcd(k-1, p+1) = 1.
LiftCheck lift_check_nonordinary(std::uint32_t p, int k);

}  // namespace wz
