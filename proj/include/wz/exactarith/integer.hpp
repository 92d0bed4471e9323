#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wz {

/// Arbitrary-precision integer used by every exact computation.
using BigInt = mpz_class;

BigInt gcd(const BigInt& a, const BigInt& b);
std::int64_t gcd(std::int64_t a, std::int64_t b);

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

/// Legendre symbol (a|p) for an odd prime p. Throws std::invalid_argument otherwise.
int legendre_symbol(const BigInt& a, std::uint64_t p);
int legendre_symbol(std::int64_t a, std::uint64_t p);

/// Least nonnegative residue of a mod m (m > 0).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);
std::uint64_t mod_floor(const BigInt& a, std::uint64_t m);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
BigInt pow(const BigInt& base, unsigned long exp);

std::string to_string(const BigInt& n);
BigInt parse_bigint(const std::string& s);

/// An element of Z/MZ, used for exponents of tame characters (M = p-1 or p^2-1).
class ExponentResidue {
 public:
  ExponentResidue(std::uint64_t modulus, std::int64_t e);

  [[nodiscard]] std::uint64_t modulus() const { return modulus_; }
  [[nodiscard]] std::uint64_t value() const { return e_; }

  ExponentResidue operator+(const ExponentResidue& o) const;
  ExponentResidue operator-(const ExponentResidue& o) const;
  ExponentResidue operator-() const;
  ExponentResidue operator*(std::int64_t c) const;

  auto operator<=>(const ExponentResidue&) const = default;

 private:
  std::uint64_t modulus_;
  std::uint64_t e_;
};

}  // namespace wz
