#include "wz/exactarith/integer.hpp"

#include <numeric>
#include <stdexcept>

namespace wz {

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  if (n < 169) return true;
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("mod_floor: zero modulus");
  const auto mm = static_cast<__int128>(m);
  __int128 r = static_cast<__int128>(a) % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_floor(const BigInt& a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("mod_floor: zero modulus");
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

int legendre_symbol(const BigInt& a, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre_symbol: modulus must be an odd prime");
  const std::uint64_t r = mod_floor(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre_symbol(std::int64_t a, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre_symbol: modulus must be an odd prime");
  const std::uint64_t r = mod_floor(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

BigInt parse_bigint(const std::string& s) {
  BigInt n;
  if (s.empty() || n.set_str(s, 10) != 0) throw std::invalid_argument("parse_bigint: not a decimal integer: " + s);
  return n;
}

ExponentResidue::ExponentResidue(std::uint64_t modulus, std::int64_t e)
    : modulus_(modulus), e_(mod_floor(e, modulus)) {}

ExponentResidue ExponentResidue::operator+(const ExponentResidue& o) const {
  if (o.modulus_ != modulus_) throw std::invalid_argument("ExponentResidue: modulus mismatch");
  ExponentResidue r = *this;
  r.e_ = (e_ + o.e_) % modulus_;
  return r;
}

ExponentResidue ExponentResidue::operator-() const {
  ExponentResidue r = *this;
  r.e_ = (modulus_ - e_) % modulus_;
  return r;
}

ExponentResidue ExponentResidue::operator-(const ExponentResidue& o) const { return *this + (-o); }

ExponentResidue ExponentResidue::operator*(std::int64_t c) const {
  ExponentResidue r = *this;
  r.e_ = mul_mod(e_, mod_floor(c, modulus_), modulus_);
  return r;
}

}  // namespace wz
