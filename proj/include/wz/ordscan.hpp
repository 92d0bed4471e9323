#pragma once

// Scans over primes and weights for non-ordinary eigensystems and the gcd
// eligibility filter applied to them.

#include <cstdint>
#include <vector>

#include "wz/hecke.hpp"

namespace wz {

struct WeightGcd {
  int k;
  std::int64_t gcd;  // gcd(k - 1, p + 1)
  friend bool operator==(const WeightGcd&, const WeightGcd&) = default;
};

struct Eligibility {
  std::uint32_t p;
  std::vector<WeightGcd> eligible;    // gcd == 1
  std::vector<WeightGcd> ineligible;  // gcd > 1, kept with the failing gcd
};

/// Even weights 12 <= k < p carrying a mod-p eigensystem with a_p = 0, ascending.
std::vector<int> nonordinary_weights(std::uint32_t p, EigenProvider& provider);
std::vector<int> nonordinary_weights(std::uint32_t p);

Eligibility eligible_nonordinary(std::uint32_t p, EigenProvider& provider);
Eligibility eligible_nonordinary(std::uint32_t p);

/// Primes p <= pmax with at least one eligible non-ordinary weight, ascending.
/// Primes are processed on `jobs` threads (0 = hardware concurrency).
std::vector<std::uint32_t> scan_nonordinary(std::uint32_t pmax, EigenProvider& provider, unsigned jobs = 0);
std::vector<std::uint32_t> scan_nonordinary(std::uint32_t pmax, unsigned jobs = 0);

}  // namespace wz
