#include "wz/ordscan.hpp"

#include <stdexcept>

#include "wz/parallel.hpp"

namespace wz {

namespace {

void require_scan_prime(std::uint32_t p) {
  if (p <= 13 || !is_prime(p)) throw std::invalid_argument("ordscan: p must be a prime > 13");
}

}  // namespace

std::vector<int> nonordinary_weights(std::uint32_t p, EigenProvider& provider) {
  require_scan_prime(p);
  std::vector<int> out;
  for (int k = 12; k < static_cast<int>(p); k += 2) {
    for (const auto& s : *provider.systems(p, k)) {
      if (s.ap.is_zero()) {
        out.push_back(k);
        break;
      }
    }
  }
  return out;
}

std::vector<int> nonordinary_weights(std::uint32_t p) {
  EigenProvider provider;
  return nonordinary_weights(p, provider);
}

Eligibility eligible_nonordinary(std::uint32_t p, EigenProvider& provider) {
  Eligibility e{p, {}, {}};
  for (int k : nonordinary_weights(p, provider)) {
    const WeightGcd w{k, gcd(std::int64_t{k} - 1, std::int64_t{p} + 1)};
    (w.gcd == 1 ? e.eligible : e.ineligible).push_back(w);
  }
  return e;
}

Eligibility eligible_nonordinary(std::uint32_t p) {
  EigenProvider provider;
  return eligible_nonordinary(p, provider);
}

std::vector<std::uint32_t> scan_nonordinary(std::uint32_t pmax, EigenProvider& provider, unsigned jobs) {
  if (pmax < 17) throw std::invalid_argument("scan_nonordinary: pmax must be >= 17");
  std::vector<std::uint32_t> primes;
  for (auto p : primes_up_to(pmax))
    if (p > 13) primes.push_back(p);
  std::vector<char> hit(primes.size(), 0);
  parallel_for(primes.size(), jobs, [&](std::size_t i) { hit[i] = !eligible_nonordinary(primes[i], provider).eligible.empty(); });
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (hit[i]) out.push_back(primes[i]);
  return out;
}

std::vector<std::uint32_t> scan_nonordinary(std::uint32_t pmax, unsigned jobs) {
  EigenProvider provider;
  return scan_nonordinary(pmax, provider, jobs);
}

}  // namespace wz
