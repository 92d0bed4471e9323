#include "wz/tame.hpp"

#include <algorithm>
#include <stdexcept>

namespace wz {

namespace {

std::int64_t level2_modulus(std::uint32_t p) { return std::int64_t{p} * p - 1; }

std::int64_t residue(std::int64_t a, std::int64_t m) {
  return static_cast<std::int64_t>(mod_floor(a, static_cast<std::uint64_t>(m)));
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(
      mul_mod(static_cast<std::uint64_t>(residue(a, m)), static_cast<std::uint64_t>(residue(b, m)), static_cast<std::uint64_t>(m)));
}

void require_prime(std::uint32_t p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

TameChar level1(std::uint32_t p, std::int64_t e) { return TameChar{p, 1, residue(e, std::int64_t{p} - 1)}; }

TameChar level2(std::uint32_t p, std::int64_t e) {
  const auto m = level2_modulus(p);
  e = residue(e, m);
  return TameChar{p, 2, std::min(e, mulmod(e, p, m))};
}

InertialType from_omega2(std::uint32_t p, const std::vector<std::int64_t>& exps) {
  std::vector<RawChar> raw;
  raw.reserve(exps.size());
  for (auto e : exps) raw.push_back(RawChar{p, RawChar::Kind::Omega2, e});
  return canonicalize(raw);
}

std::map<std::string, std::string> first_mismatch(const InertialType& actual, const InertialType& target) {
  const auto a = actual.counts();
  const auto t = target.counts();
  auto ia = a.begin();
  auto it = t.begin();
  while (ia != a.end() || it != t.end()) {
    if (it == t.end() || (ia != a.end() && ia->first < it->first)) {
      return {{"first_mismatch", ia->first.str()}, {"actual_count", std::to_string(ia->second)}, {"target_count", "0"}};
    }
    if (ia == a.end() || it->first < ia->first) {
      return {{"first_mismatch", it->first.str()}, {"actual_count", "0"}, {"target_count", std::to_string(it->second)}};
    }
    if (ia->second != it->second) {
      return {{"first_mismatch", ia->first.str()},
              {"actual_count", std::to_string(ia->second)},
              {"target_count", std::to_string(it->second)}};
    }
    ++ia;
    ++it;
  }
  return {};
}

}  // namespace

std::int64_t TameChar::modulus() const { return level == 1 ? std::int64_t{p} - 1 : level2_modulus(p); }

std::int64_t TameChar::conjugate() const {
  if (level != 2) throw std::logic_error("TameChar: conjugate of a level 1 character");
  return mulmod(exponent, p, modulus());
}

std::string TameChar::str() const {
  if (level == 1) return "eps^" + std::to_string(exponent);
  return "w2^{" + std::to_string(exponent) + "," + std::to_string(conjugate()) + "}";
}

InertialType::InertialType(std::uint32_t p, std::vector<TameChar> chars) : p_(p), chars_(std::move(chars)) {
  for (auto& c : chars_) {
    if (c.p != p_) throw std::invalid_argument("InertialType: characters for different primes");
    if (c.level == 1) {
      c = level1(p_, c.exponent);
    } else if (c.level == 2) {
      c = level2(p_, c.exponent);
      if (c.exponent % (std::int64_t{p_} + 1) == 0) {
        throw std::invalid_argument("InertialType: level 2 exponent divisible by p+1 factors through level 1");
      }
    } else {
      throw std::invalid_argument("InertialType: level must be 1 or 2");
    }
  }
  std::sort(chars_.begin(), chars_.end());
}

int InertialType::dim() const {
  int d = 0;
  for (const auto& c : chars_) d += c.dim();
  return d;
}

std::map<TameChar, int> InertialType::counts() const {
  std::map<TameChar, int> out;
  for (const auto& c : chars_) ++out[c];
  return out;
}

std::string InertialType::str() const {
  std::string s;
  for (const auto& [c, m] : counts()) {
    if (!s.empty()) s += " + ";
    s += (m > 1 ? std::to_string(m) + "*" : "") + c.str();
  }
  return s.empty() ? "0" : s;
}

InertialType canonicalize(const std::vector<RawChar>& raw) {
  if (raw.empty()) return InertialType{};
  const std::uint32_t p = raw.front().p;
  const std::int64_t m2 = level2_modulus(p);
  const std::int64_t q = std::int64_t{p} + 1;
  std::vector<TameChar> chars;
  std::map<std::int64_t, int> singles;
  for (const auto& r : raw) {
    if (r.p != p) throw std::invalid_argument("canonicalize: characters for different primes");
    switch (r.kind) {
      case RawChar::Kind::Level1:
        chars.push_back(level1(p, r.exponent));
        break;
      case RawChar::Kind::Level2Pair: {
        const auto e = residue(r.exponent, m2);
        if (e % q == 0) {
          chars.push_back(level1(p, e / q));
          chars.push_back(level1(p, e / q));
        } else {
          chars.push_back(level2(p, e));
        }
        break;
      }
      case RawChar::Kind::Omega2: {
        const auto e = residue(r.exponent, m2);
        if (e % q == 0) {
          chars.push_back(level1(p, e / q));
        } else {
          ++singles[e];
        }
        break;
      }
    }
  }
  // Single w2 exponents must come in conjugate pairs {e, pe}.
  for (const auto& [e, count] : singles) {
    const auto ce = mulmod(e, p, m2);
    if (ce < e) continue;
    auto it = singles.find(ce);
    if (it == singles.end() || it->second != count) {
      throw std::invalid_argument("canonicalize: w2^" + std::to_string(e) + " appears without its conjugate");
    }
    for (int i = 0; i < count; ++i) chars.push_back(TameChar{p, 2, e});
  }
  return InertialType(p, std::move(chars));
}

bool type_equal(const InertialType& a, const InertialType& b) {
  if (!a.chars().empty() && !b.chars().empty() && a.p() != b.p()) {
    throw std::invalid_argument("type_equal: types for different primes");
  }
  return a.chars() == b.chars();
}

InertialType sym_power_level1(std::uint32_t p, std::int64_t a, std::int64_t b, int n) {
  require_prime(p, "sym_power_level1");
  if (n < 1) throw std::invalid_argument("sym_power_level1: n must be >= 1");
  const std::int64_t m = std::int64_t{p} - 1;
  std::vector<TameChar> chars;
  chars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) chars.push_back(level1(p, mulmod(a, n - 1 - i, m) + mulmod(b, i, m)));
  return InertialType(p, std::move(chars));
}

InertialType sym_ordinary(std::uint32_t p, int k, int n) {
  if (k % 2 != 0) throw std::invalid_argument("sym_ordinary: weight must be even");
  // Twisting 1 + eps^(1-k) by eps^((k-2)/2) gives eps^((k-2)/2) + eps^(-k/2).
  return sym_power_level1(p, (k - 2) / 2, -k / 2, n);
}

std::vector<std::int64_t> sym_level2_exponents(std::uint32_t p, std::int64_t a, int n) {
  require_prime(p, "sym_level2");
  if (n < 1) throw std::invalid_argument("sym_level2: n must be >= 1");
  const auto m = level2_modulus(p);
  const auto pa = mulmod(a, p, m);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(residue(mulmod(a, n - 1 - i, m) + mulmod(pa, i, m), m));
  return out;
}

InertialType sym_level2(std::uint32_t p, std::int64_t a, int n) {
  if (residue(a, std::int64_t{p} + 1) == 0) {
    throw std::invalid_argument("sym_level2: exponent divisible by p+1 is a level 1 character");
  }
  return from_omega2(p, sym_level2_exponents(p, a, n));
}

InertialType rho_nm_inertial(std::uint32_t p, int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("rho_nm_inertial: n and m must be >= 1");
  return from_omega2(p, sym_level2_exponents(p, -std::int64_t{m}, n));
}

bool rho_pm_independent(std::uint32_t p, int m) {
  const int n = static_cast<int>(p);
  return type_equal(rho_nm_inertial(p, n, m), rho_nm_inertial(p, n, 1));
}

OrdinaryLocalData::OrdinaryLocalData(std::uint32_t p_, int k_, Fp alpha_) : p(p_), k(k_), alpha(alpha_) {
  if (alpha.modulus() != p) throw std::invalid_argument("OrdinaryLocalData: alpha must lie in F_p");
  if (alpha.is_zero()) throw std::invalid_argument("OrdinaryLocalData: alpha must be nonzero");
}

LiftCheck lift_check_ordinary(std::uint32_t p, int k, int n) {
  require_prime(p, "lift_check_ordinary");
  if (n != static_cast<int>(p) - 1 && n != static_cast<int>(p) - 2) {
    throw std::invalid_argument("lift_check_ordinary: n must be p-1 or p-2");
  }
  LiftCheck out;
  out.n = n;
  out.actual = sym_ordinary(p, k, n);
  out.target = sym_power_level1(p, 0, -1, n);
  if (type_equal(out.actual, out.target)) {
    out.verdict = Verdict::Pass;
    out.description = {
        {"characters", std::to_string(n) + " characters; the i-th is (unramified Teichmuller unit) x eps^-i, i = 0.." +
                           std::to_string(n - 1)},
        {"hodge_tate_weights", "0.." + std::to_string(n - 1)},
        {"duality", "psi_(n-1-i) = psi_i^-1"},
    };
  } else {
    out.verdict = Verdict::Fail;
    out.description = first_mismatch(out.actual, out.target);
  }
  return out;
}

LiftCheck lift_check_ordinary(const OrdinaryLocalData& local, int n) {
  auto out = lift_check_ordinary(local.p, local.k, n);
  if (out.verdict == Verdict::Pass) out.description["unit_root_alpha"] = std::to_string(local.alpha.value());
  return out;
}

LiftCheck lift_check_nonordinary(std::uint32_t p, int k) {
  require_prime(p, "lift_check_nonordinary");
  if (k < 2 || k >= static_cast<int>(p) || k % 2 != 0) {
    throw std::invalid_argument("lift_check_nonordinary: need even 2 <= k < p");
  }
  LiftCheck out;
  out.n = static_cast<int>(p);
  out.actual = sym_level2(p, k - 1, out.n);
  out.target = rho_nm_inertial(p, out.n, 1);
  const auto g = gcd(std::int64_t{k} - 1, std::int64_t{p} + 1);
  const bool same = type_equal(out.actual, out.target);
  if (g == 1 && same) {
    out.verdict = Verdict::Pass;
    out.description = {{"lift", "rho_{" + std::to_string(p) + ",1}, crystalline with Hodge-Tate weights 0.." + std::to_string(p - 1)},
                       {"gcd", "1"}};
  } else {
    out.verdict = Verdict::Fail;
    out.description = first_mismatch(out.actual, out.target);
    out.description["gcd"] = std::to_string(g);
  }
  return out;
}

}  // namespace wz
