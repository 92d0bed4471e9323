#include <functional>

#include "doctest.h"
#include "wz/galoischecks.hpp"

using namespace wz;

namespace {

EigenProvider& shared() {
  static EigenProvider prov;
  return prov;
}

const EigenSystem& system_at(std::uint32_t p, int k, std::size_t i = 0) { return shared().systems(p, k)->at(i); }

// A degree-one system whose expansion is a_n = coeff(n) mod p, n < prec.
EigenSystem synthetic(std::uint32_t p, int k, int prec, const std::function<std::int64_t(int)>& coeff) {
  EigenSystem s;
  s.p = p;
  s.k = k;
  s.field = ext_field(p, 1);
  for (int n = 0; n < prec; ++n) s.expansion.push_back(Gf(s.field, Fp(p, coeff(n))));
  s.ap = s.expansion.size() > p ? s.expansion[p] : Gf(s.field);
  s.ordinary = !s.ap.is_zero();
  return s;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  for (; e > 0; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

// sigma_{k-1}(n) mod p by trial division.
std::int64_t sigma_mod(int n, int k, std::int64_t p) {
  if (n == 0) return 0;
  std::int64_t s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s = (s + powmod(d, k - 1, p)) % p;
  return s;
}

std::vector<std::uint32_t> small_primes(std::uint32_t p, std::uint32_t up_to) {
  std::vector<std::uint32_t> out;
  for (auto l : primes_up_to(up_to))
    if (l != p) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("companion exponent calibration at p = 107, k = 26") {
  const auto& f = system_at(107, 26);
  const auto& targets = *shared().systems(107, 82);
  const auto ells = small_primes(107, 13);
  int plus = 0, minus = 0;
  for (const auto& g : targets) {
    plus += companion_relation_holds(f, g, ExponentResidue(106, 25), ells);
    minus += companion_relation_holds(f, g, ExponentResidue(106, -25), ells);
  }
  CHECK(plus + minus >= 1);
  CHECK((plus == 0) != (minus == 0));
  CHECK(plus >= 1);
  CHECK(companion_exponent(107, 26) == ExponentResidue(106, 25));
}

TEST_CASE("companion_match and split_verdict at p = 107") {
  const auto& f = system_at(107, 26);
  const auto m = companion_match(107, 26, f, shared());
  REQUIRE(m.has_value());
  CHECK(m->companion.k == 82);
  CHECK(m->exponent.value() == 25);
  const auto v = split_verdict(107, 26, f, shared());
  CHECK(v.verdict == Verdict::Pass);
  CHECK(v.witness.at("companion_weight") == "82");
  CHECK(!v.reason.empty());

  CompanionOptions strict;
  strict.strict = true;
  const auto ms = companion_match(107, 26, f, shared(), strict);
  REQUIRE(ms.has_value());
  CHECK(ms->primes_compared.size() > m->primes_compared.size());
  CHECK(ms->primes_compared.back() == 103);
}

TEST_CASE("no cuspidal target below weight 12") {
  // p + 1 - k = 8
  const auto& f = system_at(107, 100);
  REQUIRE(f.ordinary);
  CHECK(!companion_match(107, 100, f, shared()).has_value());
  const auto v = split_verdict(107, 100, f, shared());
  CHECK(v.verdict == Verdict::Fail);
  CHECK(v.witness.at("systems_searched") == "0");
}

TEST_CASE("first ordinary non-split case: p = 29, k = 12") {
  // Every smaller (p, k) with a cuspidal companion weight is split; (23, 12) pairs with itself.
  CHECK(companion_match(23, 12, system_at(23, 12), shared()).has_value());
  const auto& f = system_at(29, 12);
  REQUIRE(f.ordinary);
  CHECK(!companion_match(29, 12, f, shared()).has_value());
  CHECK(split_verdict(29, 12, f, shared()).verdict == Verdict::Fail);

  // Oracle from integer q-expansions: both spaces are one-dimensional, so the
  // relation a_l(Delta) = l^11 a_l(g_18) mod 29 must fail at some small l.
  const IntegerRing ZZ{};
  const auto d = miller_basis(12, 20, ZZ).forms.at(0);
  const auto g = miller_basis(18, 20, ZZ).forms.at(0);
  bool differs = false;
  for (int l : {2, 3, 5, 7, 11, 13}) {
    const auto lhs = static_cast<std::int64_t>(mod_floor(d[l], 29));
    const auto rhs = powmod(l, 11, 29) * static_cast<std::int64_t>(mod_floor(g[l], 29)) % 29;
    differs = differs || lhs != rhs;
  }
  CHECK(differs);
  CHECK(mod_floor(d[2], 29) == 5);
  CHECK(mod_floor(g[2], 29) == 23);
}

TEST_CASE("split_verdict requires an ordinary system") {
  const auto& f = system_at(59, 16);
  REQUIRE(!f.ordinary);
  CHECK_THROWS_AS(split_verdict(59, 16, f, shared()), std::invalid_argument);
}

TEST_CASE("companion symmetry on every match") {
  int matches = 0;
  for (std::uint32_t p : {23u, 29u, 31u, 37u, 41u, 43u, 47u, 53u, 59u, 61u, 67u, 71u, 73u, 79u, 83u, 107u, 139u}) {
    for (int k = 12; static_cast<int>(p) + 1 - k >= 12; k += 2) {
      for (const auto& f : *shared().systems(p, k)) {
        if (!f.ordinary) continue;
        const auto m = companion_match(p, k, f, shared());
        if (!m) continue;
        ++matches;
        const int kc = static_cast<int>(p) + 1 - k;
        const auto back = companion_match(p, kc, m->companion, shared());
        REQUIRE_MESSAGE(back.has_value(), "p = " << p << " k = " << k);
        CHECK(back->exponent == -m->exponent);
        CHECK(back->companion.k == k);
        CHECK(companion_relation_holds(f, back->companion, ExponentResidue(p - 1, 0), small_primes(p, 13)));
      }
    }
  }
  CHECK(matches > 0);
}

TEST_CASE("ord_irreducible") {
  CHECK(ord_irreducible(107, 26, system_at(107, 26), 50).verdict == Verdict::Pass);

  const auto eis = synthetic(107, 26, 108, [](int n) { return sigma_mod(n, 26, 107); });
  const auto v = ord_irreducible(107, 26, eis, 50);
  CHECK(v.verdict == Verdict::Fail);
  CHECK(v.witness.at("exponent") == "0");

  // Eisenstein at l = 2 only; l = 3 breaks the pattern.
  const auto near = synthetic(107, 26, 108, [](int n) { return sigma_mod(n, 26, 107) + (n == 3 ? 1 : 0); });
  const auto tight = ord_irreducible(107, 26, near, 2);
  CHECK(tight.verdict == Verdict::Inconclusive);
  CHECK(tight.witness.at("bound") == "2");
  CHECK(ord_irreducible(107, 26, near, 50).verdict != Verdict::Inconclusive);
}

TEST_CASE("not_dihedral_ordinary") {
  const auto v = not_dihedral_ordinary(107, system_at(107, 26), 13);
  CHECK(v.verdict == Verdict::Pass);
  CHECK(v.witness.at("prime") == "2");
  CHECK(v.witness.at("a_l") == "59");
  CHECK(v.witness.at("p_star") == "-107");
  CHECK(legendre_symbol(std::int64_t{2}, 107) == -1);

  const auto zero = synthetic(109, 12, 110, [](int n) { return n == 1 ? 1 : 0; });
  const auto z = not_dihedral_ordinary(109, zero, 50);
  CHECK(z.verdict == Verdict::Inconclusive);
  CHECK(z.witness.at("p_star") == "109");
  CHECK(p_star(109) == 109);
  CHECK(p_star(107) == -107);
  CHECK_THROWS(not_dihedral_ordinary(5, zero, 50));
}

TEST_CASE("not_exceptional_trace") {
  const auto v = not_exceptional_trace(107, 26, system_at(107, 26), 13);
  CHECK(v.verdict == Verdict::Pass);
  CHECK(std::stoi(v.witness.at("prime")) <= 13);
  // With k = 1 the projective trace is a_l^2.
  CHECK(not_exceptional_trace(107, 1, synthetic(107, 1, 60, [](int) { return 2; }), 50).verdict ==
        Verdict::Inconclusive);
  CHECK(not_exceptional_trace(107, 1, synthetic(107, 1, 60, [](int) { return 1; }), 50).verdict ==
        Verdict::Inconclusive);
}

TEST_CASE("nonord_image_chain") {
  const auto c = nonord_image_chain(79, 38);
  REQUIRE(c.size() == 3);
  for (const auto& v : c) CHECK(v.verdict == Verdict::Pass);
  CHECK(c[1].witness.at("cyclic_order") == "80");
  CHECK_THROWS_WITH_AS(nonord_image_chain(59, 16), doctest::Contains("15"), std::invalid_argument);
  const auto d = nonord_image_chain(79, 42);
  CHECK(d[2].id == "not_dihedral");
  CHECK(d[2].verdict == Verdict::Pass);
  CHECK(d[2].witness.at("dihedral_residue") == "41");
  CHECK(d[2].witness.at("k_mod_p_plus_1") == "42");

  for (std::uint32_t p = 7; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    for (int k = 2; k < static_cast<int>(p); k += 2) {
      if (gcd(std::int64_t{k} - 1, std::int64_t{p} + 1) != 1) continue;
      for (const auto& v : nonord_image_chain(p, k)) CHECK(v.verdict != Verdict::Fail);
    }
  }
}

TEST_CASE("large_image_verdict") {
  CHECK(large_image_verdict(107, 26, system_at(107, 26), Mode::Ordinary).verdict == Verdict::Pass);
  const auto& g = system_at(79, 38);
  REQUIRE(!g.ordinary);
  CHECK(large_image_verdict(79, 38, g, Mode::Nonordinary).verdict == Verdict::Pass);
  const auto blank = synthetic(107, 26, 108, [](int n) { return n == 1 ? 1 : 0; });
  CHECK(large_image_verdict(107, 26, blank, Mode::Ordinary, 50).verdict == Verdict::Inconclusive);
}

TEST_CASE("combine_verdicts ordering") {
  const CheckVerdict pass{"a", Verdict::Pass, {}, ""}, fail{"b", Verdict::Fail, {}, ""},
      inc{"c", Verdict::Inconclusive, {}, ""};
  CHECK(combine_verdicts("x", {pass, pass}).verdict == Verdict::Pass);
  CHECK(combine_verdicts("x", {pass, inc}).verdict == Verdict::Inconclusive);
  CHECK(combine_verdicts("x", {inc, fail, pass}).verdict == Verdict::Fail);
  CHECK(verdict_from_string(to_string(Verdict::Inconclusive)) == Verdict::Inconclusive);
  CHECK(mode_from_string("nonordinary") == Mode::Nonordinary);
}

TEST_CASE("image verdicts are monotone in the bound and deterministic") {
  const int bounds[] = {2, 3, 5, 7, 11, 13, 20, 30, 50};
  for (std::uint32_t p : {59u, 107u, 139u}) {
    for (int k = 12; k < static_cast<int>(p); k += 2) {
      for (const auto& f : *shared().systems(p, k)) {
        if (!f.ordinary) continue;
        using Check = std::function<CheckVerdict(int)>;
        const Check checks[] = {
            [&](int b) { return ord_irreducible(p, k, f, b); },
            [&](int b) { return not_dihedral_ordinary(p, f, b); },
            [&](int b) { return not_exceptional_trace(p, k, f, b); },
        };
        for (const auto& check : checks) {
          bool passed = false;
          for (int b : bounds) {
            const auto v = check(b);
            if (passed) CHECK(v.verdict == Verdict::Pass);
            passed = passed || v.verdict == Verdict::Pass;
          }
          CHECK(check(50) == check(50));
        }
      }
    }
  }
}
