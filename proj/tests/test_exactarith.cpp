#include <cstdlib>
#include <random>
#include <set>

#include "doctest.h"
#include "wz/exactarith/ext_field.hpp"
#include "wz/exactarith/integer.hpp"
#include "wz/exactarith/matrix.hpp"
#include "wz/exactarith/poly.hpp"

using namespace wz;

namespace {

FpPoly fp_poly(std::uint32_t p, const std::vector<std::int64_t>& low_to_high) {
  return FpPoly::from_ints(Fp(p, 0), low_to_high);
}

// Rabin's test, written independently of factor(): f of degree n is irreducible
// iff x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for each prime r | n.
bool rabin_irreducible(const FpPoly& f) {
  const auto p = f.ref().modulus();
  const int n = f.degree();
  const auto x = FpPoly::x(f.ref());
  auto frob_power = [&](int e) {
    auto h = x % f;
    for (int i = 0; i < e; ++i) h = powmod(h, BigInt(static_cast<unsigned long>(p)), f);
    return h;
  };
  if (!(frob_power(n) == x % f)) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
    if (gcd(frob_power(n / r) - x, f).degree() != 0) return false;
  }
  return true;
}

// Irreducibility by trial division against every monic polynomial of degree <= n/2.
bool brute_irreducible(const FpPoly& f) {
  const auto p = f.ref().modulus();
  const int n = f.degree();
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(d), 0);
    for (;;) {
      auto c = digits;
      c.push_back(1);
      if ((f % fp_poly(p, c)).is_zero()) return false;
      int i = 0;
      while (i < d && ++digits[static_cast<std::size_t>(i)] == p) digits[static_cast<std::size_t>(i++)] = 0;
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("gcd examples") {
  CHECK(gcd(std::int64_t{25}, std::int64_t{106}) == 1);
  CHECK(gcd(std::int64_t{37}, std::int64_t{80}) == 1);
  CHECK(gcd(std::int64_t{15}, std::int64_t{60}) == 15);
  CHECK(gcd(BigInt(25), BigInt(106)) == 1);
  CHECK(gcd(BigInt(-12), BigInt(18)) == 6);
}

TEST_CASE("gcd is the greatest common divisor (brute force, |a|,|b| <= 200)") {
  for (std::int64_t a = -200; a <= 200; a += 3) {
    for (std::int64_t b = -200; b <= 200; ++b) {
      if (a == 0 && b == 0) continue;
      const auto g = gcd(a, b);
      REQUIRE(g > 0);
      REQUIRE(a % g == 0);
      REQUIRE(b % g == 0);
      for (std::int64_t c = 1; c <= 200; ++c) {
        if (a % c == 0 && b % c == 0) REQUIRE(g % c == 0);
      }
    }
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre_symbol(std::int64_t{2}, 107) == -1);
  CHECK(legendre_symbol(std::int64_t{1}, 107) == 1);
  CHECK(legendre_symbol(std::int64_t{3}, 7) == -1);
  CHECK(legendre_symbol(std::int64_t{14}, 7) == 0);
  CHECK_THROWS_AS(legendre_symbol(std::int64_t{3}, 9), std::invalid_argument);
  CHECK_THROWS_AS(legendre_symbol(std::int64_t{3}, 2), std::invalid_argument);

  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 29u, 79u}) {
    std::set<std::uint64_t> squares;
    for (std::uint64_t x = 1; x < p; ++x) squares.insert(x * x % p);
    for (std::int64_t a = -50; a <= 50; ++a) {
      const auto r = mod_floor(a, p);
      const int expected = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
      REQUIRE(legendre_symbol(a, p) == expected);
    }
  }
}

TEST_CASE("primes and primality") {
  CHECK(primes_up_to(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  for (std::uint64_t n = 0; n < 3000; ++n) {
    bool brute = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) brute = brute && (n % d != 0);
    REQUIRE(is_prime(n) == brute);
  }
  CHECK(is_prime(1000000007ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("exponent residues stay reduced") {
  ExponentResidue e(106, -25);
  CHECK(e.value() == 81);
  CHECK((e + ExponentResidue(106, 25)).value() == 0);
  CHECK((e * 3).value() == (81 * 3) % 106);
  CHECK((-ExponentResidue(6240, 1)).value() == 6239);
}

TEST_CASE("ext_field canonical moduli") {
  CHECK(ext_field(3, 2)->modulus == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1
  CHECK(ext_field(5, 2)->modulus == std::vector<std::uint32_t>{2, 0, 1});  // x^2 + 2
  auto f1 = ext_field(7, 1);
  CHECK(f1->degree == 1);
  CHECK(Gf(f1, Fp(7, 5)).to_fp() == Fp(7, 5));
  CHECK_THROWS_AS(ext_field(7, 9), DegreeOverflow);
  CHECK(ext_field(7, 9, 12)->degree == 9);
  CHECK(ext_field(11, 3) == ext_field(11, 3));
  CHECK(ext_field(11, 3)->modulus == ext_field(11, 3)->modulus);
}

TEST_CASE("ext_field modulus is the lexicographically least irreducible (brute force)") {
  const std::vector<std::pair<std::uint32_t, int>> grid{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 2}, {13, 4}};
  for (auto [p, d] : grid) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(d), 0);  // c_0 .. c_{d-1}
    std::vector<std::uint32_t> expected;
    // Walk the order with c_{d-1} most significant.
    for (;;) {
      auto c = digits;
      c.push_back(1);
      if (brute_irreducible(fp_poly(p, c))) {
        for (auto v : c) expected.push_back(static_cast<std::uint32_t>(v));
        break;
      }
      int i = 0;
      while (i < d && ++digits[static_cast<std::size_t>(i)] == p) digits[static_cast<std::size_t>(i++)] = 0;
      REQUIRE(i < d);
    }
    INFO("p=" << p << " d=" << d);
    CHECK(ext_field(p, d)->modulus == expected);
  }
}

TEST_CASE("factor_univariate examples") {
  auto f = factor(fp_poly(5, {-1, 0, 1}));
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == fp_poly(5, {1, 1}));
  CHECK(f[1].first == fp_poly(5, {-1, 1}));
  CHECK(f[0].second == 1);
  CHECK(f[1].second == 1);

  auto g = factor(fp_poly(3, {1, 0, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].first == fp_poly(3, {1, 0, 1}));
  CHECK(g[0].second == 1);

  auto h = factor(fp_poly(2, {0, 1, 0, 1}));
  REQUIRE(h.size() == 2);
  CHECK(h[0].first == fp_poly(2, {0, 1}));
  CHECK(h[0].second == 1);
  CHECK(h[1].first == fp_poly(2, {1, 1}));
  CHECK(h[1].second == 2);

  CHECK_THROWS_AS(factor(fp_poly(5, {1, 2})), std::invalid_argument);
}

TEST_CASE("factorization property: product equals input, factors irreducible") {
  std::mt19937_64 rng(12345);
  const auto primes = primes_up_to(100);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = primes[rng() % primes.size()];
    const int deg = 1 + static_cast<int>(rng() % 12);
    std::vector<std::int64_t> c;
    for (int i = 0; i < deg; ++i) c.push_back(static_cast<std::int64_t>(rng() % p));
    c.push_back(1);
    auto f = fp_poly(p, c);
    // Sprinkle in repeated factors now and then.
    if (trial % 5 == 0) f = f * fp_poly(p, {static_cast<std::int64_t>(rng() % p), 1}) * fp_poly(p, {static_cast<std::int64_t>(rng() % p), 1});
    const auto fac = factor(f);
    REQUIRE(expand(fac, f.ref()) == f);
    for (std::size_t i = 0; i < fac.size(); ++i) {
      REQUIRE(fac[i].first.is_monic());
      REQUIRE(rabin_irreducible(fac[i].first));
      if (i > 0) REQUIRE(canonical_less(fac[i - 1].first, fac[i].first));
    }
    REQUIRE(factor(f) == fac);
  }
}

TEST_CASE("factorization over an extension field") {
  Field f9 = ext_field(3, 2);
  const Gf ref(f9);
  // x^2 + 1 splits over F_9 into (x - i)(x + i) with i the generator.
  GfPoly g(ref, {ref.one(), ref.zero(), ref.one()});
  auto fac = factor(g);
  REQUIRE(fac.size() == 2);
  CHECK(expand(fac, ref) == g);
  auto rts = roots(g);
  REQUIRE(rts.size() == 2);
  for (const auto& r : rts) CHECK((r * r + ref.one()).is_zero());
}

TEST_CASE("extension field axioms on random samples") {
  const std::vector<std::pair<std::uint32_t, int>> grid{{3, 2}, {5, 3}, {7, 2}, {11, 4}, {101, 3}, {107, 2}};
  std::mt19937_64 rng(7);
  for (auto [p, d] : grid) {
    Field f = ext_field(p, d);
    const Gf ref(f);
    for (int i = 0; i < 1000; ++i) {
      const Gf a = ref.random(rng), b = ref.random(rng), c = ref.random(rng);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a * b == b * a);
      if (!a.is_zero()) REQUIRE(a * a.inv() == ref.one());
      REQUIRE(a.frobenius().pth_root() == a);
    }
    // The multiplicative group has order p^d - 1.
    const Gf g = Gf::generator(f);
    if (!g.is_zero()) CHECK(g.pow(BigInt(ref.field_order() - 1)) == ref.one());
  }
}

TEST_CASE("embedding and element degree") {
  Field f4 = ext_field(7, 4);
  Field f2 = ext_field(7, 2);
  // Embed F_49 into F_{7^4} by sending x to a root of its modulus.
  auto rts = roots_in(field_modulus(f2), f4);
  REQUIRE(rts.size() == 2);
  std::mt19937_64 rng(3);
  const Gf ref2(f2);
  for (int i = 0; i < 100; ++i) {
    const Gf a = ref2.random(rng), b = ref2.random(rng);
    REQUIRE(embed(a * b, rts[0]) == embed(a, rts[0]) * embed(b, rts[0]));
    REQUIRE(embed(a + b, rts[0]) == embed(a, rts[0]) + embed(b, rts[0]));
  }
  CHECK(element_degree(embed(Gf::generator(f2), rts[0])) == 2);
  CHECK(element_degree(Gf::generator(f4)) == 4);
  CHECK(element_degree(Gf(f4).from_int(3)) == 1);
}

TEST_CASE("matrix kernels over prime fields") {
  const Fp z(7, 0);
  Matrix<Fp> m(3, 3, z);
  // Rank-2 matrix: third row is the sum of the first two.
  const std::int64_t vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {5, 0, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Fp(7, vals[i][j]);
  CHECK(rank(m) == 2);
  CHECK(determinant(m, z).is_zero());
  auto ker = kernel(m, z);
  REQUIRE(ker.size() == 1);
  for (const auto& x : mat_vec(m, ker[0])) CHECK(x.is_zero());

  // Characteristic polynomial vs. brute-force determinant evaluation at every point of F_p.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t p = 13;
    const Fp ref(p, 0);
    const std::size_t n = 1 + rng() % 6;
    Matrix<Fp> a(n, n, ref);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = ref.random(rng);
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = ref;  // force singular structure
    const auto chi = charpoly(a, ref);
    REQUIRE(chi.degree() == static_cast<int>(n));
    for (std::uint32_t t = 0; t < p; ++t) {
      Matrix<Fp> s = a.map([](const Fp& v) { return -v; });
      for (std::size_t i = 0; i < n; ++i) s(i, i) += Fp(p, t);
      REQUIRE(chi.eval(Fp(p, t)) == determinant(s, ref));
    }
  }
}
