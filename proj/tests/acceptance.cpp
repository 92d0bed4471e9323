// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wz/certify.hpp"
#include "wz/tame.hpp"

using namespace wz;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Accumulates failures with a short note each.
struct Ledger {
  Outcome out;
  int failures = 0;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    out.ok = false;
    if (++failures > 5) return;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += failures == 5 ? "..." : what;
  }
};

CertifyOptions serial() {
  CertifyOptions o;
  o.jobs = 1;
  return o;
}

const Candidate* candidate(const Certificate& c, int k) {
  for (const auto& cand : c.candidates)
    if (cand.k == k) return &cand;
  return nullptr;
}

std::string witness(const Candidate* c, const std::string& id, const std::string& key) {
  if (!c) return "";
  const auto* v = c->check(id);
  if (!v) return "";
  auto it = v->witness.find(key);
  return it == v->witness.end() ? "" : it->second;
}

bool passed(const Candidate* c, const std::string& id) {
  if (!c) return false;
  const auto* v = c->check(id);
  return v && v->verdict == Verdict::Pass;
}

std::string list(const std::vector<std::uint32_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

Outcome criterion1() {
  Ledger l;
  const auto ap = exact_ap_dim1(26, 107);
  l.require(ap == BigInt("35830422465487817813321292"), "a_107 = " + to_string(ap));
  l.require(mod_floor(ap, 107) == 106, "a_107 mod 107 = " + std::to_string(mod_floor(ap, 107)));
  return l.out;
}

Outcome criterion2() {
  Ledger l;
  const auto b = miller_basis(26, 5, IntegerRing{});
  l.require(b.dim() == 1, "dim S_26 = " + std::to_string(b.dim()));
  if (b.dim() == 1) {
    const auto& f = b.forms[0];
    l.require(f[0] == 0 && f[1] == 1 && f[2] == -48 && f[3] == -195804, "unexpected leading coefficients");
  }
  return l.out;
}

Outcome criterion3() {
  Ledger l;
  EigenProvider prov;
  const auto c = certify_ordinary(107, prov, serial());
  l.require(c.conclusion == Conclusion::Certified, "conclusion " + to_string(c.conclusion));
  const auto* k26 = candidate(c, 26);
  l.require(k26 && k26->conclusion == Conclusion::Certified, "k = 26 not certified");
  l.require(k26 && k26->n_values == std::vector<int>{105, 106}, "n values");
  l.require(witness(k26, "gcd", "k_minus_1") == "25" && witness(k26, "gcd", "p_minus_1") == "106" &&
                witness(k26, "gcd", "gcd") == "1",
            "gcd witness");
  l.require(witness(k26, "ordinary", "a_p") == "106", "a_p witness");
  l.require(passed(k26, "split") && witness(k26, "split", "companion_weight") == "82", "companion in weight 82");
  l.require(passed(k26, "large_image"), "large image");
  return l.out;
}

Outcome criterion4() {
  Ledger l;
  EigenProvider prov;
  const auto c = certify_nonordinary(79, prov, serial());
  l.require(c.conclusion == Conclusion::Certified, "conclusion " + to_string(c.conclusion));
  const auto* k38 = candidate(c, 38);
  l.require(k38 && k38->conclusion == Conclusion::Certified, "k = 38 not certified");
  l.require(k38 && k38->n_values == std::vector<int>{79}, "n values");
  l.require(witness(k38, "gcd", "k_minus_1") == "37" && witness(k38, "gcd", "p_plus_1") == "80" &&
                witness(k38, "gcd", "gcd") == "1",
            "gcd witness");
  l.require(witness(k38, "nonordinary", "a_p") == "0", "a_p witness");
  for (const char* id : {"image_irreducible", "image_not_exceptional", "image_not_dihedral", "lift_n79"})
    l.require(passed(k38, id), std::string(id));
  return l.out;
}

struct ScanPair {
  ScanReport nonordinary;
  ScanReport ordinary;
};

ScanPair run_scans(unsigned jobs) {
  EigenProvider prov;
  auto o = serial();
  o.jobs = jobs;
  return {scan_report(200, Mode::Nonordinary, prov, o), scan_report(180, Mode::Ordinary, prov, o)};
}

Outcome criterion5(ScanPair& first) {
  Ledger l;
  first = run_scans(1);
  const std::vector<std::uint32_t> nonord{79, 151, 173, 193};
  const std::vector<std::uint32_t> ord{107, 139, 151, 173, 179};
  l.require(first.nonordinary.certified == nonord, "nonordinary " + list(first.nonordinary.certified));
  l.require(first.ordinary.certified == ord, "ordinary " + list(first.ordinary.certified) + ", expected " + list(ord));
  return l.out;
}

Outcome criterion6() {
  Ledger l;
  EigenProvider prov;
  const auto c = certify_nonordinary(59, prov, serial());
  l.require(c.conclusion == Conclusion::Rejected, "conclusion " + to_string(c.conclusion));
  const auto* k16 = candidate(c, 16);
  l.require(k16 != nullptr, "k = 16 missing");
  l.require(passed(k16, "nonordinary"), "k = 16 not reported non-ordinary");
  l.require(witness(k16, "gcd", "gcd") == "15" && witness(k16, "gcd", "k_minus_1") == "15" &&
                witness(k16, "gcd", "p_plus_1") == "60",
            "gcd(15,60) = 15 not recorded");
  return l.out;
}

Outcome criterion7() {
  Ledger l;
  const auto primes500 = primes_up_to(500);
  for (auto p : primes500) {
    if (p < 7) continue;
    for (int k = 2; k < static_cast<int>(p); k += 2) {
      if (gcd(std::int64_t{k} - 1, std::int64_t{p} - 1) != 1) continue;
      const auto t = sym_ordinary(p, k, static_cast<int>(p) - 1);
      std::vector<bool> seen(p - 1, false);
      bool ok = t.dim() == static_cast<int>(p) - 1;
      for (const auto& c : t.chars()) {
        ok = ok && c.level == 1 && !seen[static_cast<std::size_t>(c.exponent)];
        if (c.level == 1) seen[static_cast<std::size_t>(c.exponent)] = true;
      }
      l.require(ok, "complete residues at p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
  }
  for (auto p : primes_up_to(200)) {
    if (p < 7) continue;
    const int n = static_cast<int>(p);
    const auto target = rho_nm_inertial(p, n, 1);
    for (int k = 2; k < n; k += 2) {
      if (gcd(std::int64_t{k} - 1, std::int64_t{p} + 1) != 1) continue;
      l.require(type_equal(sym_level2(p, k - 1, n), target),
                "sym_level2 vs rho_p1 at p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
    for (int m = 1; m <= 20; ++m) {
      if (gcd(std::int64_t{m}, std::int64_t{p} + 1) != 1) continue;
      l.require(rho_pm_independent(p, m), "rho_pm at p=" + std::to_string(p) + " m=" + std::to_string(m));
    }
  }
  std::mt19937_64 rng(7);
  std::vector<std::uint32_t> small;
  for (auto p : primes_up_to(50))
    if (p >= 7) small.push_back(p);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  auto md = [](std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; };
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = small[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(small.size()) - 1))];
    const std::int64_t m1 = p - 1, m2 = std::int64_t{p} * p - 1;
    const int n = static_cast<int>(pick(1, 2 * p));
    const auto a = pick(-300, 300), b = pick(-300, 300), e = pick(-300, 300);
    std::vector<std::int64_t> lhs, rhs;
    const auto twisted = sym_power_level1(p, a + e, b + e, n);
    const auto plain = sym_power_level1(p, a, b, n);
    for (const auto& c : twisted.chars()) lhs.push_back(c.exponent);
    for (const auto& c : plain.chars()) rhs.push_back(md(c.exponent + (n - 1) * e, m1));
    std::sort(rhs.begin(), rhs.end());
    l.require(lhs == rhs, "twist equivariance");
    auto c = a;
    if (md(c, p + 1) == 0) ++c;
    std::int64_t sum = 0;
    const auto t = sym_level2(p, c, n);
    for (const auto& ch : t.chars()) {
      if (ch.level == 1) {
        sum = md(sum + ch.exponent * (p + 1), m2);
      } else {
        sum = md(sum + ch.exponent + md(ch.exponent * p, m2), m2);
      }
    }
    const std::int64_t tri = std::int64_t{n} * (n - 1) / 2;
    l.require(sum == md(md((p + 1) * md(c, m2), m2) * md(tri, m2), m2), "determinant sum");
  }
  return l.out;
}

Outcome criterion8() {
  Ledger l;
  const IntegerRing ZZ{};
  for (int k = 12; k <= 60; k += 2) {
    if (dim_cusp(k) == 0) continue;
    const auto t2 = hecke_matrix(k, 2, ZZ).entries;
    const auto t3 = hecke_matrix(k, 3, ZZ).entries;
    l.require(t2 * t3 == t3 * t2, "T2 T3 != T3 T2 at k=" + std::to_string(k));
  }
  for (auto p : primes_up_to(50)) {
    if (p < 7) continue;
    const PrimeFieldRing R(p);
    for (int k = 12; k < static_cast<int>(p) + 20; k += 2) {
      if (dim_cusp(k) == 0) continue;
      const bool singular = determinant(hecke_matrix(k, static_cast<int>(p), R).entries, R.one()).is_zero();
      bool zero_ap = false;
      for (const auto& s : eigensystems(p, k)) {
        zero_ap = zero_ap || s.ap.is_zero();
        l.require(s.coefficient(6) == s.coefficient(2) * s.coefficient(3),
                  "a6 != a2 a3 at p=" + std::to_string(p) + " k=" + std::to_string(k));
      }
      l.require(singular == zero_ap, "det oracle at p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
  }
  for (std::uint32_t p : {59u, 79u, 107u, 151u, 173u, 193u}) {
    for (int k = 12; k < static_cast<int>(p); k += 2)
      for (const auto& s : eigensystems(p, k))
        l.require(s.coefficient(6) == s.coefficient(2) * s.coefficient(3), "a6 != a2 a3");
  }
  for (int k = 12; k <= 120; k += 2) {
    if (dim_cusp(k) == 0) continue;
    const auto exact = miller_basis(k, 200, ZZ);
    for (auto p : primes_up_to(200)) {
      if (p < 5) continue;
      l.require(reduce(exact, p).forms == miller_basis(k, 200, PrimeFieldRing(p)).forms,
                "backends disagree at k=" + std::to_string(k) + " p=" + std::to_string(p));
    }
  }
  return l.out;
}

std::string documents(const ScanPair& s) { return emit_scan_report(s.nonordinary) + emit_scan_report(s.ordinary); }

Outcome criterion9(const ScanPair& first) {
  Ledger l;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("wz-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto write_all = [&](const ScanPair& s, const std::string& tag) {
    emit_scan_report(s.nonordinary, dir / (tag + "_nonordinary.json"));
    emit_scan_report(s.ordinary, dir / (tag + "_ordinary.json"));
    for (const auto& c : s.nonordinary.certificates)
      emit_certificate(c, dir / (tag + "_cert_nonordinary_" + std::to_string(c.p) + ".json"));
    for (const auto& c : s.ordinary.certificates)
      emit_certificate(c, dir / (tag + "_cert_ordinary_" + std::to_string(c.p) + ".json"));
  };
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  write_all(first, "a");
  write_all(run_scans(1), "b");
  write_all(run_scans(4), "c");
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("a_", 0) != 0) continue;
    const auto a = read(entry.path());
    for (const char* tag : {"b_", "c_"}) {
      const auto other = dir / (tag + name.substr(2));
      l.require(fs::exists(other) && read(other) == a, name + " differs from " + tag + name.substr(2));
    }
    ++compared;
  }
  l.require(compared >= 2, "no documents written");
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (l.out.ok) l.out.detail = std::to_string(compared) + " documents byte-identical across 3 runs (1, 1, 4 threads)";
  return l.out;
}

}  // namespace

int main() {
  ScanPair first;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact a_107 of the weight 26 form and its reduction", criterion1},
      {"Miller basis q-expansion in weight 26", criterion2},
      {"ordinary certificate at p = 107", criterion3},
      {"non-ordinary certificate at p = 79", criterion4},
      {"scans: nonordinary to 200, ordinary to 180", [&] { return criterion5(first); }},
      {"non-ordinary rejection at p = 59", criterion6},
      {"tame calculus property suite", criterion7},
      {"Hecke property suite", criterion8},
      {"determinism of scan documents", [&] { return criterion9(first); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << timing << ")";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
    failures += o.ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion(s) failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
