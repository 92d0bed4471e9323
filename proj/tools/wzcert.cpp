// wzcert: certificates for level one, weight zero automorphic representations
// built from symmetric powers of level one eigenforms.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wz/certify.hpp"
#include "wz/tame.hpp"

namespace {

using namespace wz;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Common {
  bool no_cache = false;
  unsigned jobs = 0;
};

CertifyOptions base_options(const Common& common) {
  CertifyOptions o;
  o.jobs = common.jobs;
  if (!common.no_cache) o.cache_dir = default_cache_dir();
  return o;
}

void write_or_print(const std::optional<std::string>& out, const std::string& doc) {
  if (out) {
    write_file_atomic(*out, doc);
  } else {
    std::cout << doc;
  }
}

std::string join_primes(const std::vector<std::uint32_t>& ps) {
  std::string s;
  for (auto p : ps) s += (s.empty() ? "" : " ") + std::to_string(p);
  return s.empty() ? "(none)" : s;
}

int run_certify(std::uint32_t p, const std::string& mode, const std::optional<std::string>& out, int bimg, bool strict,
                const Common& common) {
  auto opts = base_options(common);
  opts.b_img = bimg;
  opts.strict = strict;
  const auto cert = certify(p, mode_from_string(mode), opts);
  write_or_print(out, emit_certificate(cert));
  if (out) {
    std::cout << "p = " << p << " (" << mode << "): " << to_string(cert.conclusion) << "\n";
    for (const auto& c : cert.candidates) {
      if (c.conclusion == Conclusion::Certified) std::cout << "  k = " << c.k << " certified\n";
    }
  }
  return cert.conclusion == Conclusion::Certified ? kExitOk : kExitNegative;
}

int run_scan(std::uint32_t pmax, const std::string& mode, const std::optional<std::string>& out, const Common& common) {
  const auto opts = base_options(common);
  std::vector<Mode> modes;
  if (mode == "both") {
    modes = {Mode::Nonordinary, Mode::Ordinary};
  } else {
    modes = {mode_from_string(mode)};
  }
  auto provider = make_provider(opts);
  nlohmann::json combined = nlohmann::json::object();
  std::string single;
  for (Mode m : modes) {
    const auto r = scan_report(pmax, m, *provider, opts);
    std::cerr << to_string(m) << " (pmax " << pmax << "): " << join_primes(r.certified) << "\n";
    single = emit_scan_report(r);
    combined[to_string(m)] = nlohmann::json::parse(single);
  }
  write_or_print(out, modes.size() == 1 ? single : combined.dump(2) + "\n");
  return kExitOk;
}

int run_eigenform(int k, int prec, std::optional<std::uint32_t> modp, bool exact) {
  if (prec < 2) throw CLI::ValidationError("--prec", "must be at least 2");
  const int d = dim_cusp(k);
  if (d == 0) {
    std::cout << "# S_" << k << " = 0\n";
    return kExitOk;
  }
  if (exact || !modp) {
    const auto basis = miller_basis(k, std::max(prec, d + 1), IntegerRing{});
    std::cout << "# S_" << k << ", dim " << d << ", Miller basis over Z" << (modp ? " reduced mod " + std::to_string(*modp) : "")
              << "\n";
    for (int j = 0; j < d; ++j) {
      std::cout << "f" << j + 1 << ":";
      for (int n = 0; n < prec; ++n) {
        const auto& c = basis.forms[static_cast<std::size_t>(j)][n];
        std::cout << " " << (modp ? std::to_string(mod_floor(c, *modp)) : to_string(c));
      }
      std::cout << "\n";
    }
    return kExitOk;
  }
  const std::uint32_t p = *modp;
  if (!is_prime(p) || p < 5) throw CLI::ValidationError("--modp", "must be a prime >= 5");
  EigenOptions eo;
  eo.expansion_prec = std::max(prec, static_cast<int>(p) + 1);
  const auto systems = eigensystems(p, k, eo);
  std::cout << "# S_" << k << " mod " << p << ", " << systems.size() << " eigensystem(s)\n";
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    std::cout << "# g" << i + 1 << ": degree " << s.degree << ", field modulus " << field_modulus(s.field).str()
              << ", a_p = " << s.ap.str() << (s.ordinary ? " (ordinary)" : " (non-ordinary)") << "\n";
    std::cout << "g" << i + 1 << ":";
    for (int n = 0; n < prec; ++n) std::cout << " " << s.coefficient(n).str();
    std::cout << "\n";
  }
  return kExitOk;
}

int run_tame(std::uint32_t p, int k, std::optional<int> n, const std::string& which) {
  if (!is_prime(p) || p <= 5) throw CLI::ValidationError("--p", "must be a prime > 5");
  LiftCheck lc;
  if (which == "ordinary") {
    lc = lift_check_ordinary(p, k, n.value_or(static_cast<int>(p) - 1));
  } else {
    if (n && *n != static_cast<int>(p)) throw CLI::ValidationError("--n", "the non-ordinary case uses n = p");
    lc = lift_check_nonordinary(p, k);
  }
  std::cout << "case:    " << which << "\n";
  std::cout << "n:       " << lc.n << "\n";
  std::cout << "actual:  " << lc.actual.str() << "\n";
  std::cout << "target:  " << lc.target.str() << "\n";
  for (const auto& [key, val] : lc.description) std::cout << key << ": " << val << "\n";
  std::cout << "verdict: " << to_string(lc.verdict) << "\n";
  return lc.verdict == Verdict::Pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify level one, weight zero automorphic representations from symmetric powers"};
  app.set_version_flag("--version", std::string(wz::kToolVersion));
  app.require_subcommand(1);

  Common common;
  app.add_flag("--no-cache", common.no_cache, "Do not read or write the eigensystem cache");

  const std::vector<std::string> modes{"ordinary", "nonordinary"};

  auto* certify_cmd = app.add_subcommand("certify", "Certify one prime");
  std::uint32_t cert_p = 0;
  std::string cert_mode;
  std::optional<std::string> cert_out;
  int bimg = 50;
  bool strict = false;
  certify_cmd->add_option("--p", cert_p, "Prime p > 5")->required();
  certify_cmd->add_option("--mode", cert_mode, "ordinary or nonordinary")->required()->check(CLI::IsMember(modes));
  certify_cmd->add_option("--out", cert_out, "Write the certificate here instead of stdout");
  certify_cmd->add_option("--bimg", bimg, "Witness search bound for the image checks")->check(CLI::PositiveNumber);
  certify_cmd->add_flag("--strict", strict, "Compare companion relations at every prime below p");

  auto* scan_cmd = app.add_subcommand("scan", "Certify every prime up to a bound");
  std::uint32_t pmax = 0;
  std::string scan_mode;
  std::optional<std::string> scan_out;
  scan_cmd->add_option("--pmax", pmax, "Largest prime scanned (>= 17)")->required();
  scan_cmd->add_option("--mode", scan_mode, "ordinary, nonordinary or both")
      ->required()
      ->check(CLI::IsMember({"ordinary", "nonordinary", "both"}));
  scan_cmd->add_option("--jobs", common.jobs, "Worker threads (0 = all cores)");
  scan_cmd->add_option("--out", scan_out, "Write the report here instead of stdout");

  auto* eigen_cmd = app.add_subcommand("eigenform", "Print q-expansion coefficients");
  int weight = 0;
  int prec = 0;
  std::optional<std::uint32_t> modp;
  bool exact = false;
  eigen_cmd->add_option("--weight", weight, "Even weight k")->required();
  eigen_cmd->add_option("--prec", prec, "Number of coefficients a_0 .. a_{prec-1}")->required();
  eigen_cmd->add_option("--modp", modp, "Print the mod-p eigenforms");
  eigen_cmd->add_flag("--exact", exact, "Print the integral Miller basis (reduced mod p if --modp is given)");

  auto* tame_cmd = app.add_subcommand("tame", "Inertial types and the weight zero lift check");
  std::uint32_t tame_p = 0;
  int tame_k = 0;
  std::optional<int> tame_n;
  std::string tame_case;
  tame_cmd->add_option("--p", tame_p, "Prime p > 5")->required();
  tame_cmd->add_option("--k", tame_k, "Weight k")->required();
  tame_cmd->add_option("--n", tame_n, "Symmetric power dimension (ordinary: p-1 or p-2)");
  tame_cmd->add_option("--case", tame_case, "ordinary or nonordinary")->required()->check(CLI::IsMember(modes));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*certify_cmd) return run_certify(cert_p, cert_mode, cert_out, bimg, strict, common);
    if (*scan_cmd) return run_scan(pmax, scan_mode, scan_out, common);
    if (*eigen_cmd) return run_eigenform(weight, prec, modp, exact);
    if (*tame_cmd) return run_tame(tame_p, tame_k, tame_n, tame_case);
  } catch (const CLI::Error& e) {
    std::cerr << "wzcert: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "wzcert: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
