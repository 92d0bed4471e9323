#include "wz/certify.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "wz/parallel.hpp"
#include "wz/tame.hpp"

namespace wz {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- verdict / certificate JSON ----

json to_json(const CheckVerdict& v) {
  json w = json::object();
  for (const auto& [key, val] : v.witness) w[key] = val;
  return json{{"id", v.id}, {"verdict", to_string(v.verdict)}, {"witness", w}, {"reason", v.reason}};
}

CheckVerdict check_from_json(const json& j) {
  CheckVerdict v;
  v.id = j.at("id").get<std::string>();
  v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  for (const auto& [key, val] : j.at("witness").items()) v.witness[key] = val.get<std::string>();
  v.reason = j.at("reason").get<std::string>();
  return v;
}

json to_json(const EigenSummary& e) {
  json values = json::object();
  for (const auto& [ell, v] : e.values) values[std::to_string(ell)] = v;
  json j{{"degree", e.degree},
         {"field_modulus", e.field_modulus},
         {"canonical_field", e.canonical_field},
         {"values", values},
         {"ap", e.ap},
         {"multiplicity", e.multiplicity},
         {"semisimple_action", e.semisimple_action},
         {"degree_overflow", e.degree_overflow}};
  if (e.exact_ap) j["exact_ap"] = *e.exact_ap;
  return j;
}

EigenSummary summary_from_json(const json& j) {
  EigenSummary e;
  e.degree = j.at("degree").get<int>();
  e.field_modulus = j.at("field_modulus").get<std::vector<std::uint32_t>>();
  e.canonical_field = j.at("canonical_field").get<bool>();
  for (const auto& [key, val] : j.at("values").items()) e.values[static_cast<std::uint32_t>(std::stoul(key))] = val.get<std::string>();
  e.ap = j.at("ap").get<std::string>();
  e.multiplicity = j.at("multiplicity").get<int>();
  e.semisimple_action = j.at("semisimple_action").get<bool>();
  e.degree_overflow = j.at("degree_overflow").get<bool>();
  if (j.contains("exact_ap")) e.exact_ap = j.at("exact_ap").get<std::string>();
  return e;
}

json to_json(const Candidate& c) {
  json checks = json::array();
  for (const auto& v : c.checks) checks.push_back(to_json(v));
  return json{{"k", c.k}, {"n_values", c.n_values}, {"eigen", to_json(c.eigen)}, {"checks", checks},
              {"conclusion", to_string(c.conclusion)}};
}

Candidate candidate_from_json(const json& j) {
  Candidate c;
  c.k = j.at("k").get<int>();
  c.n_values = j.at("n_values").get<std::vector<int>>();
  c.eigen = summary_from_json(j.at("eigen"));
  for (const auto& v : j.at("checks")) c.checks.push_back(check_from_json(v));
  c.conclusion = conclusion_from_string(j.at("conclusion").get<std::string>());
  return c;
}

json to_json(const Certificate& c) {
  json candidates = json::array();
  for (const auto& cand : c.candidates) candidates.push_back(to_json(cand));
  return json{{"p", c.p},
              {"mode", to_string(c.mode)},
              {"candidates", candidates},
              {"conclusion", to_string(c.conclusion)},
              {"toolversion", c.toolversion},
              {"bounds",
               {{"eigen_bound", c.bounds.eigen_bound},
                {"b_img", c.bounds.b_img},
                {"expansion_prec", c.bounds.expansion_prec},
                {"max_degree", c.bounds.max_degree},
                {"congruence_mode", c.bounds.strict ? "strict" : "default"}}},
              {"citations", c.citations}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.p = j.at("p").get<std::uint32_t>();
  c.mode = mode_from_string(j.at("mode").get<std::string>());
  for (const auto& cand : j.at("candidates")) c.candidates.push_back(candidate_from_json(cand));
  c.conclusion = conclusion_from_string(j.at("conclusion").get<std::string>());
  c.toolversion = j.at("toolversion").get<std::string>();
  const auto& b = j.at("bounds");
  c.bounds.eigen_bound = b.at("eigen_bound").get<int>();
  c.bounds.b_img = b.at("b_img").get<int>();
  c.bounds.expansion_prec = b.at("expansion_prec").get<int>();
  c.bounds.max_degree = b.at("max_degree").get<int>();
  c.bounds.strict = b.at("congruence_mode").get<std::string>() == "strict";
  c.citations = j.at("citations").get<std::vector<std::string>>();
  return c;
}

// ---- eigensystem JSON (cache) ----

json gf_json(const Gf& a) { return a.coeffs(); }

Gf gf_from(const json& j, Field f) {
  auto c = j.get<std::vector<std::uint32_t>>();
  if (c.size() != static_cast<std::size_t>(f->degree)) throw std::runtime_error("cache: coefficient vector size");
  for (auto v : c)
    if (v >= f->p) throw std::runtime_error("cache: coefficient out of range");
  return Gf(f, std::move(c));
}

// ---- certification helpers ----

CheckVerdict lift_verdict(const LiftCheck& lc) {
  CheckVerdict v{"lift_n" + std::to_string(lc.n), lc.verdict, lc.description, ""};
  v.witness["inertial_type"] = lc.actual.str();
  v.reason = lc.verdict == Verdict::Pass ? "inertial type matches a weight zero crystalline lift"
                                         : "inertial type differs from every weight zero target";
  return v;
}

Conclusion conclude(const std::vector<CheckVerdict>& checks) {
  bool open = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return Conclusion::Rejected;
    open = open || c.verdict == Verdict::Inconclusive;
  }
  return open ? Conclusion::Inconclusive : Conclusion::Certified;
}

Conclusion conclude(const std::vector<Candidate>& cands) {
  bool open = false;
  for (const auto& c : cands) {
    if (c.conclusion == Conclusion::Certified) return Conclusion::Certified;
    open = open || c.conclusion == Conclusion::Inconclusive;
  }
  return open ? Conclusion::Inconclusive : Conclusion::Rejected;
}

void require_cert_prime(std::uint32_t p) {
  if (p <= 5 || !is_prime(p)) throw std::invalid_argument("certify: p must be a prime > 5");
}

Certificate blank_certificate(std::uint32_t p, Mode mode, EigenProvider& provider, const CertifyOptions& opts) {
  Certificate c;
  c.p = p;
  c.mode = mode;
  const auto eo = provider.options_for(p);
  c.bounds = CertBounds{eo.bound, opts.b_img, eo.expansion_prec, eo.max_degree, opts.strict};
  return c;
}

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Certified: return "CERTIFIED";
    case Conclusion::Rejected: return "REJECTED";
    case Conclusion::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Conclusion conclusion_from_string(const std::string& s) {
  if (s == "CERTIFIED") return Conclusion::Certified;
  if (s == "REJECTED") return Conclusion::Rejected;
  if (s == "INCONCLUSIVE") return Conclusion::Inconclusive;
  throw std::invalid_argument("unknown conclusion: " + s);
}

EigenSummary summarize(const EigenSystem& s) {
  EigenSummary e;
  e.degree = s.degree;
  e.field_modulus = s.field->modulus;
  e.canonical_field = s.field->canonical;
  for (const auto& [ell, v] : s.values) e.values[ell] = v.str();
  e.ap = s.ap.str();
  e.multiplicity = s.multiplicity;
  e.semisimple_action = s.semisimple_action;
  e.degree_overflow = s.degree_overflow;
  if (dim_cusp(s.k) == 1) e.exact_ap = to_string(exact_ap_dim1(s.k, s.p));
  return e;
}

const CheckVerdict* Candidate::check(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

// ---- cache ----

std::string eigensystems_to_json(std::uint32_t p, int k, const EigenOptions& opts, const std::vector<EigenSystem>& systems) {
  json arr = json::array();
  for (const auto& s : systems) {
    json values = json::object();
    for (const auto& [ell, v] : s.values) values[std::to_string(ell)] = gf_json(v);
    json expansion = json::array();
    for (const auto& a : s.expansion) expansion.push_back(gf_json(a));
    arr.push_back(json{{"degree", s.degree},
                       {"field_modulus", s.field->modulus},
                       {"canonical_field", s.field->canonical},
                       {"bound", s.bound},
                       {"values", values},
                       {"ap", gf_json(s.ap)},
                       {"expansion", expansion},
                       {"multiplicity", s.multiplicity},
                       {"ordinary", s.ordinary},
                       {"semisimple_action", s.semisimple_action},
                       {"degree_overflow", s.degree_overflow}});
  }
  json doc{{"toolversion", kToolVersion},
           {"p", p},
           {"k", k},
           {"bound", opts.bound},
           {"expansion_prec", opts.expansion_prec},
           {"max_degree", opts.max_degree},
           {"systems", arr}};
  return doc.dump() + "\n";
}

std::optional<std::vector<EigenSystem>> eigensystems_from_json(const std::string& text, std::uint32_t p, int k,
                                                              const EigenOptions& opts) {
  try {
    const json doc = json::parse(text);
    if (doc.at("toolversion").get<std::string>() != kToolVersion || doc.at("p").get<std::uint32_t>() != p ||
        doc.at("k").get<int>() != k || doc.at("bound").get<int>() != opts.bound ||
        doc.at("expansion_prec").get<int>() != opts.expansion_prec || doc.at("max_degree").get<int>() != opts.max_degree) {
      return std::nullopt;
    }
    std::vector<EigenSystem> out;
    for (const auto& j : doc.at("systems")) {
      EigenSystem s;
      s.p = p;
      s.k = k;
      s.degree = j.at("degree").get<int>();
      const auto modulus = j.at("field_modulus").get<std::vector<std::uint32_t>>();
      if (static_cast<int>(modulus.size()) != s.degree + 1) return std::nullopt;
      if (j.at("canonical_field").get<bool>()) {
        s.field = ext_field(p, s.degree, opts.max_degree);
        if (s.field->modulus != modulus) return std::nullopt;
      } else {
        std::vector<std::int64_t> c(modulus.begin(), modulus.end());
        const auto g = FpPoly::from_ints(Fp(p, 0), c);
        if (!is_irreducible(g)) return std::nullopt;
        s.field = adhoc_field(g);
      }
      s.bound = j.at("bound").get<int>();
      for (const auto& [key, val] : j.at("values").items()) s.values.emplace(static_cast<std::uint32_t>(std::stoul(key)), gf_from(val, s.field));
      s.ap = gf_from(j.at("ap"), s.field);
      for (const auto& a : j.at("expansion")) s.expansion.push_back(gf_from(a, s.field));
      s.multiplicity = j.at("multiplicity").get<int>();
      s.ordinary = j.at("ordinary").get<bool>();
      s.semisimple_action = j.at("semisimple_action").get<bool>();
      s.degree_overflow = j.at("degree_overflow").get<bool>();
      if (s.expansion_prec() != opts.expansion_prec || s.ordinary == s.ap.is_zero()) return std::nullopt;
      if (!(s.ap == s.coefficient(static_cast<int>(p)))) return std::nullopt;
      out.push_back(std::move(s));
    }
    return out;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_file_atomic(const std::filesystem::path& dest, const std::string& contents) {
  if (dest.has_parent_path()) std::filesystem::create_directories(dest.parent_path());
  std::ostringstream suffix;
  static std::atomic<unsigned> counter{0};
  suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
  auto tmp = dest;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, dest);
}

CachedEigenProvider::CachedEigenProvider(std::filesystem::path dir, ProviderOptions opts)
    : EigenProvider(opts), dir_(std::move(dir)) {}

std::filesystem::path CachedEigenProvider::file_for(std::uint32_t p, int k, const EigenOptions& opts) const {
  return dir_ / ("eigen_p" + std::to_string(p) + "_k" + std::to_string(k) + "_B" + std::to_string(opts.bound) + "_N" +
                 std::to_string(opts.expansion_prec) + "_d" + std::to_string(opts.max_degree) + "_v" + kToolVersion +
                 ".json");
}

std::optional<std::vector<EigenSystem>> CachedEigenProvider::load(std::uint32_t p, int k, const EigenOptions& opts) {
  const auto path = file_for(p, k, opts);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    return eigensystems_from_json(read_file(path), p, k, opts);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void CachedEigenProvider::store(std::uint32_t p, int k, const EigenOptions& opts, const std::vector<EigenSystem>& systems) {
  // A cache that cannot be written only costs time.
  try {
    write_file_atomic(file_for(p, k, opts), eigensystems_to_json(p, k, opts, systems));
  } catch (const std::exception&) {
  }
}

std::filesystem::path default_cache_dir() {
  if (auto d = env_or_empty("WZ_CACHE_DIR"); !d.empty()) return d;
  if (auto d = env_or_empty("XDG_CACHE_HOME"); !d.empty()) return std::filesystem::path(d) / "wzcert";
  if (auto d = env_or_empty("HOME"); !d.empty()) return std::filesystem::path(d) / ".cache" / "wzcert";
  return std::filesystem::temp_directory_path() / "wzcert-cache";
}

std::unique_ptr<EigenProvider> make_provider(const CertifyOptions& opts) {
  ProviderOptions po{opts.bound, opts.b_img, opts.max_degree};
  if (opts.cache_dir) return std::make_unique<CachedEigenProvider>(*opts.cache_dir, po);
  return std::make_unique<EigenProvider>(po);
}

// ---- certification ----

Certificate certify_ordinary(std::uint32_t p, EigenProvider& provider, const CertifyOptions& opts) {
  require_cert_prime(p);
  Certificate cert = blank_certificate(p, Mode::Ordinary, provider, opts);
  cert.citations = {"companion forms: a companion of weight p+1-k splits the local representation at p",
                    "Dickson: excluding reducible, dihedral and exceptional images leaves an image containing SL_2(F_p)",
                    "adequacy of the image: cited, not computed"};
  const CompanionOptions copts{opts.strict};
  const int pi = static_cast<int>(p);
  for (int k = 12; k < pi; k += 2) {
    const auto g = gcd(std::int64_t{k} - 1, std::int64_t{p} - 1);
    if (g != 1) continue;
    for (const auto& s : *provider.systems(p, k)) {
      if (!s.ordinary) continue;
      Candidate c;
      c.k = k;
      c.n_values = {pi - 2, pi - 1};
      c.eigen = summarize(s);
      c.checks.push_back(CheckVerdict{"gcd", Verdict::Pass,
                                      {{"k_minus_1", std::to_string(k - 1)}, {"p_minus_1", std::to_string(p - 1)}, {"gcd", "1"}},
                                      "gcd(k-1, p-1) = 1"});
      c.checks.push_back(CheckVerdict{"ordinary", Verdict::Pass, {{"a_p", s.ap.str()}}, "a_p is nonzero mod p"});
      c.checks.push_back(split_verdict(p, k, s, provider, copts));
      std::vector<CheckVerdict> image{ord_irreducible(p, k, s, opts.b_img), not_dihedral_ordinary(p, s, opts.b_img),
                                      not_exceptional_trace(p, k, s, opts.b_img)};
      for (auto& v : image) {
        auto copy = v;
        copy.id = "image_" + v.id;
        c.checks.push_back(std::move(copy));
      }
      c.checks.push_back(combine_verdicts("large_image", image));
      for (int n : c.n_values) {
        auto lc = lift_check_ordinary(p, k, n);
        if (lc.verdict == Verdict::Pass) lc.description["unit_root_alpha"] = s.ap.str();
        c.checks.push_back(lift_verdict(lc));
      }
      c.conclusion = conclude(c.checks);
      cert.candidates.push_back(std::move(c));
    }
  }
  cert.conclusion = conclude(cert.candidates);
  return cert;
}

Certificate certify_nonordinary(std::uint32_t p, EigenProvider& provider, const CertifyOptions& opts) {
  require_cert_prime(p);
  Certificate cert = blank_certificate(p, Mode::Nonordinary, provider, opts);
  cert.citations = {"a non-ordinary local representation at p is induced from a level 2 character",
                    "Dickson: excluding reducible, dihedral and exceptional images leaves an image containing SL_2(F_p)",
                    "adequacy of the image: cited, not computed"};
  const int pi = static_cast<int>(p);
  for (int k = 12; k < pi; k += 2) {
    for (const auto& s : *provider.systems(p, k)) {
      if (s.ordinary) continue;
      const auto g = gcd(std::int64_t{k} - 1, std::int64_t{p} + 1);
      Candidate c;
      c.k = k;
      c.n_values = {pi};
      c.eigen = summarize(s);
      c.checks.push_back(CheckVerdict{"gcd",
                                     g == 1 ? Verdict::Pass : Verdict::Fail,
                                     {{"k_minus_1", std::to_string(k - 1)}, {"p_plus_1", std::to_string(p + 1)}, {"gcd", std::to_string(g)}},
                                     g == 1 ? "gcd(k-1, p+1) = 1" : "gcd(k-1, p+1) > 1"});
      c.checks.push_back(CheckVerdict{"nonordinary", Verdict::Pass, {{"a_p", "0"}}, "a_p vanishes mod p"});
      if (g == 1) {
        auto chain = nonord_image_chain(p, k);
        for (const auto& v : chain) {
          auto copy = v;
          copy.id = "image_" + v.id;
          c.checks.push_back(std::move(copy));
        }
        c.checks.push_back(combine_verdicts("large_image", chain));
      }
      c.checks.push_back(lift_verdict(lift_check_nonordinary(p, k)));
      c.conclusion = conclude(c.checks);
      cert.candidates.push_back(std::move(c));
    }
  }
  cert.conclusion = conclude(cert.candidates);
  return cert;
}

Certificate certify(std::uint32_t p, Mode mode, EigenProvider& provider, const CertifyOptions& opts) {
  return mode == Mode::Ordinary ? certify_ordinary(p, provider, opts) : certify_nonordinary(p, provider, opts);
}

Certificate certify(std::uint32_t p, Mode mode, const CertifyOptions& opts) {
  auto provider = make_provider(opts);
  return certify(p, mode, *provider, opts);
}

ScanReport scan_report(std::uint32_t pmax, Mode mode, EigenProvider& provider, const CertifyOptions& opts) {
  if (pmax < 17) throw std::invalid_argument("scan_report: pmax must be >= 17");
  std::vector<std::uint32_t> primes;
  for (auto p : primes_up_to(pmax))
    if (p > 5) primes.push_back(p);
  std::vector<Certificate> certs(primes.size());
  parallel_for(primes.size(), opts.jobs, [&](std::size_t i) { certs[i] = certify(primes[i], mode, provider, opts); });
  ScanReport r;
  r.mode = mode;
  r.pmax = pmax;
  for (auto& c : certs) {
    r.conclusions[c.p] = c.conclusion;
    if (c.conclusion == Conclusion::Certified) {
      r.certified.push_back(c.p);
      r.certificates.push_back(std::move(c));
    }
  }
  return r;
}

ScanReport scan_report(std::uint32_t pmax, Mode mode, const CertifyOptions& opts) {
  auto provider = make_provider(opts);
  return scan_report(pmax, mode, *provider, opts);
}

// ---- documents ----

std::string emit_certificate(const Certificate& c) { return dump(to_json(c)); }

void emit_certificate(const Certificate& c, const std::filesystem::path& dest) { write_file_atomic(dest, emit_certificate(c)); }

Certificate parse_certificate(const std::string& text) { return certificate_from_json(json::parse(text)); }

std::string emit_scan_report(const ScanReport& r) {
  json conclusions = json::object();
  for (const auto& [p, c] : r.conclusions) conclusions[std::to_string(p)] = to_string(c);
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return dump(json{{"mode", to_string(r.mode)},
                   {"pmax", r.pmax},
                   {"certified", r.certified},
                   {"conclusions", conclusions},
                   {"certificates", certs},
                   {"toolversion", r.toolversion}});
}

void emit_scan_report(const ScanReport& r, const std::filesystem::path& dest) { write_file_atomic(dest, emit_scan_report(r)); }

ScanReport parse_scan_report(const std::string& text) {
  const json j = json::parse(text);
  ScanReport r;
  r.mode = mode_from_string(j.at("mode").get<std::string>());
  r.pmax = j.at("pmax").get<std::uint32_t>();
  r.certified = j.at("certified").get<std::vector<std::uint32_t>>();
  for (const auto& [key, val] : j.at("conclusions").items())
    r.conclusions[static_cast<std::uint32_t>(std::stoul(key))] = conclusion_from_string(val.get<std::string>());
  for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
  r.toolversion = j.at("toolversion").get<std::string>();
  return r;
}

}  // namespace wz
