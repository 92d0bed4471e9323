#pragma once

// End-to-end certification: candidate weights, hypothesis checks, certificate
// documents (canonical JSON) and an on-disk cache of eigensystems.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wz/galoischecks.hpp"
#include "wz/hecke.hpp"

namespace wz {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Conclusion { Certified, Rejected, Inconclusive };
std::string to_string(Conclusion c);
Conclusion conclusion_from_string(const std::string& s);

/// What a certificate records about one eigensystem.
struct EigenSummary {
  int degree = 1;
  std::vector<std::uint32_t> field_modulus;  // low to high
  bool canonical_field = true;
  std::map<std::uint32_t, std::string> values;
  std::string ap;
  int multiplicity = 1;
  bool semisimple_action = true;
  bool degree_overflow = false;
  std::optional<std::string> exact_ap;  // decimal a_p in characteristic 0 when dim S_k = 1

  friend bool operator==(const EigenSummary&, const EigenSummary&) = default;
};

EigenSummary summarize(const EigenSystem& s);

struct Candidate {
  int k = 0;
  std::vector<int> n_values;
  EigenSummary eigen;
  std::vector<CheckVerdict> checks;
  Conclusion conclusion = Conclusion::Rejected;

  [[nodiscard]] const CheckVerdict* check(const std::string& id) const;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CertBounds {
  int eigen_bound = 0;
  int b_img = 50;
  int expansion_prec = 0;
  int max_degree = kDefaultMaxExtDegree;
  bool strict = false;
  friend bool operator==(const CertBounds&, const CertBounds&) = default;
};

struct Certificate {
  std::uint32_t p = 0;
  Mode mode = Mode::Ordinary;
  std::vector<Candidate> candidates;
  Conclusion conclusion = Conclusion::Rejected;
  std::string toolversion = kToolVersion;
  CertBounds bounds;
  std::vector<std::string> citations;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// EigenProvider that persists eigensystems as JSON files in `dir`. Unreadable,
/// corrupt or mismatched files are ignored and recomputed.
class CachedEigenProvider : public EigenProvider {
 public:
  CachedEigenProvider(std::filesystem::path dir, ProviderOptions opts = {});
  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }
  [[nodiscard]] std::filesystem::path file_for(std::uint32_t p, int k, const EigenOptions& opts) const;

 protected:
  std::optional<std::vector<EigenSystem>> load(std::uint32_t p, int k, const EigenOptions& opts) override;
  void store(std::uint32_t p, int k, const EigenOptions& opts, const std::vector<EigenSystem>& systems) override;

 private:
  std::filesystem::path dir_;
};

/// Cache location: $WZ_CACHE_DIR, else $XDG_CACHE_HOME/wzcert, else ~/.cache/wzcert.
std::filesystem::path default_cache_dir();

struct CertifyOptions {
  int b_img = 50;
  bool strict = false;
  int bound = 0;  // 0 selects the default eigenvalue bound
  int max_degree = kDefaultMaxExtDegree;
  unsigned jobs = 0;                    // worker threads for scans (0 = hardware concurrency)
  std::optional<std::filesystem::path> cache_dir;
};

/// Makes the provider a set of options calls for: cached on disk if cache_dir is set.
std::unique_ptr<EigenProvider> make_provider(const CertifyOptions& opts);

Certificate certify_ordinary(std::uint32_t p, EigenProvider& provider, const CertifyOptions& opts = {});
Certificate certify_nonordinary(std::uint32_t p, EigenProvider& provider, const CertifyOptions& opts = {});
Certificate certify(std::uint32_t p, Mode mode, EigenProvider& provider, const CertifyOptions& opts = {});
Certificate certify(std::uint32_t p, Mode mode, const CertifyOptions& opts = {});

struct ScanReport {
  Mode mode = Mode::Ordinary;
  std::uint32_t pmax = 0;
  std::vector<std::uint32_t> certified;
  std::map<std::uint32_t, Conclusion> conclusions;  // every prime scanned
  std::vector<Certificate> certificates;            // one per certified prime
  std::string toolversion = kToolVersion;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Certifies every prime 7 <= p <= pmax in parallel and keeps the CERTIFIED ones.
ScanReport scan_report(std::uint32_t pmax, Mode mode, EigenProvider& provider, const CertifyOptions& opts = {});
ScanReport scan_report(std::uint32_t pmax, Mode mode, const CertifyOptions& opts = {});

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string emit_certificate(const Certificate& c);
void emit_certificate(const Certificate& c, const std::filesystem::path& dest);
Certificate parse_certificate(const std::string& text);

std::string emit_scan_report(const ScanReport& r);
void emit_scan_report(const ScanReport& r, const std::filesystem::path& dest);
ScanReport parse_scan_report(const std::string& text);

/// Serialization of eigensystems used by the cache.
std::string eigensystems_to_json(std::uint32_t p, int k, const EigenOptions& opts, const std::vector<EigenSystem>& systems);
/// Returns nothing if the document is malformed or was made with other parameters.
std::optional<std::vector<EigenSystem>> eigensystems_from_json(const std::string& text, std::uint32_t p, int k,
                                                              const EigenOptions& opts);

/// Writes via a temporary file and rename so readers never see partial files.
void write_file_atomic(const std::filesystem::path& dest, const std::string& contents);

}  // namespace wz
