#pragma once

// Verdicts about the mod-p Galois representation attached to an eigensystem:
// companion forms (splitting of the local restriction at p) and the exclusions
// that force the image to contain SL_2(F_p).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wz/exactarith/integer.hpp"
#include "wz/hecke.hpp"

namespace wz {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct CheckVerdict {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  std::map<std::string, std::string> witness;  // witness data, or the bound exhausted
  std::string reason;

  [[nodiscard]] bool passed() const { return verdict == Verdict::Pass; }
  friend bool operator==(const CheckVerdict&, const CheckVerdict&) = default;
};

/// FAIL if any part fails, else INCONCLUSIVE if any part is, else PASS.
CheckVerdict combine_verdicts(const std::string& id, const std::vector<CheckVerdict>& parts);

/// The exponent e with a_l(f) = l^e a_l(g) for a companion g of weight p+1-k.
/// Calibrated on p = 107, k = 26: the match in weight 82 holds for e = k - 1.
ExponentResidue companion_exponent(std::uint32_t p, int k);

struct CompanionOptions {
  /// Default compares a_l for primes l up to the eigenvalue bound B. Strict
  /// compares every prime l < p from the stored q-expansions.
  bool strict = false;
};

/// Primes at which the companion relation is compared.
std::vector<std::uint32_t> companion_primes(std::uint32_t p, const EigenSystem& f, const EigenSystem& g,
                                            const CompanionOptions& opts);

/// True if a_l(f) = l^e a_l(g) for every l in `ells` under some embedding of
/// f's value field into g's (so conjugate representatives are handled).
bool companion_relation_holds(const EigenSystem& f, const EigenSystem& g, const ExponentResidue& e,
                              const std::vector<std::uint32_t>& ells);

struct CompanionMatch {
  EigenSystem companion;
  ExponentResidue exponent;
  std::vector<std::uint32_t> primes_compared;
};

/// Searches the given weight p+1-k systems for a companion of f.
std::optional<CompanionMatch> companion_match(std::uint32_t p, int k, const EigenSystem& f,
                                              const std::vector<EigenSystem>& targets,
                                              const CompanionOptions& opts = {});
std::optional<CompanionMatch> companion_match(std::uint32_t p, int k, const EigenSystem& f, EigenProvider& provider,
                                              const CompanionOptions& opts = {});

/// PASS iff a cuspidal companion exists. Requires f ordinary.
CheckVerdict split_verdict(std::uint32_t p, int k, const EigenSystem& f, EigenProvider& provider,
                           const CompanionOptions& opts = {});

/// Excludes reducible images: for every a in Z/(p-1) some l <= b_img has
/// a_l != l^a + l^(k-1-a).
CheckVerdict ord_irreducible(std::uint32_t p, int k, const EigenSystem& f, int b_img);

/// Excludes induction from Q(sqrt(p*)): some l <= b_img with (l|p) = -1 has a_l != 0.
CheckVerdict not_dihedral_ordinary(std::uint32_t p, const EigenSystem& f, int b_img);

/// Projective trace test: some l <= b_img has u = a_l^2 l^(1-k) outside {0,1,2,4}
/// and not a root of u^2 - 3u + 1.
CheckVerdict not_exceptional_trace(std::uint32_t p, int k, const EigenSystem& f, int b_img);

/// The three image exclusions in the non-ordinary case, by arithmetic alone.
/// Requires gcd(k-1, p+1) = 1.
std::vector<CheckVerdict> nonord_image_chain(std::uint32_t p, int k);

enum class Mode { Ordinary, Nonordinary };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Image contains SL_2(F_p) once reducible, dihedral and exceptional images are excluded.
CheckVerdict large_image_verdict(std::uint32_t p, int k, const EigenSystem& f, Mode mode, int b_img = 50);

/// Signed p* = (-1)^((p-1)/2) p.
std::int64_t p_star(std::uint32_t p);

}  // namespace wz
