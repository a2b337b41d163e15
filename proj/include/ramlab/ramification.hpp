#pragma once

// Tame/ramified classification of Kummer elements, the C' polynomial, Eisenstein checks and
// canonical-element reduction.

#include <optional>
#include <string>
#include <vector>

#include "ramlab/polyring.hpp"
#include "ramlab/valuation.hpp"

namespace ramlab {

enum class Verdict { PthPower, Tame, Ramified, Unknown };
enum class RamifiedReason { None, DividesP, GammaBelowThreshold };

std::string to_string(Verdict v);
std::string to_string(RamifiedReason r);

struct RamClass {
  Verdict verdict = Verdict::Unknown;
  RamifiedReason reason = RamifiedReason::None;
  std::uint64_t threshold = 0;
  Order ord;
  std::optional<TowerPoly> root;  // PthPower
  std::optional<GammaCert> cert;  // Tame, GammaBelowThreshold, Unknown
};

/// Exact p-th root of a polynomial, or nullopt.
std::optional<TowerPoly> pth_root_poly(const TowerPoly& f);

/// Throws ZeroInput, AmbientUnsupported.
RamClass classify(const TowerPoly& f, const GammaBounds& bounds = {});

struct CPrimePair {
  unsigned p = 0;
  AmbientPtr ambient;  // base variables plus X
  TowerPoly h;
  TowerPoly c;   // (X^p - h^p) - (X - h)^p
  TowerPoly cp;  // c / (p (X - h))
  bool sum_identity = false;     // sum X^i h^{p-1-i} = (X - h)^{p-1} + p C'
  bool congruence = false;       // C' = h^{p-1} mod (p, X - h)
  bool cprime_eps_identity = false;  // p = -(c'_eps)^{-1} (eps - 1)^{p-1}
};

/// h lives in `base`; the name of the new variable is X unless taken.
CPrimePair cprime(const TowerPoly& h, const std::string& var = "X");

struct EisensteinReport {
  unsigned p = 0;
  unsigned r = 0;
  std::vector<Int> coefficients;  // Phi_{p^r}(x + 1), low degree first
  bool monic = false;
  bool divisible = false;
  bool constant_is_p = false;
  bool eisenstein() const { return monic && divisible && constant_is_p; }
};

EisensteinReport eisenstein_shift_check(unsigned p, unsigned r);

struct SquarefreeReport {
  bool pass = true;
  bool certified = false;  // a failure found by exact arithmetic
  std::vector<std::string> notes;
};

/// Exact monomial checks plus univariate gcd probes over F_P at random specializations.
SquarefreeReport squarefree_coprime_check(const std::vector<TowerPoly>& elements, std::uint64_t seed = 1);

struct Presentation {
  TowerPoly unit;
  std::vector<std::pair<TowerPoly, std::uint64_t>> factors;
};

struct CanonicalResult {
  TowerPoly element;
  std::vector<TowerPoly> divisors;
  std::vector<std::uint64_t> exponents;  // reduced exponents of the surviving divisors
  SquarefreeReport check;
};

/// Throws PresentationRejected when the coprimality check fails.
CanonicalResult canonical_reduce(const Presentation& pres, std::uint64_t n);

}  // namespace ramlab
