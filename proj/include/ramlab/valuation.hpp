#pragma once

// Approximate n-th roots modulo powers of pi: the lifting engine, its certificates and an
// independent brute-force oracle.

#include <optional>
#include <string>
#include <vector>

#include "ramlab/polyring.hpp"
#include "ramlab/residue.hpp"

namespace ramlab {

enum class GammaStatus { Exact, AtLeast, Unknown };

std::string to_string(GammaStatus s);

/// Certificate f * den^n = num^n + pi^level * b with den a local unit.
struct GammaCert {
  unsigned n = 0;
  GammaStatus status = GammaStatus::Exact;
  std::uint64_t level = 0;
  std::uint64_t depth = 0;
  /// The Artin-Schreier degree bound that stopped the search (status Unknown only).
  std::int64_t bound_hit = -1;
  TowerPoly f;
  TowerPoly num;
  TowerPoly den;
  TowerPoly b;
  std::vector<std::string> branch_log;

  /// Witness as a local fraction.
  LocalElt witness() const { return LocalElt(num, den); }
};

struct GammaBounds {
  /// Cap on the degree of Artin-Schreier corrections; unset means the complete bound.
  std::optional<std::int64_t> as_degree;
};

/// p * ord(p) / (p - 1) for the ambient ring; equals p * root_index.
std::uint64_t threshold(const cyclo::Ring& ring);

/// min(Gamma(f, n), depth) with witness. n must be p or prime to p. Throws ZeroInput.
GammaCert gamma(const TowerPoly& f, unsigned n, std::uint64_t depth, const GammaBounds& bounds = {});

/// Re-checks f * den^n - num^n = pi^level * b and that den is a local unit.
bool verify_gamma_cert(const GammaCert& cert);

/// Exhaustive search over polynomial witnesses of raw total degree <= support_degree with
/// pi-adic digits 0..p-1. At most two variables and bounded instance size (InstanceTooLarge).
struct OracleResult {
  std::uint64_t level = 0;  // largest level reached, capped at depth
  bool reached_depth = false;
  std::vector<std::vector<long>> witness_digits;  // digit polynomials, flattened by monomial
  std::uint64_t candidates = 0;
};
OracleResult gamma_oracle(const TowerPoly& f, unsigned n, std::uint64_t depth, std::int64_t support_degree);

}  // namespace ramlab
