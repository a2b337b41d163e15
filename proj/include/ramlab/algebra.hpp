#pragma once

// Free finite algebras over an ambient, given by structure constants, and the builders for
// Kummer covers, Hilbert-Burch matrices, tensor products, the tame radical algebras and the
// first p-ramified case.

#include <optional>
#include <string>
#include <vector>

#include "ramlab/polyring.hpp"
#include "ramlab/valuation.hpp"

namespace ramlab {

/// A radical w with w^n = f adjoined to the ambient; basis fractions are written in w.
struct Radical {
  std::string var;
  TowerPoly f;
  unsigned n = 0;
};

struct KummerAlg {
  AmbientPtr ambient;
  std::size_t rank = 0;
  std::vector<std::string> labels;
  /// table[i][j][k] = c^k_{ij}.
  std::vector<std::vector<std::vector<TowerPoly>>> table;

  /// Basis element i is frac_num[i] / pi^frac_den[i] in ambient + radical variables.
  AmbientPtr frac_ambient;
  std::vector<Radical> radicals;
  std::vector<TowerPoly> frac_num;
  std::vector<std::uint64_t> frac_den;
  std::string provenance;

  /// Product of two coordinate vectors through the table.
  std::vector<TowerPoly> multiply(const std::vector<TowerPoly>& a, const std::vector<TowerPoly>& b) const;
  std::vector<TowerPoly> basis_vector(std::size_t i) const;
};

struct AlgebraReport {
  bool identity = false;
  bool commutative = false;
  bool associative = false;
  bool closure = false;
  /// nullopt when the algebra carries no defining fractions.
  std::optional<bool> fractions;
  std::vector<std::string> failures;

  bool ok() const { return identity && commutative && associative && closure && fractions.value_or(true); }
};

/// Re-checks the algebra axioms from the raw table, and the defining fractions by direct
/// expansion modulo w^n - f for each radical.
AlgebraReport verify_algebra(const KummerAlg& a);

/// Rank-p cover with basis z_i = (w - h)^i / pi^{r i}, r = ord(p) / (p - 1). Throws NotTame.
/// A certificate at level >= p r with unit denominator may be supplied; otherwise one is computed.
KummerAlg normalize_degree_p(const TowerPoly& f, const std::optional<GammaCert>& cert = std::nullopt,
                             const std::string& var = "w");

struct HBPair {
  unsigned p = 0;
  unsigned n = 0;
  AmbientPtr ambient;  // base plus X
  TowerPoly h;
  TowerPoly f;
  TowerPoly gamma_poly;
  std::vector<std::vector<TowerPoly>> phi;  // p x (p-1)
  std::vector<std::vector<TowerPoly>> psi;  // p x p
  std::vector<TowerPoly> minors;            // minor deleting row i (i = 1..p)
  std::vector<TowerPoly> cofactors;         // (i, i) cofactor of Psi
  bool minors_ok = false;
  bool cofactors_ok = false;
  bool factorization_ok = false;
  bool det_ok = false;
  TowerPoly residual;  // (X-h)(X-h)^{p-1} + alpha^{n(p-1)} gamma - (X^p - f)
};

/// Throws HypothesisFailure unless n (p-1) <= ord(p) and f - h^p lies in (pi^{n(p-1)}).
HBPair hb_matrices(unsigned n, const TowerPoly& h, const TowerPoly& f, const std::string& var = "X");

/// Throws AmbientMismatch, InvalidArgument (radical name clash).
KummerAlg tensor_compose(const std::vector<KummerAlg>& algs);

/// Rank-1 algebra over the ambient.
KummerAlg trivial_algebra(const AmbientPtr& amb);

/// Monomial algebra in t-th roots of the given elements. Throws ModularExponent when p | t.
KummerAlg roberts_build(const std::vector<TowerPoly>& divisors, const std::vector<TowerPoly>& units, unsigned t);

struct PRamifiedResult {
  unsigned p = 0;
  unsigned t = 0;
  unsigned l = 0;
  std::uint64_t q = 0;
  bool lp_exceeds_q = false;
  /// (mu - r)^p - kappa (mu - r) pi^{lp(p-1)} - pi^{pq+1} y reduced modulo mu^p - g.
  TowerPoly residual;
  bool residual_zero = false;
  /// Integral equation for zeta evaluated in the rank-p order generated by zeta = (mu - r) / pi^q.
  bool zeta_order_residual_zero = false;
  KummerAlg algebra;     // rank p^2: basis mu^i zeta^j
  KummerAlg zeta_order;  // rank p: basis zeta^j
  AlgebraReport algebra_report;
  AlgebraReport zeta_order_report;
  AmbientPtr ambient;  // base change to the ring with pi^{lp} = eps - 1
  TowerPoly g;
};

/// r, y in an ambient whose ring has root index p (alpha = pi, alpha^p = eps - 1).
/// Throws BadParameters.
PRamifiedResult p_ramified_build(const TowerPoly& r, unsigned t, const TowerPoly& y, unsigned l);

/// (p - 1) p^{p (d - 1) + 1}.
Int p_ramified_rank_bound(unsigned p, unsigned d);

struct PRamifiedNormalForm {
  TowerPoly r;
  unsigned t = 0;
  TowerPoly y;
};

/// Writes g = r^p + pi^{p(p-1)+t} y with y a local unit, from a Gamma certificate in the ring
/// with root index p. Returns nullopt when Gamma(g) is not in p(p-1) + [1, p-1].
std::optional<PRamifiedNormalForm> p_ramified_normalize(const TowerPoly& g);

/// det(Tr(z_i z_j)).
TowerPoly discriminant(const KummerAlg& a);

}  // namespace ramlab
