#pragma once

// Sparse multivariate polynomials over W with root-tower variables.
//
// A variable x declared with tower modulus N stores exponents as integers k meaning
// x^{k/N}. Adjoining roots (tower_extend) rescales exponents; it never builds a
// quotient ring. Terms are kept in a std::map ordered by graded lexicographic order on
// the raw exponent vectors, so iteration and printing are deterministic.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/cyclo.hpp"

namespace ramlab {

using cyclo::CycElt;
using Exponents = std::vector<std::int64_t>;

struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

std::int64_t total_degree(const Exponents& e);

struct Ambient {
  cyclo::Ring ring;
  std::vector<std::string> vars;
  std::vector<std::int64_t> tower;  // per-variable root modulus N_v

  Ambient(cyclo::Ring r, std::vector<std::string> v, std::vector<std::int64_t> t = {});

  std::size_t nvars() const { return vars.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool operator==(const Ambient& o) const;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr make_ambient(unsigned p, std::vector<std::string> vars, std::vector<std::int64_t> tower = {},
                        unsigned root_index = 1);
AmbientPtr make_ambient(const cyclo::Ring& ring, std::vector<std::string> vars,
                        std::vector<std::int64_t> tower = {});

bool same_ambient(const AmbientPtr& a, const AmbientPtr& b);

class TowerPoly {
 public:
  using TermMap = std::map<Exponents, CycElt, GrlexLess>;

  TowerPoly() = default;
  explicit TowerPoly(AmbientPtr amb);

  static TowerPoly constant(AmbientPtr amb, const CycElt& c);
  static TowerPoly integer(AmbientPtr amb, const Int& n);
  /// The variable x_v itself (exponent N_v in the raw grid).
  static TowerPoly variable(AmbientPtr amb, std::size_t v);
  static TowerPoly monomial(AmbientPtr amb, const Exponents& e, const CycElt& c);

  const AmbientPtr& ambient() const { return amb_; }
  const cyclo::Ring& ring() const { return amb_->ring; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of the exponent vector, zero if absent.
  CycElt coeff(const Exponents& e) const;
  /// Largest term in graded lex order. Precondition: nonzero.
  const std::pair<const Exponents, CycElt>& leading() const;
  std::int64_t degree() const;

  /// Adds c * mono, dropping the term if it cancels.
  void add_term(const Exponents& e, const CycElt& c);

  TowerPoly operator+(const TowerPoly& o) const;
  TowerPoly operator-(const TowerPoly& o) const;
  TowerPoly operator-() const;
  TowerPoly operator*(const TowerPoly& o) const;
  TowerPoly& operator+=(const TowerPoly& o);
  TowerPoly& operator-=(const TowerPoly& o);
  TowerPoly& operator*=(const TowerPoly& o);
  TowerPoly scaled(const CycElt& c) const;
  TowerPoly scaled(const Int& n) const;
  TowerPoly pow(std::uint64_t k) const;
  TowerPoly map_coefficients(const std::function<CycElt(const CycElt&)>& fn) const;

  bool operator==(const TowerPoly& o) const;

  std::string str() const;

 private:
  AmbientPtr amb_;
  TermMap terms_;

  void check_compatible(const TowerPoly& o) const;
};

/// Exact quotient a / b, or nullopt when b does not divide a. Throws DivisionByZero.
std::optional<TowerPoly> exact_divide(const TowerPoly& a, const TowerPoly& b);

/// Divides every coefficient by pi^k, or nullopt if some coefficient is not divisible.
std::optional<TowerPoly> divide_by_pi_pow(const TowerPoly& a, std::uint64_t k);

/// pi-adic order of a polynomial: the minimum over its coefficients.
Order ord_at(const TowerPoly& f);

/// Canonical representative modulo pi^m: every coefficient replaced by its digit expansion.
TowerPoly reduce_mod_upow(const TowerPoly& f, std::uint64_t m);

/// The uniformizer pi as a polynomial (equals u = eps - 1 when the root index is 1).
TowerPoly uniformizer_poly(const AmbientPtr& amb);
TowerPoly pi_pow_poly(const AmbientPtr& amb, std::uint64_t k);

/// Substitutes ambient variable v := value in f (value may live in a larger ambient
/// after embedding). Requires integer exponents of v, i.e. multiples of N_v.
TowerPoly substitute(const TowerPoly& f, std::size_t v, const TowerPoly& value);

/// Rewrites f in another ambient over the same ring. index_map[i] is the position of
/// old variable i in the new ambient; exponents are rescaled by the tower moduli.
TowerPoly embed(const TowerPoly& f, const AmbientPtr& target, const std::vector<std::size_t>& index_map);
/// Embedding by variable names.
TowerPoly embed(const TowerPoly& f, const AmbientPtr& target);

/// Ambient with one variable's tower modulus multiplied by k, plus the injection.
struct TowerExtension {
  AmbientPtr ambient;
  std::function<TowerPoly(const TowerPoly&)> inject;
};
TowerExtension tower_extend(const AmbientPtr& amb, std::size_t v, std::int64_t k);

/// Ambient with extra variables appended (all with tower modulus 1).
AmbientPtr with_variables(const AmbientPtr& amb, const std::vector<std::string>& names);

/// Same variables over the ring with root index multiplied by l; pi_old = pi_new^l.
AmbientPtr with_root_index(const AmbientPtr& amb, unsigned l);
TowerPoly change_root_index(const TowerPoly& f, const AmbientPtr& target);

/// Replaces v^k (k >= deg) by v^{k-deg} * tail until the degree in v is below deg, where
/// the relation is v^deg = tail and deg counts whole powers of v.
TowerPoly reduce_power(const TowerPoly& f, std::size_t v, std::uint64_t deg, const TowerPoly& tail);

/// Coefficient of v^k (whole powers) as a polynomial without v.
std::vector<TowerPoly> coefficients_in(const TowerPoly& f, std::size_t v);

/// Determinant by cofactor expansion along the first row (entries in one ambient).
TowerPoly determinant(const std::vector<std::vector<TowerPoly>>& m);

/// A fraction num/den with den a unit in the localization at (pi).
struct LocalElt {
  TowerPoly num;
  TowerPoly den;

  /// Throws NotLocalUnit when den lies in (pi).
  LocalElt(TowerPoly n, TowerPoly d);
  explicit LocalElt(TowerPoly n);

  LocalElt operator+(const LocalElt& o) const;
  LocalElt operator-(const LocalElt& o) const;
  LocalElt operator*(const LocalElt& o) const;
  LocalElt pow(std::uint64_t k) const;
  /// num * o.den == o.num * den
  bool equals(const LocalElt& o) const;
};

bool is_local_unit(const TowerPoly& f);

/// Representative modulo pi^m. A constant denominator is inverted to precision m; a
/// polynomial denominator is kept, with numerator and denominator both reduced.
LocalElt reduce_mod_upow(const LocalElt& f, std::uint64_t m);

// Textual grammar: integers, ambient variable names, `e` (eps), `u` (eps - 1), `pi`
// (uniformizer), + - * ^, parentheses; `x^(a/b)` requires b | N_x.
TowerPoly parse_poly(const AmbientPtr& amb, const std::string& text);

}  // namespace ramlab
