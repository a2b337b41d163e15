#pragma once

// Polynomials over F_p on the raw exponent grid of an ambient: the residue ring modulo (pi).

#include <map>
#include <optional>
#include <vector>

#include "ramlab/polyring.hpp"

namespace ramlab {

class ResiduePoly {
 public:
  using TermMap = std::map<Exponents, unsigned, GrlexLess>;

  ResiduePoly() = default;
  ResiduePoly(unsigned p, std::size_t nvars) : p_(p), nvars_(nvars) {}

  static ResiduePoly constant(unsigned p, std::size_t nvars, long c);
  static ResiduePoly monomial(unsigned p, const Exponents& e, long c);

  unsigned p() const { return p_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t degree() const;
  const std::pair<const Exponents, unsigned>& leading() const;
  unsigned coeff(const Exponents& e) const;

  void add_term(const Exponents& e, long c);

  ResiduePoly operator+(const ResiduePoly& o) const;
  ResiduePoly operator-(const ResiduePoly& o) const;
  ResiduePoly operator*(const ResiduePoly& o) const;
  ResiduePoly scaled(long c) const;
  ResiduePoly pow(std::uint64_t k) const;
  bool operator==(const ResiduePoly& o) const = default;

 private:
  unsigned p_ = 0;
  std::size_t nvars_ = 0;
  TermMap terms_;
};

unsigned mod_inverse(unsigned a, unsigned p);

/// Image of f modulo (pi).
ResiduePoly residue_of(const TowerPoly& f);
/// Lift with coefficients in 0..p-1.
TowerPoly lift(const ResiduePoly& g, const AmbientPtr& amb);

/// h with h^p = g (all raw exponents divisible by p), or nullopt.
std::optional<ResiduePoly> frobenius_root(const ResiduePoly& g);

/// Some h with h^n = g for n prime to p, via leading terms; nullopt when none exists.
std::optional<ResiduePoly> nth_root(const ResiduePoly& g, unsigned n);

/// Solves D^p + c * D = b over F_p[grid] with deg D <= degree_bound, or nullopt.
std::optional<ResiduePoly> solve_artin_schreier(const ResiduePoly& c, const ResiduePoly& b,
                                                std::int64_t degree_bound);

/// One solution of A x = b over F_p (rows of A are equations), or nullopt.
std::optional<std::vector<unsigned>> solve_linear_mod_p(std::vector<std::vector<unsigned>> a,
                                                        std::vector<unsigned> b, unsigned p);

}  // namespace ramlab
