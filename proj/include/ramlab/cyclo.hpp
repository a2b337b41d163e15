#pragma once

// Exact arithmetic in the Eisenstein orders W = Z[pi]/(E(pi)), E(pi) = Phi_p(pi^s + 1).
//
// With s = 1 this is Z[eps] for a primitive p-th root of unity eps, stored in the
// basis 1, u, ..., u^{p-2} where u = pi = eps - 1. Larger s adjoins an s-th root of
// eps - 1; the uniformizer pi then satisfies pi^s = eps - 1. In every case E is
// Eisenstein at p, so (pi) is the unique prime over p and p = w * pi^e with w a unit
// and e = s(p - 1).

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ramlab {

using Int = mpz_class;

/// Order at a discrete valuation: a natural number or infinity.
struct Order {
  std::uint64_t value = 0;
  bool infinite = false;

  static Order inf() { return Order{0, true}; }
  static Order of(std::uint64_t v) { return Order{v, false}; }

  bool operator==(const Order&) const = default;
  bool at_least(std::uint64_t m) const { return infinite || value >= m; }
  std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

Order min(const Order& a, const Order& b);

namespace cyclo {

/// Element of W in the pi-power basis: coeffs[i] multiplies pi^i, i < e.
struct CycElt {
  std::vector<Int> coeffs;

  bool operator==(const CycElt&) const = default;
};

bool is_prime(std::uint64_t n);

class Ring {
 public:
  /// Builds W for the prime p with pi^s = eps - 1. Throws CompositeModulus.
  Ring(unsigned p, unsigned s = 1);

  unsigned p() const { return data_->p; }
  unsigned root_index() const { return data_->s; }
  unsigned degree() const { return data_->e; }
  /// Coefficients of the monic Eisenstein modulus E, low degree first (size e + 1).
  const std::vector<Int>& modulus() const { return data_->modulus; }

  bool operator==(const Ring& o) const { return p() == o.p() && root_index() == o.root_index(); }

  CycElt zero() const;
  CycElt one() const;
  CycElt from_int(const Int& n) const;
  CycElt uniformizer() const;
  CycElt epsilon() const;
  CycElt pi_pow(std::uint64_t k) const;

  bool is_zero(const CycElt& a) const;
  bool is_integer(const CycElt& a) const;

  CycElt add(const CycElt& a, const CycElt& b) const;
  CycElt sub(const CycElt& a, const CycElt& b) const;
  CycElt neg(const CycElt& a) const;
  CycElt mul(const CycElt& a, const CycElt& b) const;
  CycElt scale(const CycElt& a, const Int& k) const;
  CycElt pow(const CycElt& a, std::uint64_t k) const;

  /// Residue class in W/(pi) = F_p, as 0..p-1.
  unsigned residue(const CycElt& a) const;

  /// pi-adic order; infinity iff a = 0.
  Order valuation(const CycElt& a) const;

  /// a / pi. Precondition: residue(a) == 0.
  CycElt div_pi(const CycElt& a) const;

  /// a / pi^k if pi^k divides a.
  std::optional<CycElt> div_pi_pow(const CycElt& a, std::uint64_t k) const;

  /// pi-adic digits d_0..d_{m-1} in 0..p-1 with a = sum d_i pi^i mod pi^m.
  std::vector<unsigned> digits(const CycElt& a, std::uint64_t m) const;

  /// Canonical representative of a modulo pi^m (digit expansion re-expressed in the basis).
  CycElt truncate(const CycElt& a, std::uint64_t m) const;

  /// v with a*v = 1 mod pi^m, or nullopt when a is not a unit at (pi).
  std::optional<CycElt> local_inverse(const CycElt& a, std::uint64_t m) const;

  /// Exact quotient a / b in W, or nullopt. Throws DivisionByZero when b = 0.
  std::optional<CycElt> divide(const CycElt& a, const CycElt& b) const;

  /// Some r in W with r^p = a, or nullopt. Exact for s = 1 and for rational integers.
  std::optional<CycElt> pth_root(const CycElt& a) const;

  /// Coordinates in the eps-power basis 1, eps, ..., eps^{e-1} (s = 1 only).
  std::vector<Int> to_epsilon_basis(const CycElt& a) const;
  CycElt from_epsilon_basis(const std::vector<Int>& c) const;

  std::string to_string(const CycElt& a) const;

 private:
  struct Data {
    unsigned p = 0;
    unsigned s = 0;
    unsigned e = 0;
    std::vector<Int> modulus;
  };
  std::shared_ptr<const Data> data_;

  void reduce(std::vector<Int>& c) const;
};

/// The arithmetic facts about p in W that the rest of the toolkit relies on.
struct RingDesc {
  Ring ring;
  std::vector<Int> modulus;  // E(pi), monic, low degree first
  CycElt unit_w;             // p = unit_w * pi^e
  CycElt cprime_eps;         // C'(eps, 1)
  CycElt cprime_eps_inv;     // its inverse in W
  bool verified = false;     // identities re-checked by exact multiplication
};

/// Ring descriptor for prime p (s = 1 gives Z[eps]). Throws CompositeModulus.
RingDesc cyclo_ring(unsigned p, unsigned s = 1);

/// Homogeneous coefficients c_i of x^i h^{p-1-i} in C'(x, h) = ((x^p - h^p) - (x - h)^p) / (p (x - h)).
std::vector<Int> cprime_coefficients(unsigned p);

/// Coefficients of Phi_n(x + shift) for n = p^r, low degree first.
std::vector<Int> shifted_cyclotomic(unsigned p, unsigned r, const Int& shift);

}  // namespace cyclo
}  // namespace ramlab
