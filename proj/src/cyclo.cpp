#include "ramlab/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ramlab/error.hpp"

namespace ramlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositeModulus: return "CompositeModulus";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotLocalUnit: return "NotLocalUnit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::AmbientUnsupported: return "AmbientUnsupported";
    case ErrorCode::NotTame: return "NotTame";
    case ErrorCode::ClosureFailure: return "ClosureFailure";
    case ErrorCode::HypothesisFailure: return "HypothesisFailure";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::ModularExponent: return "ModularExponent";
    case ErrorCode::PresentationRejected: return "PresentationRejected";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

Order min(const Order& a, const Order& b) {
  if (a.infinite) return b;
  if (b.infinite) return a;
  return Order::of(std::min(a.value, b.value));
}

namespace cyclo {

namespace {

Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

unsigned mod_p(const Int& a, unsigned p) {
  Int r = a % p;
  if (r < 0) r += p;
  return static_cast<unsigned>(r.get_ui());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring::Ring(unsigned p, unsigned s) {
  if (!is_prime(p)) throw Error(ErrorCode::CompositeModulus, std::to_string(p) + " is not prime");
  if (s == 0) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
  auto d = std::make_shared<Data>();
  d->p = p;
  d->s = s;
  d->e = s * (p - 1);
  // Phi_p(v + 1) has coefficient binom(p, i + 1) at v^i; substitute v = pi^s.
  d->modulus.assign(d->e + 1, Int(0));
  for (unsigned i = 0; i < p; ++i) d->modulus[s * i] = binomial(p, i + 1);
  data_ = std::move(d);
}

void Ring::reduce(std::vector<Int>& c) const {
  const unsigned e = degree();
  const auto& E = modulus();
  for (std::size_t k = c.size(); k-- > e;) {
    if (c[k] == 0) continue;
    Int t = c[k];
    for (unsigned i = 0; i < e; ++i)
      if (E[i] != 0) c[k - e + i] -= t * E[i];
    c[k] = 0;
  }
  c.resize(e, Int(0));
}

CycElt Ring::zero() const { return CycElt{std::vector<Int>(degree(), Int(0))}; }

CycElt Ring::one() const { return from_int(1); }

CycElt Ring::from_int(const Int& n) const {
  CycElt r = zero();
  r.coeffs[0] = n;
  return r;
}

CycElt Ring::uniformizer() const { return pi_pow(1); }

CycElt Ring::epsilon() const { return add(one(), pi_pow(root_index())); }

CycElt Ring::pi_pow(std::uint64_t k) const {
  if (k < degree()) {
    CycElt r = zero();
    r.coeffs[k] = 1;
    return r;
  }
  CycElt base = zero();
  if (degree() == 1) {
    base.coeffs[0] = -modulus()[0];
  } else {
    base.coeffs[1] = 1;
  }
  return pow(base, k);
}

bool Ring::is_zero(const CycElt& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const Int& c) { return c == 0; });
}

bool Ring::is_integer(const CycElt& a) const {
  return std::all_of(a.coeffs.begin() + 1, a.coeffs.end(), [](const Int& c) { return c == 0; });
}

CycElt Ring::add(const CycElt& a, const CycElt& b) const {
  CycElt r = a;
  for (unsigned i = 0; i < degree(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

CycElt Ring::sub(const CycElt& a, const CycElt& b) const {
  CycElt r = a;
  for (unsigned i = 0; i < degree(); ++i) r.coeffs[i] -= b.coeffs[i];
  return r;
}

CycElt Ring::neg(const CycElt& a) const {
  CycElt r = a;
  for (auto& c : r.coeffs) c = -c;
  return r;
}

CycElt Ring::mul(const CycElt& a, const CycElt& b) const {
  const unsigned e = degree();
  std::vector<Int> c(2 * e - 1, Int(0));
  for (unsigned i = 0; i < e; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < e; ++j)
      if (b.coeffs[j] != 0) c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  reduce(c);
  return CycElt{std::move(c)};
}

CycElt Ring::scale(const CycElt& a, const Int& k) const {
  CycElt r = a;
  for (auto& c : r.coeffs) c *= k;
  return r;
}

CycElt Ring::pow(const CycElt& a, std::uint64_t k) const {
  CycElt result = one();
  CycElt base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

unsigned Ring::residue(const CycElt& a) const { return mod_p(a.coeffs[0], p()); }

CycElt Ring::div_pi(const CycElt& a) const {
  const unsigned e = degree();
  const auto& E = modulus();
  Int k = a.coeffs[0] / p();
  CycElt r = zero();
  for (unsigned i = 1; i < e; ++i) r.coeffs[i - 1] = a.coeffs[i];
  // p / pi = -(E_1 + E_2 pi + ... + E_e pi^{e-1}) modulo E.
  for (unsigned i = 1; i <= e; ++i)
    if (E[i] != 0) r.coeffs[i - 1] -= k * E[i];
  return r;
}

Order Ring::valuation(const CycElt& a) const {
  if (is_zero(a)) return Order::inf();
  std::uint64_t v = 0;
  CycElt cur = a;
  while (residue(cur) == 0) {
    cur = div_pi(cur);
    ++v;
  }
  return Order::of(v);
}

std::optional<CycElt> Ring::div_pi_pow(const CycElt& a, std::uint64_t k) const {
  CycElt cur = a;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (residue(cur) != 0) return std::nullopt;
    cur = div_pi(cur);
  }
  return cur;
}

std::vector<unsigned> Ring::digits(const CycElt& a, std::uint64_t m) const {
  std::vector<unsigned> d;
  d.reserve(m);
  CycElt cur = a;
  for (std::uint64_t i = 0; i < m; ++i) {
    unsigned r = residue(cur);
    d.push_back(r);
    cur.coeffs[0] -= r;
    cur = div_pi(cur);
  }
  return d;
}

CycElt Ring::truncate(const CycElt& a, std::uint64_t m) const {
  auto d = digits(a, m);
  const CycElt pi = uniformizer();
  CycElt r = zero();
  for (std::size_t i = d.size(); i-- > 0;) {
    r = mul(r, pi);
    r.coeffs[0] += d[i];
  }
  return r;
}

std::optional<CycElt> Ring::local_inverse(const CycElt& a, std::uint64_t m) const {
  const unsigned r0 = residue(a);
  if (r0 == 0) return std::nullopt;
  Int inv;
  Int rr = r0;
  Int pp = p();
  mpz_invert(inv.get_mpz_t(), rr.get_mpz_t(), pp.get_mpz_t());
  CycElt v = from_int(inv);
  std::uint64_t prec = 1;
  const CycElt two = from_int(2);
  while (prec < m) {
    prec = std::min<std::uint64_t>(2 * prec, m);
    v = truncate(mul(v, sub(two, mul(a, v))), prec);
  }
  v = truncate(v, m);
  return v;
}

std::optional<CycElt> Ring::divide(const CycElt& a, const CycElt& b) const {
  if (is_zero(b)) throw Error(ErrorCode::DivisionByZero, "division by zero in W");
  if (is_zero(a)) return zero();
  const unsigned e = degree();
  if (is_integer(b)) {
    CycElt q = zero();
    const Int& d = b.coeffs[0];
    for (unsigned i = 0; i < e; ++i) {
      if (!mpz_divisible_p(a.coeffs[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      q.coeffs[i] = a.coeffs[i] / d;
    }
    return q;
  }
  // Column j of M is b * pi^j; solve M q = a over Q and require integrality.
  std::vector<std::vector<mpq_class>> M(e, std::vector<mpq_class>(e + 1));
  CycElt col = b;
  const CycElt pi = uniformizer();
  for (unsigned j = 0; j < e; ++j) {
    for (unsigned i = 0; i < e; ++i) M[i][j] = col.coeffs[i];
    col = mul(col, pi);
  }
  for (unsigned i = 0; i < e; ++i) M[i][e] = a.coeffs[i];
  for (unsigned c = 0; c < e; ++c) {
    unsigned piv = c;
    while (piv < e && M[piv][c] == 0) ++piv;
    if (piv == e) return std::nullopt;  // unreachable: W is a domain
    std::swap(M[piv], M[c]);
    for (unsigned r = 0; r < e; ++r) {
      if (r == c || M[r][c] == 0) continue;
      mpq_class f = M[r][c] / M[c][c];
      for (unsigned k = c; k <= e; ++k) M[r][k] -= f * M[c][k];
    }
  }
  CycElt q = zero();
  for (unsigned i = 0; i < e; ++i) {
    mpq_class v = M[i][e] / M[i][i];
    v.canonicalize();
    if (v.get_den() != 1) return std::nullopt;
    q.coeffs[i] = v.get_num();
  }
  if (!(mul(b, q) == a)) return std::nullopt;
  return q;
}

std::optional<CycElt> Ring::pth_root(const CycElt& a) const {
  const unsigned pp = p();
  if (is_zero(a)) return zero();
  if (is_integer(a)) {
    Int r;
    const Int& n = a.coeffs[0];
    if (pp == 2 && n < 0) {
      // no integer root; fall through
    } else if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), pp) != 0) {
      return from_int(r);
    }
  }
  if (root_index() != 1 || pp == 2 || pp > 7) return std::nullopt;

  // Candidate generation through the complex embeddings eps -> zeta^k, then exact check.
  using C = std::complex<long double>;
  const unsigned e = degree();
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  std::vector<C> uk(e);
  for (unsigned k = 1; k <= e; ++k) uk[k - 1] = std::polar(1.0L, two_pi * k / pp) - C(1.0L, 0.0L);
  std::vector<C> sigma(e);
  for (unsigned k = 0; k < e; ++k) {
    C acc(0, 0), pw(1, 0);
    for (unsigned i = 0; i < e; ++i) {
      acc += pw * static_cast<long double>(a.coeffs[i].get_d());
      pw *= uk[k];
    }
    sigma[k] = acc;
  }
  const unsigned half = e / 2;
  std::vector<unsigned> choice(half, 0);
  while (true) {
    std::vector<C> rhs(e);
    for (unsigned k = 0; k < half; ++k) {
      C base = std::polar(std::pow(std::abs(sigma[k]), 1.0L / pp),
                          (std::arg(sigma[k]) + two_pi * choice[k]) / pp);
      rhs[k] = base;
      rhs[e - 1 - k] = std::conj(base);
    }
    // Solve sum_i c_i uk[k]^i = rhs[k].
    std::vector<std::vector<C>> M(e, std::vector<C>(e + 1));
    for (unsigned k = 0; k < e; ++k) {
      C pw(1, 0);
      for (unsigned i = 0; i < e; ++i) {
        M[k][i] = pw;
        pw *= uk[k];
      }
      M[k][e] = rhs[k];
    }
    for (unsigned c = 0; c < e; ++c) {
      unsigned piv = c;
      for (unsigned r = c + 1; r < e; ++r)
        if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
      std::swap(M[piv], M[c]);
      for (unsigned r = 0; r < e; ++r) {
        if (r == c) continue;
        C f = M[r][c] / M[c][c];
        for (unsigned k = c; k <= e; ++k) M[r][k] -= f * M[c][k];
      }
    }
    CycElt cand = zero();
    bool ok = true;
    for (unsigned i = 0; i < e; ++i) {
      long double v = (M[i][e] / M[i][i]).real();
      if (!std::isfinite(v) || std::fabs(v) > 9.0e15L) {
        ok = false;
        break;
      }
      cand.coeffs[i] = Int(static_cast<long>(std::llround(v)));
    }
    if (ok && pow(cand, pp) == a) return cand;
    unsigned k = 0;
    while (k < half && ++choice[k] == pp) choice[k++] = 0;
    if (k == half) break;
  }
  return std::nullopt;
}

std::vector<Int> Ring::to_epsilon_basis(const CycElt& a) const {
  if (root_index() != 1) throw Error(ErrorCode::InvalidArgument, "eps basis needs root index 1");
  const unsigned e = degree();
  std::vector<Int> out(e, Int(0));
  // (eps - 1)^i = sum_j binom(i, j) eps^j (-1)^{i-j}
  for (unsigned i = 0; i < e; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j <= i; ++j) {
      Int term = a.coeffs[i] * binomial(i, j);
      if ((i - j) % 2) term = -term;
      out[j] += term;
    }
  }
  return out;
}

CycElt Ring::from_epsilon_basis(const std::vector<Int>& c) const {
  if (root_index() != 1) throw Error(ErrorCode::InvalidArgument, "eps basis needs root index 1");
  std::vector<Int> out(std::max<std::size_t>(c.size(), degree()), Int(0));
  // eps^j = (u + 1)^j
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    for (std::size_t i = 0; i <= j; ++i) out[i] += c[j] * binomial(static_cast<unsigned>(j), static_cast<unsigned>(i));
  }
  reduce(out);
  return CycElt{std::move(out)};
}

std::string Ring::to_string(const CycElt& a) const {
  if (is_integer(a)) return a.coeffs[0].get_str();
  const std::string sym = root_index() == 1 ? "u" : "pi";
  std::string s = "(";
  bool first = true;
  for (unsigned i = 0; i < degree(); ++i) {
    const Int& c = a.coeffs[i];
    if (c == 0) continue;
    Int mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (i == 0) {
      s += mag.get_str();
      continue;
    }
    if (mag != 1) s += mag.get_str() + "*";
    s += sym;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s + ")";
}

std::vector<Int> shifted_cyclotomic(unsigned p, unsigned r, const Int& shift) {
  if (!is_prime(p)) throw Error(ErrorCode::CompositeModulus, std::to_string(p) + " is not prime");
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 1; i < r; ++i) q *= p;
  const std::uint64_t deg = (p - 1) * q;
  std::vector<Int> out(deg + 1, Int(0));
  // Phi_{p^r}(x) = sum_{k < p} x^{k p^{r-1}}
  for (unsigned k = 0; k < p; ++k) {
    const std::uint64_t n = k * q;
    std::vector<Int> shift_pows(n + 1);
    shift_pows[0] = 1;
    for (std::uint64_t i = 1; i <= n; ++i) shift_pows[i] = shift_pows[i - 1] * shift;
    for (std::uint64_t i = 0; i <= n; ++i)
      out[i] += binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)) * shift_pows[n - i];
  }
  return out;
}

RingDesc cyclo_ring(unsigned p, unsigned s) {
  Ring ring(p, s);
  RingDesc d{ring, ring.modulus(), ring.zero(), ring.zero(), ring.zero(), false};
  const unsigned e = ring.degree();
  auto w = ring.divide(ring.from_int(p), ring.pi_pow(e));
  if (!w) throw Error(ErrorCode::HypothesisFailure, "pi^e does not divide p");
  d.unit_w = *w;
  const auto cp = cprime_coefficients(p);
  const CycElt eps = ring.epsilon();
  CycElt acc = ring.zero();
  CycElt pw = ring.one();
  for (const auto& c : cp) {
    acc = ring.add(acc, ring.scale(pw, c));
    pw = ring.mul(pw, eps);
  }
  d.cprime_eps = acc;
  auto inv = ring.divide(ring.one(), acc);
  if (!inv) throw Error(ErrorCode::HypothesisFailure, "C'(eps, 1) is not a unit");
  d.cprime_eps_inv = *inv;
  // p = -(c'_eps)^{-1} (eps - 1)^{p-1}, checked as p * c'_eps + (eps - 1)^{p-1} = 0.
  const CycElt em1 = ring.sub(eps, ring.one());
  const bool id1 = ring.is_zero(ring.add(ring.scale(acc, p), ring.pow(em1, p - 1)));
  const bool id2 = ring.mul(*w, ring.pi_pow(e)) == ring.from_int(p);
  const bool id3 = ring.valuation(ring.from_int(p)) == Order::of(e);
  d.verified = id1 && id2 && id3;
  return d;
}

std::vector<Int> cprime_coefficients(unsigned p) {
  // Numerator (x^p - h^p) - (x - h)^p as homogeneous coefficients of x^i h^{p-i}.
  std::vector<Int> num(p + 1, Int(0));
  num[p] += 1;
  num[0] -= 1;
  for (unsigned i = 0; i <= p; ++i) {
    Int c = binomial(p, i);
    if ((p - i) % 2) c = -c;
    num[i] -= c;
  }
  for (auto& c : num) {
    if (c % p != 0) throw Error(ErrorCode::HypothesisFailure, "C is not divisible by p");
    c /= p;
  }
  // Divide by (x - h): synthetic division on the dehomogenized polynomial in x (h = 1).
  std::vector<Int> q(p, Int(0));
  Int carry = 0;
  for (unsigned i = p; i-- > 0;) {
    carry += num[i + 1];
    q[i] = carry;
  }
  if (carry + num[0] != 0) throw Error(ErrorCode::HypothesisFailure, "C is not divisible by x - h");
  return q;
}

}  // namespace cyclo
}  // namespace ramlab
