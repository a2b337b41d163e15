#include "ramlab/ramification.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "ramlab/error.hpp"

namespace ramlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PthPower: return "pth_power";
    case Verdict::Tame: return "tame";
    case Verdict::Ramified: return "ramified";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(RamifiedReason r) {
  switch (r) {
    case RamifiedReason::None: return "none";
    case RamifiedReason::DividesP: return "divides_p";
    case RamifiedReason::GammaBelowThreshold: return "gamma_below_threshold";
  }
  return "?";
}

std::optional<TowerPoly> pth_root_poly(const TowerPoly& f) {
  const auto& amb = f.ambient();
  const auto& R = amb->ring;
  const unsigned p = R.p();
  if (f.is_zero()) return f;
  const auto& [le, lc] = f.leading();
  Exponents lead(le.size());
  for (std::size_t i = 0; i < le.size(); ++i) {
    if (le[i] % p != 0) return std::nullopt;
    lead[i] = le[i] / p;
  }
  auto a = R.pth_root(lc);
  if (!a) return std::nullopt;
  TowerPoly r = TowerPoly::monomial(amb, lead, *a);
  // Each further term t contributes p * lt(r)^{p-1} * t to the leading remainder.
  const CycElt scale = R.scale(R.pow(*a, p - 1), Int(p));
  for (;;) {
    const TowerPoly rem = f - r.pow(p);
    if (rem.is_zero()) return r;
    const auto& [re, rc] = rem.leading();
    Exponents t(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      t[i] = re[i] - lead[i] * static_cast<std::int64_t>(p - 1);
      if (t[i] < 0) return std::nullopt;
    }
    if (!GrlexLess{}(t, lead)) return std::nullopt;
    auto c = R.divide(rc, scale);
    if (!c) return std::nullopt;
    r.add_term(t, *c);
  }
}

RamClass classify(const TowerPoly& f, const GammaBounds& bounds) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "classify of zero");
  RamClass rc;
  rc.threshold = threshold(f.ring());
  rc.ord = ord_at(f);
  if (auto root = pth_root_poly(f)) {
    rc.verdict = Verdict::PthPower;
    rc.root = *root;
    return rc;
  }
  if (rc.ord.value >= 1) {
    rc.verdict = Verdict::Ramified;
    rc.reason = RamifiedReason::DividesP;
    return rc;
  }
  GammaCert cert = gamma(f, f.ring().p(), rc.threshold, bounds);
  switch (cert.status) {
    case GammaStatus::AtLeast:
      rc.verdict = Verdict::Tame;
      break;
    case GammaStatus::Exact:
      rc.verdict = Verdict::Ramified;
      rc.reason = RamifiedReason::GammaBelowThreshold;
      break;
    case GammaStatus::Unknown:
      rc.verdict = Verdict::Unknown;
      break;
  }
  rc.cert = std::move(cert);
  return rc;
}

CPrimePair cprime(const TowerPoly& h0, const std::string& var) {
  const auto& base = h0.ambient();
  const auto& R = base->ring;
  const unsigned p = R.p();
  std::string name = var;
  while (base->index_of(name)) name += "_";
  CPrimePair out;
  out.p = p;
  out.ambient = with_variables(base, {name});
  out.h = embed(h0, out.ambient);
  const auto& amb = out.ambient;
  const TowerPoly X = TowerPoly::variable(amb, amb->nvars() - 1);
  const TowerPoly& h = out.h;
  const TowerPoly xmh = X - h;
  out.c = (X.pow(p) - h.pow(p)) - xmh.pow(p);
  auto q = exact_divide(out.c, xmh.scaled(Int(p)));
  if (!q) throw Error(ErrorCode::HypothesisFailure, "C is not divisible by p (X - h)");
  out.cp = *q;

  TowerPoly sum(amb);
  for (unsigned i = 0; i < p; ++i) sum += X.pow(i) * h.pow(p - 1 - i);
  out.sum_identity = sum == xmh.pow(p - 1) + out.cp.scaled(Int(p));

  // C' - h^{p-1} lies in (X - h) + (p): reduce X -> h, then every coefficient must be divisible by p.
  const TowerPoly at_h = substitute(out.cp, amb->nvars() - 1, h) - h.pow(p - 1);
  bool cong = true;
  for (const auto& [e, c] : at_h.terms())
    if (!R.divide(c, R.from_int(p))) cong = false;
  out.congruence = cong;

  const auto desc = cyclo::cyclo_ring(p, R.root_index());
  const CycElt em1 = R.sub(R.epsilon(), R.one());
  out.cprime_eps_identity =
      R.neg(R.mul(desc.cprime_eps_inv, R.pow(em1, p - 1))) == R.from_int(p) && desc.verified;
  return out;
}

EisensteinReport eisenstein_shift_check(unsigned p, unsigned r) {
  EisensteinReport rep;
  rep.p = p;
  rep.r = r;
  rep.coefficients = cyclo::shifted_cyclotomic(p, r, Int(1));
  const auto& c = rep.coefficients;
  rep.monic = c.back() == 1;
  rep.divisible = true;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i] % p != 0) rep.divisible = false;
  rep.constant_is_p = c.front() == p;
  return rep;
}

// ---------------------------------------------------------------------------------------
// Square-free / coprimality probes

namespace {

using u64 = std::uint64_t;
using UPoly = std::vector<u64>;  // low degree first, mod P

u64 mulmod(u64 a, u64 b, u64 P) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % P); }

u64 powmod(u64 a, u64 k, u64 P) {
  u64 r = 1 % P;
  while (k) {
    if (k & 1) r = mulmod(r, a, P);
    a = mulmod(a, a, P);
    k >>= 1;
  }
  return r;
}

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly upoly_mod(UPoly a, const UPoly& b, u64 P) {
  trim(a);
  const u64 inv = powmod(b.back(), P - 2, P);
  while (a.size() >= b.size()) {
    const u64 f = mulmod(a.back(), inv, P);
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = (a[off + i] + P - mulmod(f, b[i], P)) % P;
    trim(a);
  }
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b, u64 P) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(a, b, P);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

UPoly derivative(const UPoly& a, u64 P) {
  UPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % P, P));
  trim(d);
  return d;
}

struct Specializer {
  u64 P = 0;
  u64 pi0 = 0;  // image of the uniformizer, a root of E mod P
};

std::optional<Specializer> find_specializer(const cyclo::Ring& R) {
  const auto& E = R.modulus();
  const unsigned p = R.p();
  u64 P = 1009;
  for (int attempts = 0; attempts < 60; ++attempts) {
    do {
      ++P;
    } while (P % p != 1 || !cyclo::is_prime(P));
    for (u64 x = 1; x < P; ++x) {
      u64 v = 0;
      for (std::size_t i = E.size(); i-- > 0;) {
        Int c = E[i] % Int(P);
        if (c < 0) c += P;
        v = (mulmod(v, x, P) + c.get_ui()) % P;
      }
      if (v == 0) return Specializer{P, x};
    }
  }
  return std::nullopt;
}

u64 coeff_image(const CycElt& c, const Specializer& s) {
  u64 v = 0;
  for (std::size_t i = c.coeffs.size(); i-- > 0;) {
    Int k = c.coeffs[i] % Int(s.P);
    if (k < 0) k += s.P;
    v = (mulmod(v, s.pi0, s.P) + k.get_ui()) % s.P;
  }
  return v;
}

UPoly specialize(const TowerPoly& f, std::size_t v, const std::vector<u64>& point, const Specializer& s) {
  UPoly out;
  for (const auto& [e, c] : f.terms()) {
    u64 val = coeff_image(c, s);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != v) val = mulmod(val, powmod(point[i], static_cast<u64>(e[i]), s.P), s.P);
    const auto k = static_cast<std::size_t>(e[v]);
    if (out.size() <= k) out.resize(k + 1, 0);
    out[k] = (out[k] + val) % s.P;
  }
  trim(out);
  return out;
}

std::int64_t min_exponent(const TowerPoly& f, std::size_t v) {
  std::int64_t m = -1;
  for (const auto& [e, c] : f.terms()) m = m < 0 ? e[v] : std::min(m, e[v]);
  return std::max<std::int64_t>(m, 0);
}

bool depends_on(const TowerPoly& f, std::size_t v) {
  return std::any_of(f.terms().begin(), f.terms().end(), [&](const auto& t) { return t.first[v] != 0; });
}

}  // namespace

SquarefreeReport squarefree_coprime_check(const std::vector<TowerPoly>& elements, std::uint64_t seed) {
  SquarefreeReport rep;
  auto fail = [&](bool certified, const std::string& msg) {
    rep.pass = false;
    rep.certified = rep.certified || certified;
    rep.notes.push_back(msg);
  };
  if (elements.empty()) return rep;
  const auto& amb = elements.front().ambient();
  for (const auto& f : elements) {
    if (!same_ambient(f.ambient(), amb)) throw Error(ErrorCode::AmbientMismatch, "squarefree_coprime_check");
    if (f.is_zero()) {
      fail(true, "zero element");
      return rep;
    }
  }
  const std::size_t n = elements.size();
  // Exact: monomial factors and powers of the uniformizer.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = elements[i];
    const Order o = ord_at(f);
    if (o.value >= 2) fail(true, "element " + std::to_string(i) + " is divisible by pi^2");
    for (std::size_t v = 0; v < amb->nvars(); ++v)
      if (min_exponent(f, v) >= 2)
        fail(true, "element " + std::to_string(i) + " is divisible by the square of a root of " + amb->vars[v]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& g = elements[j];
      if (o.value >= 1 && ord_at(g).value >= 1)
        fail(true, "elements " + std::to_string(i) + " and " + std::to_string(j) + " share the factor pi");
      for (std::size_t v = 0; v < amb->nvars(); ++v)
        if (min_exponent(f, v) >= 1 && min_exponent(g, v) >= 1)
          fail(true, "elements " + std::to_string(i) + " and " + std::to_string(j) + " share a root of " +
                         amb->vars[v]);
    }
  }
  if (!rep.pass || amb->nvars() == 0) return rep;

  auto spec = find_specializer(amb->ring);
  if (!spec) {
    rep.notes.push_back("no specialization prime found; probes skipped");
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(1, spec->P - 1);
  constexpr int kProbes = 3;
  auto probe_all = [&](const std::function<bool(const std::vector<u64>&, std::size_t)>& hit, std::size_t v) {
    for (int t = 0; t < kProbes; ++t) {
      std::vector<u64> point(amb->nvars());
      for (auto& x : point) x = dist(rng);
      if (!hit(point, v)) return false;
    }
    return true;
  };
  for (std::size_t v = 0; v < amb->nvars(); ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = elements[i];
      if (!depends_on(f, v)) continue;
      const bool sq = probe_all(
          [&](const std::vector<u64>& pt, std::size_t var) {
            UPoly a = specialize(f, var, pt, *spec);
            if (a.size() < 2) return false;
            return upoly_gcd(a, derivative(a, spec->P), spec->P).size() >= 2;
          },
          v);
      if (sq) fail(false, "probe: element " + std::to_string(i) + " looks non-squarefree in " + amb->vars[v]);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto& g = elements[j];
        if (!depends_on(g, v)) continue;
        const bool common = probe_all(
            [&](const std::vector<u64>& pt, std::size_t var) {
              return upoly_gcd(specialize(f, var, pt, *spec), specialize(g, var, pt, *spec), spec->P).size() >= 2;
            },
            v);
        if (common)
          fail(false, "probe: elements " + std::to_string(i) + " and " + std::to_string(j) +
                          " share a factor in " + amb->vars[v]);
      }
    }
  }
  if (rep.pass) rep.notes.push_back("exact checks and gcd probes mod " + std::to_string(spec->P) + " passed");
  return rep;
}

CanonicalResult canonical_reduce(const Presentation& pres, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<TowerPoly> all;
  for (const auto& [q, k] : pres.factors) all.push_back(q);
  CanonicalResult out{pres.unit, {}, {}, squarefree_coprime_check(all)};
  if (!out.check.pass) {
    std::string msg = "presentation rejected";
    for (const auto& s : out.check.notes) msg += "; " + s;
    throw Error(ErrorCode::PresentationRejected, msg);
  }
  for (const auto& [q, k] : pres.factors) {
    const std::uint64_t m = k % n;
    if (m == 0) continue;
    out.element *= q.pow(m);
    out.divisors.push_back(q);
    out.exponents.push_back(m);
  }
  return out;
}

}  // namespace ramlab
