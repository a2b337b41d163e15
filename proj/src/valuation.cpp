#include "ramlab/valuation.hpp"

#include <algorithm>

#include "ramlab/error.hpp"

namespace ramlab {

std::string to_string(GammaStatus s) {
  switch (s) {
    case GammaStatus::Exact: return "exact";
    case GammaStatus::AtLeast: return "at_least";
    case GammaStatus::Unknown: return "unknown";
  }
  return "?";
}

std::uint64_t threshold(const cyclo::Ring& ring) {
  const std::uint64_t e = ring.degree(), p = ring.p();
  if (e % (p - 1) != 0) throw Error(ErrorCode::AmbientUnsupported, "p - 1 does not divide ord(p)");
  return p * e / (p - 1);
}

namespace {

struct State {
  TowerPoly num, den;
};

GammaCert finish(const TowerPoly& f, unsigned n, std::uint64_t depth, State st, GammaStatus status,
                 std::uint64_t level, std::vector<std::string> log) {
  GammaCert c;
  c.n = n;
  c.status = status;
  c.level = level;
  c.depth = depth;
  c.f = f;
  const TowerPoly r = f * st.den.pow(n) - st.num.pow(n);
  auto b = divide_by_pi_pow(r, level);
  if (!b) throw Error(ErrorCode::HypothesisFailure, "internal: witness does not reach its level");
  c.b = *b;
  c.num = std::move(st.num);
  c.den = std::move(st.den);
  c.branch_log = std::move(log);
  return c;
}

// Unit f and n = p.
GammaCert gamma_unit_p(const TowerPoly& f, std::uint64_t depth, const GammaBounds& bounds) {
  const auto& amb = f.ambient();
  const auto& R = amb->ring;
  const unsigned p = R.p();
  const std::uint64_t e = R.degree();
  const std::uint64_t T = threshold(R);
  const std::uint64_t j0 = e / (p - 1);
  const auto desc = cyclo::cyclo_ring(p, R.root_index());
  const unsigned wbar = R.residue(desc.unit_w);
  const unsigned winv = mod_inverse(wbar, p);

  State st{TowerPoly(amb), TowerPoly::integer(amb, 1)};
  std::vector<std::string> log;
  for (;;) {
    const TowerPoly r = f * st.den.pow(p) - st.num.pow(p);
    const Order m = ord_at(r);
    if (m.at_least(depth)) {
      log.push_back("reached depth " + std::to_string(depth));
      return finish(f, p, depth, std::move(st), GammaStatus::AtLeast, depth, std::move(log));
    }
    const std::uint64_t mv = m.value;
    const TowerPoly B = *divide_by_pi_pow(r, mv);
    const ResiduePoly bbar = residue_of(B);
    if (mv < T) {
      if (mv % p != 0) {
        log.push_back("level " + std::to_string(mv) + ": order prime to p below threshold, stop");
        return finish(f, p, depth, std::move(st), GammaStatus::Exact, mv, std::move(log));
      }
      auto root = frobenius_root(bbar);
      if (!root) {
        log.push_back("level " + std::to_string(mv) + ": residue has no p-th root, stop");
        return finish(f, p, depth, std::move(st), GammaStatus::Exact, mv, std::move(log));
      }
      st.num += lift(*root, amb) * pi_pow_poly(amb, mv / p);
      log.push_back("level " + std::to_string(mv) + ": frobenius correction at pi^" + std::to_string(mv / p));
    } else if (mv == T) {
      const ResiduePoly nbar = residue_of(st.num);
      const ResiduePoly c = nbar.pow(p - 1).scaled(wbar);
      const std::int64_t complete = std::max<std::int64_t>({bbar.degree(), nbar.degree(), 0});
      std::int64_t bound = complete;
      if (bounds.as_degree && *bounds.as_degree < complete) bound = *bounds.as_degree;
      auto sol = solve_artin_schreier(c, bbar, bound);
      if (!sol) {
        if (bound < complete) {
          log.push_back("level " + std::to_string(mv) + ": no Artin-Schreier correction of degree <= " +
                        std::to_string(bound) + ", search incomplete");
          GammaCert cert = finish(f, p, depth, std::move(st), GammaStatus::Unknown, mv, std::move(log));
          cert.bound_hit = bound;
          return cert;
        }
        log.push_back("level " + std::to_string(mv) + ": Artin-Schreier equation unsolvable, stop");
        return finish(f, p, depth, std::move(st), GammaStatus::Exact, mv, std::move(log));
      }
      st.num += lift(*sol, amb) * pi_pow_poly(amb, j0);
      log.push_back("level " + std::to_string(mv) + ": Artin-Schreier correction at pi^" + std::to_string(j0));
    } else {
      const std::uint64_t j = mv - e;
      const TowerPoly np1 = st.num.pow(p - 1);
      TowerPoly num = np1 * st.num + B.scaled(Int(winv)) * pi_pow_poly(amb, j);
      TowerPoly den = st.den * np1;
      st.num = reduce_mod_upow(num, depth);
      st.den = reduce_mod_upow(den, depth);
      log.push_back("level " + std::to_string(mv) + ": linear correction at pi^" + std::to_string(j));
    }
  }
}

// Unit f and n prime to p.
GammaCert gamma_unit_tame(const TowerPoly& f, unsigned n, std::uint64_t depth) {
  const auto& amb = f.ambient();
  std::vector<std::string> log;
  auto r0 = nth_root(residue_of(f), n);
  if (!r0) {
    log.push_back("level 0: residue has no n-th root, stop");
    return finish(f, n, depth, State{TowerPoly(amb), TowerPoly::integer(amb, 1)}, GammaStatus::Exact, 0,
                  std::move(log));
  }
  State st{lift(*r0, amb), TowerPoly::integer(amb, 1)};
  log.push_back("level 0: residue root");
  for (;;) {
    const TowerPoly r = f * st.den.pow(n) - st.num.pow(n);
    const Order m = ord_at(r);
    if (m.at_least(depth)) {
      log.push_back("reached depth " + std::to_string(depth));
      return finish(f, n, depth, std::move(st), GammaStatus::AtLeast, depth, std::move(log));
    }
    const TowerPoly nn1 = st.num.pow(n - 1);
    TowerPoly num = (nn1 * st.num).scaled(Int(n)) + r;
    TowerPoly den = (st.den * nn1).scaled(Int(n));
    st.num = reduce_mod_upow(num, depth);
    st.den = reduce_mod_upow(den, depth);
    log.push_back("level " + std::to_string(m.value) + ": newton step");
  }
}

}  // namespace

GammaCert gamma(const TowerPoly& f, unsigned n, std::uint64_t depth, const GammaBounds& bounds) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "gamma of zero");
  const auto& amb = f.ambient();
  const unsigned p = amb->ring.p();
  if (n == 0 || (n % p == 0 && n != p))
    throw Error(ErrorCode::InvalidArgument, "root index must be p or prime to p");
  const Order k = ord_at(f);
  if (k.at_least(depth)) {
    return finish(f, n, depth, State{TowerPoly(amb), TowerPoly::integer(amb, 1)}, GammaStatus::AtLeast, depth,
                  {"f vanishes to depth " + std::to_string(depth)});
  }
  if (k.value > 0) {
    if (k.value % n != 0) {
      return finish(f, n, depth, State{TowerPoly(amb), TowerPoly::integer(amb, 1)}, GammaStatus::Exact, k.value,
                    {"order " + std::to_string(k.value) + " not divisible by " + std::to_string(n) + ", stop"});
    }
    const TowerPoly g = *divide_by_pi_pow(f, k.value);
    GammaCert inner = gamma(g, n, depth - k.value, bounds);
    State st{inner.num * pi_pow_poly(amb, k.value / n), inner.den};
    std::vector<std::string> log{"factor pi^" + std::to_string(k.value) + ", root scaled by pi^" +
                                 std::to_string(k.value / n)};
    log.insert(log.end(), inner.branch_log.begin(), inner.branch_log.end());
    GammaCert c = finish(f, n, depth, std::move(st), inner.status, inner.level + k.value, std::move(log));
    c.bound_hit = inner.bound_hit;
    return c;
  }
  return n == p ? gamma_unit_p(f, depth, bounds) : gamma_unit_tame(f, n, depth);
}

bool verify_gamma_cert(const GammaCert& c) {
  if (c.f.is_zero() || !is_local_unit(c.den)) return false;
  if (c.status == GammaStatus::AtLeast && c.level < c.depth) return false;
  if (c.level > c.depth) return false;
  const TowerPoly lhs = c.f * c.den.pow(c.n) - c.num.pow(c.n);
  return lhs == c.b * pi_pow_poly(c.f.ambient(), c.level);
}

}  // namespace ramlab
