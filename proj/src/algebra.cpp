#include "ramlab/algebra.hpp"

#include <functional>
#include <map>

#include "ramlab/error.hpp"
#include "ramlab/ramification.hpp"

namespace ramlab {

namespace {

std::string fresh_name(const AmbientPtr& amb, std::string name) {
  while (amb->index_of(name)) name += "_";
  return name;
}

using Table = std::vector<std::vector<std::vector<TowerPoly>>>;

Table empty_table(const AmbientPtr& amb, std::size_t n) {
  return Table(n, std::vector<std::vector<TowerPoly>>(n, std::vector<TowerPoly>(n, TowerPoly(amb))));
}

// Coordinates of P (in base + extra variables) along the monomials of the extra variables.
// index(extra exponents) gives the basis position; base exponents form the coefficient.
std::vector<TowerPoly> split_coordinates(const TowerPoly& P, const AmbientPtr& base, std::size_t rank,
                                         const std::function<std::size_t(const Exponents&)>& index) {
  std::vector<TowerPoly> out(rank, TowerPoly(base));
  const std::size_t nb = base->nvars();
  for (const auto& [e, c] : P.terms()) {
    Exponents be(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nb));
    Exponents xe(e.begin() + static_cast<std::ptrdiff_t>(nb), e.end());
    const std::size_t k = index(xe);
    if (k >= rank) throw Error(ErrorCode::ClosureFailure, "reduced product leaves the basis");
    out[k].add_term(be, c);
  }
  return out;
}

}  // namespace

std::vector<TowerPoly> KummerAlg::basis_vector(std::size_t i) const {
  std::vector<TowerPoly> v(rank, TowerPoly(ambient));
  v[i] = TowerPoly::integer(ambient, 1);
  return v;
}

std::vector<TowerPoly> KummerAlg::multiply(const std::vector<TowerPoly>& a, const std::vector<TowerPoly>& b) const {
  std::vector<TowerPoly> out(rank, TowerPoly(ambient));
  for (std::size_t i = 0; i < rank; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < rank; ++j) {
      if (b[j].is_zero()) continue;
      const TowerPoly ab = a[i] * b[j];
      for (std::size_t k = 0; k < rank; ++k)
        if (!table[i][j][k].is_zero()) out[k] += ab * table[i][j][k];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------------------

AlgebraReport verify_algebra(const KummerAlg& a) {
  AlgebraReport rep;
  const std::size_t n = a.rank;
  auto note = [&](const std::string& s) {
    if (rep.failures.size() < 20) rep.failures.push_back(s);
  };

  rep.closure = n >= 1 && a.table.size() == n;
  for (std::size_t i = 0; rep.closure && i < n; ++i) {
    if (a.table[i].size() != n) rep.closure = false;
    for (std::size_t j = 0; rep.closure && j < n; ++j) {
      if (a.table[i][j].size() != n) rep.closure = false;
      for (std::size_t k = 0; rep.closure && k < n; ++k)
        if (!same_ambient(a.table[i][j][k].ambient(), a.ambient)) rep.closure = false;
    }
  }
  if (!rep.closure) {
    note("table shape or ambient is inconsistent");
    return rep;
  }

  rep.identity = true;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const TowerPoly expect = TowerPoly::integer(a.ambient, j == k ? 1 : 0);
      if (!(a.table[0][j][k] == expect) || !(a.table[j][0][k] == expect)) {
        rep.identity = false;
        note("identity fails at (0," + std::to_string(j) + ") coordinate " + std::to_string(k));
      }
    }

  rep.commutative = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(a.table[i][j][k] == a.table[j][i][k])) {
          rep.commutative = false;
          note("commutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }

  rep.associative = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        const auto lhs = a.multiply(a.table[i][j], a.basis_vector(l));
        const auto rhs = a.multiply(a.basis_vector(i), a.table[j][l]);
        if (lhs != rhs) {
          rep.associative = false;
          note("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) +
               ")");
        }
      }

  if (!a.radicals.empty()) {
    bool ok = a.frac_num.size() == n && a.frac_den.size() == n && a.frac_ambient;
    if (ok) {
      const auto& F = a.frac_ambient;
      std::vector<std::size_t> rad_index;
      std::vector<TowerPoly> rad_f;
      for (const auto& rad : a.radicals) {
        auto v = F->index_of(rad.var);
        if (!v) {
          ok = false;
          break;
        }
        rad_index.push_back(*v);
        rad_f.push_back(embed(rad.f, F));
      }
      auto reduce = [&](TowerPoly P) {
        for (std::size_t r = 0; r < rad_index.size(); ++r)
          P = reduce_power(P, rad_index[r], a.radicals[r].n, rad_f[r]);
        return P;
      };
      std::uint64_t dmax = 0;
      for (auto d : a.frac_den) dmax = std::max(dmax, d);
      for (std::size_t i = 0; ok && i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          const std::uint64_t M = std::max(a.frac_den[i] + a.frac_den[j], dmax);
          TowerPoly diff = a.frac_num[i] * a.frac_num[j] * pi_pow_poly(F, M - a.frac_den[i] - a.frac_den[j]);
          for (std::size_t k = 0; k < n; ++k)
            if (!a.table[i][j][k].is_zero())
              diff -= embed(a.table[i][j][k], F) * a.frac_num[k] * pi_pow_poly(F, M - a.frac_den[k]);
          if (!reduce(diff).is_zero()) {
            ok = false;
            note("defining fractions violate the product (" + std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
    } else {
      note("defining fractions are malformed");
    }
    rep.fractions = ok;
  }
  return rep;
}

// ---------------------------------------------------------------------------------------

KummerAlg normalize_degree_p(const TowerPoly& f, const std::optional<GammaCert>& cert, const std::string& var) {
  const auto& amb = f.ambient();
  const auto& R = amb->ring;
  const unsigned p = R.p();
  const std::uint64_t e = R.degree();
  const std::uint64_t r = e / (p - 1);
  const std::uint64_t T = threshold(R);
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "normalize of zero");
  if (pth_root_poly(f)) throw Error(ErrorCode::NotTame, "PthPower: the extension is trivial");

  const TowerPoly one = TowerPoly::integer(amb, 1);
  GammaCert c;
  if (cert && cert->n == p && cert->level >= T && cert->den == one && cert->f == f) c = *cert;
  else c = gamma(f, p, T);
  if (c.level < T || !(c.den == one)) throw Error(ErrorCode::NotTame, "Gamma below threshold " + std::to_string(T));

  const TowerPoly& h = c.num;
  auto bq = divide_by_pi_pow(f - h.pow(p), p * r);
  if (!bq) throw Error(ErrorCode::ClosureFailure, "f - h^p is not divisible by pi^{p r}");
  const TowerPoly bprime = *bq;
  const CycElt w = cyclo::cyclo_ring(p, R.root_index()).unit_w;

  // C'(w, h) = sum_m kappa_m h^{p-1-m} (w - h)^m, and (w - h)^m = pi^{r m} z_m.
  const auto cp = cyclo::cprime_coefficients(p);
  std::vector<TowerPoly> ct;
  for (unsigned m = 0; m + 1 < p; ++m) {
    Int kappa = 0;
    for (unsigned i = m; i < p; ++i) {
      Int b;
      mpz_bin_uiui(b.get_mpz_t(), i, m);
      kappa += cp[i] * b;
    }
    ct.push_back(h.pow(p - 1 - m).scaled(kappa) * pi_pow_poly(amb, r * m));
  }

  KummerAlg A;
  A.ambient = amb;
  A.rank = p;
  A.table = empty_table(amb, p);
  auto unit_vec = [&](std::size_t i) {
    std::vector<TowerPoly> v(p, TowerPoly(amb));
    v[i] = one;
    return v;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::vector<TowerPoly>> memo;
  std::function<std::vector<TowerPoly>(std::size_t, std::size_t)> mul = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (i + j < p) return unit_vec(i + j);
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    // z_i z_j = z_k (b' - w C'(w) z_1) with k = i + j - p.
    const std::size_t k = i + j - p;
    std::vector<TowerPoly> res(p, TowerPoly(amb));
    res[k] = bprime;
    for (std::size_t m = 0; m < ct.size(); ++m) {
      if (ct[m].is_zero()) continue;
      const auto v = mul(k + 1, m);
      const TowerPoly s = ct[m].scaled(w);
      for (std::size_t t = 0; t < p; ++t)
        if (!v[t].is_zero()) res[t] -= s * v[t];
    }
    memo.emplace(std::make_pair(i, j), res);
    return res;
  };
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) A.table[i][j] = mul(i, j);

  const std::string name = fresh_name(amb, var);
  A.frac_ambient = with_variables(amb, {name});
  A.radicals.push_back(Radical{name, f, p});
  const TowerPoly W = TowerPoly::variable(A.frac_ambient, A.frac_ambient->nvars() - 1);
  const TowerPoly wh = W - embed(h, A.frac_ambient);
  for (std::size_t i = 0; i < p; ++i) {
    A.labels.push_back(i == 0 ? "1" : "z" + name + std::to_string(i));
    A.frac_num.push_back(wh.pow(i));
    A.frac_den.push_back(r * i);
  }
  A.provenance = "cover of " + f.str() + " with h = " + h.str();
  const AlgebraReport rep = verify_algebra(A);
  if (!rep.ok()) {
    std::string msg = "normalized cover fails verification";
    for (const auto& s : rep.failures) msg += "; " + s;
    throw Error(ErrorCode::ClosureFailure, msg);
  }
  return A;
}

// ---------------------------------------------------------------------------------------

HBPair hb_matrices(unsigned n, const TowerPoly& h0, const TowerPoly& f0, const std::string& var) {
  const auto& base = f0.ambient();
  const auto& R = base->ring;
  const unsigned p = R.p();
  if (!same_ambient(base, h0.ambient())) throw Error(ErrorCode::AmbientMismatch, "hb_matrices");
  if (n == 0) throw Error(ErrorCode::HypothesisFailure, "n must be positive");
  const std::uint64_t need = static_cast<std::uint64_t>(n) * (p - 1);
  if (need > R.degree()) throw Error(ErrorCode::HypothesisFailure, "n (p - 1) exceeds ord(p)");
  if (!ord_at(f0 - h0.pow(p)).at_least(need))
    throw Error(ErrorCode::HypothesisFailure, "f - h^p is not divisible by alpha^{n(p-1)}");

  HBPair hb;
  hb.p = p;
  hb.n = n;
  hb.ambient = with_variables(base, {fresh_name(base, var)});
  const auto& amb = hb.ambient;
  const std::size_t xv = amb->nvars() - 1;
  hb.h = embed(h0, amb);
  hb.f = embed(f0, amb);
  const TowerPoly X = TowerPoly::variable(amb, xv);
  const TowerPoly xmh = X - hb.h;
  const TowerPoly an = pi_pow_poly(amb, n);
  const TowerPoly F = X.pow(p) - hb.f;
  auto g = divide_by_pi_pow(F - xmh.pow(p), need);
  if (!g) throw Error(ErrorCode::HypothesisFailure, "gamma is not integral");
  hb.gamma_poly = *g;

  const TowerPoly zero(amb);
  hb.phi.assign(p, std::vector<TowerPoly>(p - 1, zero));
  for (unsigned j = 0; j + 1 < p; ++j) {
    hb.phi[j][j] = xmh;
    hb.phi[j + 1][j] = an;
  }
  hb.psi.assign(p, std::vector<TowerPoly>(p, zero));
  for (unsigned i = 0; i < p; ++i)
    for (unsigned j = 0; j + 1 < p; ++j) hb.psi[i][j] = hb.phi[i][j];
  hb.psi[0][p - 1] = -hb.gamma_poly;
  hb.psi[p - 1][p - 1] = hb.psi[p - 1][p - 1] - xmh;

  auto drop = [](const std::vector<std::vector<TowerPoly>>& m, std::size_t row, std::optional<std::size_t> col) {
    std::vector<std::vector<TowerPoly>> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row) continue;
      std::vector<TowerPoly> r;
      for (std::size_t j = 0; j < m[i].size(); ++j)
        if (!col || j != *col) r.push_back(m[i][j]);
      out.push_back(std::move(r));
    }
    return out;
  };

  hb.minors_ok = true;
  hb.cofactors_ok = true;
  for (unsigned i = 1; i <= p; ++i) {
    const TowerPoly minor = p == 1 ? TowerPoly::integer(amb, 1) : determinant(drop(hb.phi, i - 1, std::nullopt));
    hb.minors.push_back(minor);
    const TowerPoly expect = xmh.pow(i - 1) * an.pow(p - i);
    if (!(minor == expect || minor == -expect)) hb.minors_ok = false;

    const TowerPoly cof = determinant(drop(hb.psi, i - 1, i - 1));
    hb.cofactors.push_back(cof);
    const TowerPoly delta = (i % 2 == 1) ? minor : -minor;
    // delta_i^{-1} psi_ii = +- alpha^{-n(p-i)} (X - h)^{p-i} in D[X]/(X^p - f).
    const TowerPoly lhs = cof * an.pow(p - i);
    const TowerPoly rhs = delta * xmh.pow(p - i);
    const TowerPoly tail = hb.f;
    const bool plus = reduce_power(lhs - rhs, xv, p, tail).is_zero();
    const bool minus = reduce_power(lhs + rhs, xv, p, tail).is_zero();
    if (!plus && !minus) hb.cofactors_ok = false;
  }
  const TowerPoly det = determinant(hb.psi);
  hb.det_ok = det == F || det == -F;
  hb.residual = xmh * xmh.pow(p - 1) + pi_pow_poly(amb, need) * hb.gamma_poly - F;
  hb.factorization_ok = hb.residual.is_zero();
  return hb;
}

// ---------------------------------------------------------------------------------------

KummerAlg trivial_algebra(const AmbientPtr& amb) {
  KummerAlg A;
  A.ambient = amb;
  A.rank = 1;
  A.labels = {"1"};
  A.table = empty_table(amb, 1);
  A.table[0][0][0] = TowerPoly::integer(amb, 1);
  A.frac_ambient = amb;
  A.frac_num = {TowerPoly::integer(amb, 1)};
  A.frac_den = {0};
  A.provenance = "trivial";
  return A;
}

KummerAlg tensor_compose(const std::vector<KummerAlg>& algs) {
  if (algs.empty()) throw Error(ErrorCode::InvalidArgument, "tensor of an empty list");
  const auto& amb = algs.front().ambient;
  std::vector<std::string> names;
  for (const auto& a : algs) {
    if (!same_ambient(a.ambient, amb)) throw Error(ErrorCode::AmbientMismatch, "tensor factors differ in ambient");
    for (const auto& rad : a.radicals) {
      if (std::find(names.begin(), names.end(), rad.var) != names.end() || amb->index_of(rad.var))
        throw Error(ErrorCode::InvalidArgument, "radical name " + rad.var + " used twice");
      names.push_back(rad.var);
    }
  }
  KummerAlg T;
  T.ambient = amb;
  T.rank = 1;
  for (const auto& a : algs) T.rank *= a.rank;
  T.frac_ambient = with_variables(amb, names);
  for (const auto& a : algs) T.radicals.insert(T.radicals.end(), a.radicals.begin(), a.radicals.end());

  const std::size_t nf = algs.size();
  auto digits_of = [&](std::size_t I) {
    std::vector<std::size_t> d(nf);
    for (std::size_t t = 0; t < nf; ++t) {
      d[t] = I % algs[t].rank;
      I /= algs[t].rank;
    }
    return d;
  };

  for (std::size_t I = 0; I < T.rank; ++I) {
    const auto d = digits_of(I);
    std::string label;
    TowerPoly num = TowerPoly::integer(T.frac_ambient, 1);
    std::uint64_t den = 0;
    for (std::size_t t = 0; t < nf; ++t) {
      const auto& a = algs[t];
      if (a.labels.size() == a.rank && a.labels[d[t]] != "1") label += (label.empty() ? "" : "*") + a.labels[d[t]];
      if (!a.frac_num.empty()) num *= embed(a.frac_num[d[t]], T.frac_ambient);
      if (!a.frac_den.empty()) den += a.frac_den[d[t]];
    }
    T.labels.push_back(label.empty() ? "1" : label);
    T.frac_num.push_back(num);
    T.frac_den.push_back(den);
  }

  T.table = empty_table(amb, T.rank);
  for (std::size_t I = 0; I < T.rank; ++I) {
    const auto di = digits_of(I);
    for (std::size_t J = 0; J < T.rank; ++J) {
      const auto dj = digits_of(J);
      // Expand the product factor by factor: (index so far, stride, coefficient).
      std::vector<std::pair<std::size_t, TowerPoly>> acc{{0, TowerPoly::integer(amb, 1)}};
      std::size_t stride = 1;
      for (std::size_t t = 0; t < nf; ++t) {
        std::vector<std::pair<std::size_t, TowerPoly>> next;
        const auto& row = algs[t].table[di[t]][dj[t]];
        for (const auto& [K, c] : acc)
          for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero()) next.emplace_back(K + k * stride, c * row[k]);
        acc = std::move(next);
        stride *= algs[t].rank;
      }
      for (const auto& [K, c] : acc) T.table[I][J][K] += c;
    }
  }
  T.provenance = "tensor of " + std::to_string(nf) + " factors";
  return T;
}

KummerAlg roberts_build(const std::vector<TowerPoly>& divisors, const std::vector<TowerPoly>& units, unsigned t) {
  std::vector<TowerPoly> gens = divisors;
  gens.insert(gens.end(), units.begin(), units.end());
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "no radicands");
  const auto& amb = gens.front().ambient();
  for (const auto& g : gens)
    if (!same_ambient(g.ambient(), amb)) throw Error(ErrorCode::AmbientMismatch, "roberts_build");
  if (t < 2) throw Error(ErrorCode::InvalidArgument, "t must be at least 2");
  if (t % amb->ring.p() == 0)
    throw Error(ErrorCode::ModularExponent, "t is divisible by p; use the tame p-pipeline instead");
  for (const auto& u : units)
    if (!ord_at(u).at_least(0) || !is_local_unit(u)) throw Error(ErrorCode::BadInput, "declared unit is not a local unit");

  const std::size_t h = gens.size();
  std::size_t rank = 1;
  for (std::size_t i = 0; i < h; ++i) {
    if (rank > 4096 / t) throw Error(ErrorCode::InstanceTooLarge, "rank too large");
    rank *= t;
  }
  KummerAlg A;
  A.ambient = amb;
  A.rank = rank;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < h; ++i) names.push_back(fresh_name(amb, "y" + std::to_string(i + 1)));
  A.frac_ambient = with_variables(amb, names);
  for (std::size_t i = 0; i < h; ++i) A.radicals.push_back(Radical{names[i], gens[i], t});

  auto digits_of = [&](std::size_t I) {
    std::vector<unsigned> d(h);
    for (std::size_t i = 0; i < h; ++i) {
      d[i] = static_cast<unsigned>(I % t);
      I /= t;
    }
    return d;
  };
  for (std::size_t I = 0; I < rank; ++I) {
    const auto d = digits_of(I);
    std::string label;
    Exponents e(A.frac_ambient->nvars(), 0);
    for (std::size_t i = 0; i < h; ++i) {
      e[amb->nvars() + i] = d[i];
      if (d[i] == 0) continue;
      label += (label.empty() ? "" : "*") + names[i] + (d[i] > 1 ? "^" + std::to_string(d[i]) : "");
    }
    A.labels.push_back(label.empty() ? "1" : label);
    A.frac_num.push_back(TowerPoly::monomial(A.frac_ambient, e, amb->ring.one()));
    A.frac_den.push_back(0);
  }
  A.table = empty_table(amb, rank);
  for (std::size_t I = 0; I < rank; ++I) {
    const auto a = digits_of(I);
    for (std::size_t J = 0; J < rank; ++J) {
      const auto b = digits_of(J);
      std::size_t K = 0, stride = 1;
      TowerPoly c = TowerPoly::integer(amb, 1);
      for (std::size_t i = 0; i < h; ++i) {
        const unsigned s = a[i] + b[i];
        K += (s % t) * stride;
        stride *= t;
        if (s >= t) c *= gens[i];
      }
      A.table[I][J][K] = c;
    }
  }
  A.provenance = "monomial algebra of " + std::to_string(t) + "-th roots";
  return A;
}

// ---------------------------------------------------------------------------------------

Int p_ramified_rank_bound(unsigned p, unsigned d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Int b;
  mpz_ui_pow_ui(b.get_mpz_t(), p, static_cast<unsigned long>(p) * (d - 1) + 1);
  return b * (p - 1);
}

std::optional<PRamifiedNormalForm> p_ramified_normalize(const TowerPoly& g) {
  const auto& R = g.ring();
  const unsigned p = R.p();
  if (R.root_index() != p) throw Error(ErrorCode::BadParameters, "expected the ring with alpha^p = eps - 1");
  const std::uint64_t base = static_cast<std::uint64_t>(p) * (p - 1);
  const GammaCert c = gamma(g, p, threshold(R));
  if (c.status != GammaStatus::Exact || c.level <= base || c.level >= base + p) return std::nullopt;
  if (!(c.den == TowerPoly::integer(g.ambient(), 1))) return std::nullopt;
  return PRamifiedNormalForm{c.num, static_cast<unsigned>(c.level - base), c.b};
}

PRamifiedResult p_ramified_build(const TowerPoly& r0, unsigned t, const TowerPoly& y0, unsigned l) {
  const auto& amb0 = r0.ambient();
  const auto& R0 = amb0->ring;
  const unsigned p = R0.p();
  if (!same_ambient(amb0, y0.ambient())) throw Error(ErrorCode::AmbientMismatch, "p_ramified_build");
  if (R0.root_index() != p) throw Error(ErrorCode::BadParameters, "ambient ring must have alpha^p = eps - 1");
  if (t < 1 || t >= p) throw Error(ErrorCode::BadParameters, "t must lie in [1, p-1]");
  if (l < 1 || l >= p) throw Error(ErrorCode::BadParameters, "l must lie in [1, p-1]");
  if ((static_cast<std::uint64_t>(l) * t) % p != 1) throw Error(ErrorCode::BadParameters, "l t is not 1 mod p");
  if (!is_local_unit(y0)) throw Error(ErrorCode::BadParameters, "y is not a local unit");

  PRamifiedResult out;
  out.p = p;
  out.t = t;
  out.l = l;
  const std::uint64_t lp = static_cast<std::uint64_t>(l) * p;
  const std::uint64_t top = lp * (p - 1) + static_cast<std::uint64_t>(t) * l;  // = p q + 1
  out.q = (top - 1) / p;
  out.lp_exceeds_q = lp > out.q;
  if (!out.lp_exceeds_q) throw Error(ErrorCode::BadParameters, "l p does not exceed q");

  out.ambient = with_root_index(amb0, l);
  const auto& amb = out.ambient;
  const auto& R = amb->ring;
  const TowerPoly r = change_root_index(r0, amb);
  const TowerPoly y = change_root_index(y0, amb);
  out.g = r.pow(p) + pi_pow_poly(amb, top) * y;

  const auto desc = cyclo::cyclo_ring(p, R.root_index());
  const auto cp = cyclo::cprime_coefficients(p);
  const std::string mu_name = fresh_name(amb, "mu");
  const std::string zeta_name = fresh_name(with_variables(amb, {mu_name}), "zeta");

  // kappa = (c'_eps)^{-1} C'(mu, r), as a function of the polynomial standing for mu.
  auto kappa_of = [&](const TowerPoly& mu, const TowerPoly& rr) {
    TowerPoly k(mu.ambient());
    for (unsigned i = 0; i < p; ++i)
      if (cp[i] != 0) k += mu.pow(i) * rr.pow(p - 1 - i).scaled(cp[i]);
    return k.scaled(desc.cprime_eps_inv);
  };

  // Residual in A = D_l[mu]/(mu^p - g).
  {
    const auto A = with_variables(amb, {mu_name});
    const std::size_t mv = A->nvars() - 1;
    const TowerPoly mu = TowerPoly::variable(A, mv);
    const TowerPoly rA = embed(r, A), yA = embed(y, A), gA = embed(out.g, A);
    const TowerPoly d = mu - rA;
    const TowerPoly res = d.pow(p) - kappa_of(mu, rA) * d * pi_pow_poly(A, lp * (p - 1)) -
                          pi_pow_poly(A, p * out.q + 1) * yA;
    out.residual = reduce_power(res, mv, p, gA);
    out.residual_zero = out.residual.is_zero();
  }

  const std::uint64_t zeta_shift = (p - 1) * (lp - out.q);

  // Rank p^2 algebra A[X]/(X^p - kappa pi^{(p-1)(lp-q)} X - pi y), basis mu^i zeta^j at index i + p j.
  {
    const auto B = with_variables(amb, {mu_name, zeta_name});
    const std::size_t mv = B->nvars() - 2, zv = B->nvars() - 1;
    const TowerPoly mu = TowerPoly::variable(B, mv), zeta = TowerPoly::variable(B, zv);
    const TowerPoly rB = embed(r, B), yB = embed(y, B), gB = embed(out.g, B);
    const TowerPoly ztail = kappa_of(mu, rB) * pi_pow_poly(B, zeta_shift) * zeta + uniformizer_poly(B) * yB;
    auto reduce = [&](const TowerPoly& P) { return reduce_power(reduce_power(P, zv, p, ztail), mv, p, gB); };
    auto index = [&](const Exponents& xe) {
      return static_cast<std::size_t>(xe[0] / B->tower[mv] + p * (xe[1] / B->tower[zv]));
    };
    KummerAlg& K = out.algebra;
    K.ambient = amb;
    K.rank = static_cast<std::size_t>(p) * p;
    K.table = empty_table(amb, K.rank);
    std::vector<TowerPoly> mono(K.rank, TowerPoly(B));
    for (unsigned j = 0; j < p; ++j)
      for (unsigned i = 0; i < p; ++i) mono[i + p * j] = mu.pow(i) * zeta.pow(j);
    for (std::size_t I = 0; I < K.rank; ++I)
      for (std::size_t J = I; J < K.rank; ++J) {
        auto v = split_coordinates(reduce(mono[I] * mono[J]), amb, K.rank, index);
        K.table[I][J] = v;
        K.table[J][I] = v;
      }
    K.frac_ambient = with_variables(amb, {mu_name});
    K.radicals.push_back(Radical{mu_name, out.g, p});
    const TowerPoly muF = TowerPoly::variable(K.frac_ambient, K.frac_ambient->nvars() - 1);
    const TowerPoly dF = muF - embed(r, K.frac_ambient);
    for (unsigned j = 0; j < p; ++j)
      for (unsigned i = 0; i < p; ++i) {
        std::string label;
        if (i) label += mu_name + (i > 1 ? "^" + std::to_string(i) : "");
        if (j) label += (label.empty() ? "" : "*") + zeta_name + (j > 1 ? "^" + std::to_string(j) : "");
        K.labels.push_back(label.empty() ? "1" : label);
        K.frac_num.push_back(muF.pow(i) * dF.pow(j));
        K.frac_den.push_back(out.q * j);
      }
    K.provenance = "first p-ramified case, rank p^2 presentation";
  }

  // The order D_l[zeta], zeta = (mu - r)/pi^q, with minimal polynomial G = ((r + pi^q X)^p - g)/pi^{pq}.
  {
    const auto C = with_variables(amb, {zeta_name});
    const std::size_t zv = C->nvars() - 1;
    const TowerPoly X = TowerPoly::variable(C, zv);
    const TowerPoly rC = embed(r, C), yC = embed(y, C), gC = embed(out.g, C);
    const TowerPoly muX = rC + pi_pow_poly(C, out.q) * X;
    auto G = divide_by_pi_pow(muX.pow(p) - gC, p * out.q);
    if (!G) throw Error(ErrorCode::ClosureFailure, "minimal polynomial of zeta is not integral");
    const TowerPoly xtail = X.pow(p) - *G;
    const TowerPoly Fz = X.pow(p) - kappa_of(muX, rC) * pi_pow_poly(C, zeta_shift) * X - uniformizer_poly(C) * yC;
    out.zeta_order_residual_zero = reduce_power(Fz, zv, p, xtail).is_zero();

    KummerAlg& Z = out.zeta_order;
    Z.ambient = amb;
    Z.rank = p;
    Z.table = empty_table(amb, p);
    auto index = [&](const Exponents& xe) { return static_cast<std::size_t>(xe[0] / C->tower[zv]); };
    for (unsigned i = 0; i < p; ++i)
      for (unsigned j = 0; j < p; ++j)
        Z.table[i][j] = split_coordinates(reduce_power(X.pow(i + j), zv, p, xtail), amb, p, index);
    Z.frac_ambient = with_variables(amb, {mu_name});
    Z.radicals.push_back(Radical{mu_name, out.g, p});
    const TowerPoly muF = TowerPoly::variable(Z.frac_ambient, Z.frac_ambient->nvars() - 1);
    const TowerPoly dF = muF - embed(r, Z.frac_ambient);
    for (unsigned j = 0; j < p; ++j) {
      Z.labels.push_back(j == 0 ? "1" : zeta_name + (j > 1 ? "^" + std::to_string(j) : ""));
      Z.frac_num.push_back(dF.pow(j));
      Z.frac_den.push_back(out.q * j);
    }
    Z.provenance = "first p-ramified case, order generated by zeta";
  }
  out.algebra_report = verify_algebra(out.algebra);
  out.zeta_order_report = verify_algebra(out.zeta_order);
  return out;
}

// ---------------------------------------------------------------------------------------

TowerPoly discriminant(const KummerAlg& a) {
  const std::size_t n = a.rank;
  std::vector<TowerPoly> tr(n, TowerPoly(a.ambient));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) tr[k] += a.table[k][l][l];
  std::vector<std::vector<TowerPoly>> m(n, std::vector<TowerPoly>(n, TowerPoly(a.ambient)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!a.table[i][j][k].is_zero()) m[i][j] += a.table[i][j][k] * tr[k];
  return determinant(m);
}

}  // namespace ramlab
