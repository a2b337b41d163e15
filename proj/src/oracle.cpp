// Brute-force Gamma oracle. Deliberately shares no arithmetic with the lifting engine: it
// works densely in (Z/p^K)[pi]/(E(pi)) with K large enough that pi^depth is visible.

#include <algorithm>
#include <cstdint>
#include <functional>

#include "ramlab/error.hpp"
#include "ramlab/valuation.hpp"

namespace ramlab {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

struct Local {
  unsigned p = 0;
  unsigned e = 0;
  i64 mod = 1;             // p^K
  std::vector<i64> emod;   // E(pi) coefficients below the leading 1, reduced mod p^K

  i64 norm(i128 v) const {
    i128 r = v % mod;
    if (r < 0) r += mod;
    return static_cast<i64>(r);
  }

  std::vector<i64> mul(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i128> c(2 * e, 0);
    for (unsigned i = 0; i < e; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < e; ++j) c[i + j] = (c[i + j] + static_cast<i128>(a[i]) * b[j]) % mod;
    }
    for (unsigned k = 2 * e - 1; k >= e; --k) {
      const i128 top = c[k];
      if (!top) continue;
      c[k] = 0;
      for (unsigned i = 0; i < e; ++i) c[k - e + i] = (c[k - e + i] - top * emod[i]) % mod;
    }
    std::vector<i64> out(e);
    for (unsigned i = 0; i < e; ++i) out[i] = norm(c[i]);
    return out;
  }

  // min(v_pi(a), cap).
  unsigned val(std::vector<i64> a, unsigned cap) const {
    for (unsigned t = 0; t < cap; ++t) {
      if (a[0] % p != 0) return t;
      // a = a0 + pi * rest, a0 = p * q and p = -sum_{i>=1} E_i pi^i.
      const i64 q = a[0] / p;
      std::vector<i64> next(e, 0);
      for (unsigned i = 1; i < e; ++i) next[i - 1] = a[i];
      for (unsigned i = 1; i <= e; ++i) {
        const i64 ei = i == e ? 1 : emod[i];
        next[i - 1] = norm(static_cast<i128>(next[i - 1]) - static_cast<i128>(q) * ei);
      }
      a = std::move(next);
    }
    return cap;
  }
};

// Dense bivariate polynomial over Local (unused variables have extent 1).
struct Dense {
  std::size_t nx = 1, ny = 1;
  std::vector<std::vector<i64>> c;
};

Dense dense_zero(const Local& L, std::size_t nx, std::size_t ny) {
  return Dense{nx, ny, std::vector<std::vector<i64>>(nx * ny, std::vector<i64>(L.e, 0))};
}

Dense dense_mul(const Local& L, const Dense& a, const Dense& b) {
  Dense r = dense_zero(L, a.nx + b.nx - 1, a.ny + b.ny - 1);
  for (std::size_t i = 0; i < a.nx; ++i)
    for (std::size_t j = 0; j < a.ny; ++j) {
      const auto& x = a.c[i * a.ny + j];
      if (std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; })) continue;
      for (std::size_t k = 0; k < b.nx; ++k)
        for (std::size_t l = 0; l < b.ny; ++l) {
          const auto& y = b.c[k * b.ny + l];
          if (std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; })) continue;
          auto z = L.mul(x, y);
          auto& dst = r.c[(i + k) * r.ny + (j + l)];
          for (unsigned t = 0; t < L.e; ++t) dst[t] = L.norm(static_cast<i128>(dst[t]) + z[t]);
        }
    }
  return r;
}

Dense dense_pow(const Local& L, const Dense& a, unsigned n) {
  Dense r = dense_zero(L, 1, 1);
  r.c[0][0] = 1;
  for (unsigned i = 0; i < n; ++i) r = dense_mul(L, r, a);
  return r;
}

}  // namespace

OracleResult gamma_oracle(const TowerPoly& f, unsigned n, std::uint64_t depth, std::int64_t support_degree) {
  const auto& amb = f.ambient();
  const unsigned p = amb->ring.p();
  const unsigned e = amb->ring.degree();
  const std::size_t nv = amb->nvars();
  if (nv > 2) throw Error(ErrorCode::InstanceTooLarge, "oracle supports at most two variables");
  if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "oracle on zero");
  if (support_degree < 0) throw Error(ErrorCode::InvalidArgument, "negative support degree");
  if (n == 0 || (n % p == 0 && n != p)) throw Error(ErrorCode::InvalidArgument, "root index must be p or prime to p");

  Local L;
  L.p = p;
  L.e = e;
  const std::uint64_t K = (depth + e - 1) / e + 1;
  for (std::uint64_t i = 0; i < K; ++i) {
    if (L.mod > (i64(1) << 40) / p) throw Error(ErrorCode::InstanceTooLarge, "modulus too large");
    L.mod *= p;
  }
  // E(pi) = Phi_p(pi^s + 1): the coefficient of pi^{s i} is binom(p, i + 1).
  const unsigned s = amb->ring.root_index();
  L.emod.assign(e, 0);
  for (unsigned i = 0; i < p - 1; ++i) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), p, i + 1);
    if (s * i < e) L.emod[s * i] = L.norm(static_cast<i128>(Int(b % Int(L.mod)).get_si()));
  }

  // Monomial support of digits.
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::int64_t a = 0; a <= support_degree; ++a)
    for (std::int64_t b = 0; b <= (nv >= 2 ? support_degree - a : 0); ++b) {
      if (nv == 0 && a > 0) break;
      support.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  if (nv == 0) support.assign(1, {0, 0});
  double per_digit = 1;
  for (std::size_t i = 0; i < support.size(); ++i) per_digit *= p;
  if (per_digit > 1e5) throw Error(ErrorCode::InstanceTooLarge, "too many digit candidates");

  std::size_t fx = 1, fy = 1;
  for (const auto& [ex, c] : f.terms()) {
    if (nv >= 1) fx = std::max(fx, static_cast<std::size_t>(ex[0]) + 1);
    if (nv >= 2) fy = std::max(fy, static_cast<std::size_t>(ex[1]) + 1);
  }
  const std::size_t hx = nv >= 1 ? static_cast<std::size_t>(support_degree) + 1 : 1;
  const std::size_t hy = nv >= 2 ? static_cast<std::size_t>(support_degree) + 1 : 1;
  const std::size_t gx = std::max(fx, n * (hx - 1) + 1), gy = std::max(fy, n * (hy - 1) + 1);
  Dense fd = dense_zero(L, gx, gy);
  for (const auto& [ex, c] : f.terms()) {
    const std::size_t i = nv >= 1 ? static_cast<std::size_t>(ex[0]) : 0;
    const std::size_t j = nv >= 2 ? static_cast<std::size_t>(ex[1]) : 0;
    for (unsigned t = 0; t < e; ++t) fd.c[i * gy + j][t] = L.norm(static_cast<i128>(Int(c.coeffs[t] % Int(L.mod)).get_si()));
  }

  // Digits needed so that h mod pi^J fixes h^n mod pi^depth; prefixes of k digits fix it mod pi^{L(k)}.
  auto lk = [&](std::uint64_t k) -> std::uint64_t { return n == p ? std::min<std::uint64_t>(p * k, e + k) : k; };
  std::uint64_t J = 0;
  while (lk(J) < depth) ++J;

  auto level_of = [&](const Dense& h) -> unsigned {
    Dense hn = dense_pow(L, h, n);
    unsigned best = static_cast<unsigned>(depth);
    for (std::size_t i = 0; i < gx; ++i)
      for (std::size_t j = 0; j < gy; ++j) {
        std::vector<i64> d = fd.c[i * gy + j];
        if (i < hn.nx && j < hn.ny)
          for (unsigned t = 0; t < e; ++t) d[t] = L.norm(static_cast<i128>(d[t]) - hn.c[i * hn.ny + j][t]);
        best = std::min(best, L.val(d, best));
        if (best == 0) return 0;
      }
    return best;
  };

  // pi^k as a dense constant.
  std::vector<std::vector<i64>> pipow(J + 1, std::vector<i64>(e, 0));
  pipow[0][0] = 1;
  std::vector<i64> pi(e, 0);
  if (e > 1) pi[1] = 1;
  else pi[0] = L.norm(-static_cast<i128>(L.emod[0]));
  for (std::uint64_t k = 1; k <= J; ++k) pipow[k] = L.mul(pipow[k - 1], pi);

  OracleResult res;
  bool have_best = false;
  std::vector<std::vector<long>> digits;
  std::function<bool(const Dense&, std::uint64_t)> dfs = [&](const Dense& h, std::uint64_t k) -> bool {
    ++res.candidates;
    const unsigned t = level_of(h);
    if (t >= depth) {
      res.level = depth;
      res.reached_depth = true;
      res.witness_digits = digits;
      return true;
    }
    if (k == J || t < lk(k)) {
      if (!have_best || t > res.level) {
        have_best = true;
        res.level = t;
        res.witness_digits = digits;
      }
      return false;
    }
    std::vector<long> choice(support.size(), 0);
    for (;;) {
      Dense next = h;
      for (std::size_t m = 0; m < support.size(); ++m) {
        if (!choice[m]) continue;
        auto& dst = next.c[support[m].first * next.ny + support[m].second];
        for (unsigned q = 0; q < e; ++q)
          dst[q] = L.norm(static_cast<i128>(dst[q]) + static_cast<i128>(choice[m]) * pipow[k][q]);
      }
      digits.push_back(choice);
      const bool done = dfs(next, k + 1);
      digits.pop_back();
      if (done) return true;
      std::size_t m = 0;
      while (m < choice.size() && ++choice[m] == static_cast<long>(p)) choice[m++] = 0;
      if (m == choice.size()) break;
    }
    return false;
  };
  dfs(dense_zero(L, hx, hy), 0);
  return res;
}

}  // namespace ramlab
