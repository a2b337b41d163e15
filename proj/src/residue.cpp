#include "ramlab/residue.hpp"

#include "ramlab/error.hpp"

namespace ramlab {

namespace {

unsigned norm(long c, unsigned p) {
  long r = c % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<unsigned>(r);
}

unsigned pow_mod(unsigned a, std::uint64_t k, unsigned p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return static_cast<unsigned>(r);
}

// All monomials of total raw degree <= d in n variables.
void enumerate_monomials(std::size_t n, std::int64_t d, Exponents& cur, std::size_t i,
                         std::vector<Exponents>& out) {
  if (i + 1 == n) {
    for (std::int64_t k = 0; k <= d; ++k) {
      cur[i] = k;
      out.push_back(cur);
    }
    cur[i] = 0;
    return;
  }
  for (std::int64_t k = 0; k <= d; ++k) {
    cur[i] = k;
    enumerate_monomials(n, d - k, cur, i + 1, out);
  }
  cur[i] = 0;
}

}  // namespace

unsigned mod_inverse(unsigned a, unsigned p) {
  if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod p");
  return pow_mod(a, p - 2, p);
}

ResiduePoly ResiduePoly::constant(unsigned p, std::size_t nvars, long c) {
  ResiduePoly r(p, nvars);
  r.add_term(Exponents(nvars, 0), c);
  return r;
}

ResiduePoly ResiduePoly::monomial(unsigned p, const Exponents& e, long c) {
  ResiduePoly r(p, e.size());
  r.add_term(e, c);
  return r;
}

std::int64_t ResiduePoly::degree() const {
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

const std::pair<const Exponents, unsigned>& ResiduePoly::leading() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "leading term of zero");
  return *terms_.rbegin();
}

unsigned ResiduePoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void ResiduePoly::add_term(const Exponents& e, long c) {
  const unsigned v = norm(c, p_);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (inserted) return;
  it->second = (it->second + v) % p_;
  if (it->second == 0) terms_.erase(it);
}

ResiduePoly ResiduePoly::operator+(const ResiduePoly& o) const {
  ResiduePoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

ResiduePoly ResiduePoly::operator-(const ResiduePoly& o) const {
  ResiduePoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -static_cast<long>(c));
  return r;
}

ResiduePoly ResiduePoly::operator*(const ResiduePoly& o) const {
  ResiduePoly r(p_, nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, static_cast<long>(ca) * cb % p_);
    }
  return r;
}

ResiduePoly ResiduePoly::scaled(long c) const {
  ResiduePoly r(p_, nvars_);
  const unsigned k = norm(c, p_);
  for (const auto& [e, a] : terms_) r.add_term(e, static_cast<long>(a) * k);
  return r;
}

ResiduePoly ResiduePoly::pow(std::uint64_t k) const {
  ResiduePoly r = constant(p_, nvars_, 1);
  ResiduePoly b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

ResiduePoly residue_of(const TowerPoly& f) {
  const unsigned p = f.ring().p();
  ResiduePoly r(p, f.ambient()->nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, f.ring().residue(c));
  return r;
}

TowerPoly lift(const ResiduePoly& g, const AmbientPtr& amb) {
  TowerPoly r(amb);
  for (const auto& [e, c] : g.terms()) r.add_term(e, amb->ring.from_int(c));
  return r;
}

std::optional<ResiduePoly> frobenius_root(const ResiduePoly& g) {
  const unsigned p = g.p();
  ResiduePoly r(p, g.nvars());
  for (const auto& [e, c] : g.terms()) {
    Exponents q(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % p != 0) return std::nullopt;
      q[i] = e[i] / p;
    }
    r.add_term(q, c);
  }
  return r;
}

std::optional<ResiduePoly> nth_root(const ResiduePoly& g, unsigned n) {
  const unsigned p = g.p();
  if (n == 0 || n % p == 0) throw Error(ErrorCode::InvalidArgument, "nth_root needs n prime to p");
  if (g.is_zero()) return g;
  const auto& [le, lc] = g.leading();
  Exponents lead(le.size());
  for (std::size_t i = 0; i < le.size(); ++i) {
    if (le[i] % n != 0) return std::nullopt;
    lead[i] = le[i] / n;
  }
  std::optional<unsigned> a;
  for (unsigned t = 1; t < p && !a; ++t)
    if (pow_mod(t, n, p) == lc) a = t;
  if (!a) return std::nullopt;
  ResiduePoly r = ResiduePoly::monomial(p, lead, *a);
  // Each further term t of the root contributes n * lt(r)^{n-1} * t to the leading remainder.
  const unsigned scale = mod_inverse(static_cast<unsigned>(static_cast<std::uint64_t>(n % p) * pow_mod(*a, n - 1, p) % p), p);
  Exponents shift(le.size());
  for (std::size_t i = 0; i < le.size(); ++i) shift[i] = lead[i] * (n - 1);
  for (;;) {
    ResiduePoly rem = g - r.pow(n);
    if (rem.is_zero()) return r;
    const auto& [re, rc] = rem.leading();
    Exponents t(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      t[i] = re[i] - shift[i];
      if (t[i] < 0) return std::nullopt;
    }
    if (!GrlexLess{}(t, lead)) return std::nullopt;
    r.add_term(t, static_cast<long>(rc) * scale);
  }
}

std::optional<std::vector<unsigned>> solve_linear_mod_p(std::vector<std::vector<unsigned>> a,
                                                        std::vector<unsigned> b, unsigned p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const std::uint64_t inv = mod_inverse(a[r][c], p);
    for (std::size_t k = c; k < cols; ++k) a[r][k] = static_cast<unsigned>(a[r][k] * inv % p);
    b[r] = static_cast<unsigned>(b[r] * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t k = c; k < cols; ++k)
        a[i][k] = static_cast<unsigned>((a[i][k] + (p - f) * a[r][k]) % p);
      b[i] = static_cast<unsigned>((b[i] + (p - f) * b[r]) % p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<unsigned> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

std::optional<ResiduePoly> solve_artin_schreier(const ResiduePoly& c, const ResiduePoly& b,
                                                std::int64_t degree_bound) {
  const unsigned p = b.p();
  const std::size_t n = b.nvars();
  if (degree_bound < 0) return b.is_zero() ? std::optional<ResiduePoly>(ResiduePoly(p, n)) : std::nullopt;
  std::vector<Exponents> unknowns;
  if (n == 0) {
    unknowns.push_back(Exponents{});
  } else {
    Exponents cur(n, 0);
    enumerate_monomials(n, degree_bound, cur, 0, unknowns);
  }
  // The map D -> D^p + c D is F_p-linear; image of each unknown monomial gives one column.
  std::map<Exponents, std::size_t, GrlexLess> row_of;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> columns(unknowns.size());
  auto row = [&](const Exponents& e) {
    auto [it, inserted] = row_of.try_emplace(e, row_of.size());
    return it->second;
  };
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    ResiduePoly m = ResiduePoly::monomial(p, unknowns[j], 1);
    ResiduePoly img = m.pow(p) + c * m;
    for (const auto& [e, v] : img.terms()) columns[j].emplace_back(row(e), v);
  }
  for (const auto& [e, v] : b.terms()) row(e);
  std::vector<std::vector<unsigned>> a(row_of.size(), std::vector<unsigned>(unknowns.size(), 0));
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    for (const auto& [i, v] : columns[j]) a[i][j] = v;
  std::vector<unsigned> rhs(row_of.size(), 0);
  for (const auto& [e, v] : b.terms()) rhs[row_of.at(e)] = v;
  auto x = solve_linear_mod_p(std::move(a), std::move(rhs), p);
  if (!x) return std::nullopt;
  ResiduePoly d(p, n);
  for (std::size_t j = 0; j < unknowns.size(); ++j) d.add_term(unknowns[j], (*x)[j]);
  return d;
}

}  // namespace ramlab
