#include "ramlab/polyring.hpp"

#include <algorithm>
#include <numeric>

#include "ramlab/error.hpp"

namespace ramlab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "exponent overflow");
  return r;
}

}  // namespace

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::int64_t total_degree(const Exponents& e) {
  std::int64_t s = 0;
  for (auto x : e) s = checked_add(s, x);
  return s;
}

Ambient::Ambient(cyclo::Ring r, std::vector<std::string> v, std::vector<std::int64_t> t)
    : ring(std::move(r)), vars(std::move(v)), tower(std::move(t)) {
  if (tower.empty()) tower.assign(vars.size(), 1);
  if (tower.size() != vars.size()) throw Error(ErrorCode::InvalidArgument, "tower size differs from variable count");
  for (auto n : tower)
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "tower moduli must be positive");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error(ErrorCode::InvalidArgument, "duplicate variable " + vars[i]);
}

std::optional<std::size_t> Ambient::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  return std::nullopt;
}

bool Ambient::operator==(const Ambient& o) const {
  return ring == o.ring && vars == o.vars && tower == o.tower;
}

AmbientPtr make_ambient(unsigned p, std::vector<std::string> vars, std::vector<std::int64_t> tower,
                        unsigned root_index) {
  return std::make_shared<const Ambient>(cyclo::Ring(p, root_index), std::move(vars), std::move(tower));
}

AmbientPtr make_ambient(const cyclo::Ring& ring, std::vector<std::string> vars, std::vector<std::int64_t> tower) {
  return std::make_shared<const Ambient>(ring, std::move(vars), std::move(tower));
}

bool same_ambient(const AmbientPtr& a, const AmbientPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------------------
// TowerPoly

TowerPoly::TowerPoly(AmbientPtr amb) : amb_(std::move(amb)) {
  if (!amb_) throw Error(ErrorCode::InvalidArgument, "null ambient");
}

TowerPoly TowerPoly::constant(AmbientPtr amb, const CycElt& c) {
  TowerPoly r(std::move(amb));
  r.add_term(Exponents(r.amb_->nvars(), 0), c);
  return r;
}

TowerPoly TowerPoly::integer(AmbientPtr amb, const Int& n) {
  const auto c = amb->ring.from_int(n);
  return constant(std::move(amb), c);
}

TowerPoly TowerPoly::variable(AmbientPtr amb, std::size_t v) {
  if (v >= amb->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Exponents e(amb->nvars(), 0);
  e[v] = amb->tower[v];
  const auto one = amb->ring.one();
  return monomial(std::move(amb), e, one);
}

TowerPoly TowerPoly::monomial(AmbientPtr amb, const Exponents& e, const CycElt& c) {
  TowerPoly r(std::move(amb));
  if (e.size() != r.amb_->nvars()) throw Error(ErrorCode::InvalidArgument, "exponent vector size");
  for (auto x : e)
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  r.add_term(e, c);
  return r;
}

bool TowerPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return total_degree(terms_.begin()->first) == 0;
}

CycElt TowerPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ring().zero() : it->second;
}

const std::pair<const Exponents, CycElt>& TowerPoly::leading() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "leading term of zero");
  return *terms_.rbegin();
}

std::int64_t TowerPoly::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

void TowerPoly::add_term(const Exponents& e, const CycElt& c) {
  const auto& R = ring();
  if (R.is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second = R.add(it->second, c);
  if (R.is_zero(it->second)) terms_.erase(it);
}

void TowerPoly::check_compatible(const TowerPoly& o) const {
  if (!same_ambient(amb_, o.amb_)) throw Error(ErrorCode::AmbientMismatch, "operands live in different ambients");
}

TowerPoly& TowerPoly::operator+=(const TowerPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TowerPoly& TowerPoly::operator-=(const TowerPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, ring().neg(c));
  return *this;
}

TowerPoly TowerPoly::operator+(const TowerPoly& o) const {
  TowerPoly r = *this;
  r += o;
  return r;
}

TowerPoly TowerPoly::operator-(const TowerPoly& o) const {
  TowerPoly r = *this;
  r -= o;
  return r;
}

TowerPoly TowerPoly::operator-() const {
  TowerPoly r(amb_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, ring().neg(c));
  return r;
}

TowerPoly TowerPoly::operator*(const TowerPoly& o) const {
  check_compatible(o);
  const auto& R = ring();
  TowerPoly r(amb_);
  const std::size_t n = amb_->nvars();
  Exponents e(n);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = checked_add(ea[i], eb[i]);
      r.add_term(e, R.mul(ca, cb));
    }
  }
  return r;
}

TowerPoly& TowerPoly::operator*=(const TowerPoly& o) {
  *this = *this * o;
  return *this;
}

TowerPoly TowerPoly::scaled(const CycElt& c) const {
  TowerPoly r(amb_);
  for (const auto& [e, a] : terms_) r.add_term(e, ring().mul(a, c));
  return r;
}

TowerPoly TowerPoly::scaled(const Int& n) const {
  TowerPoly r(amb_);
  for (const auto& [e, a] : terms_) r.add_term(e, ring().scale(a, n));
  return r;
}

TowerPoly TowerPoly::pow(std::uint64_t k) const {
  TowerPoly result = integer(amb_, 1);
  TowerPoly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TowerPoly TowerPoly::map_coefficients(const std::function<CycElt(const CycElt&)>& fn) const {
  TowerPoly r(amb_);
  for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
  return r;
}

bool TowerPoly::operator==(const TowerPoly& o) const {
  return same_ambient(amb_, o.amb_) && terms_ == o.terms_;
}

std::string TowerPoly::str() const {
  if (terms_.empty()) return "0";
  const auto& R = ring();
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += amb_->vars[i];
      const std::int64_t n = amb_->tower[i];
      const std::int64_t g = std::gcd(e[i], n);
      const std::int64_t a = e[i] / g, b = n / g;
      if (b == 1) {
        if (a != 1) mono += "^" + std::to_string(a);
      } else {
        mono += "^(" + std::to_string(a) + "/" + std::to_string(b) + ")";
      }
    }
    std::string coef;
    bool negative = false;
    if (R.is_integer(c)) {
      Int v = c.coeffs[0];
      negative = v < 0;
      v = abs(v);
      if (v != 1 || mono.empty()) coef = v.get_str();
    } else {
      coef = R.to_string(c);
    }
    std::string term = coef;
    if (!coef.empty() && !mono.empty()) term += "*";
    term += mono;
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Division and truncation

std::optional<TowerPoly> exact_divide(const TowerPoly& a, const TowerPoly& b) {
  if (!same_ambient(a.ambient(), b.ambient())) throw Error(ErrorCode::AmbientMismatch, "exact_divide");
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact_divide by zero");
  const auto& R = a.ring();
  const auto& [lb, cb] = b.leading();
  const std::size_t n = lb.size();
  TowerPoly rem = a;
  TowerPoly q(a.ambient());
  Exponents e(n);
  while (!rem.is_zero()) {
    const auto& [lr, cr] = rem.leading();
    for (std::size_t i = 0; i < n; ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      e[i] = lr[i] - lb[i];
    }
    auto c = R.divide(cr, cb);
    if (!c) return std::nullopt;
    TowerPoly t = TowerPoly::monomial(a.ambient(), e, *c);
    q += t;
    rem -= t * b;
  }
  return q;
}

std::optional<TowerPoly> divide_by_pi_pow(const TowerPoly& a, std::uint64_t k) {
  TowerPoly r(a.ambient());
  for (const auto& [e, c] : a.terms()) {
    auto d = a.ring().div_pi_pow(c, k);
    if (!d) return std::nullopt;
    r.add_term(e, *d);
  }
  return r;
}

Order ord_at(const TowerPoly& f) {
  Order o = Order::inf();
  for (const auto& [e, c] : f.terms()) o = min(o, f.ring().valuation(c));
  return o;
}

TowerPoly reduce_mod_upow(const TowerPoly& f, std::uint64_t m) {
  TowerPoly r(f.ambient());
  for (const auto& [e, c] : f.terms()) r.add_term(e, f.ring().truncate(c, m));
  return r;
}

TowerPoly uniformizer_poly(const AmbientPtr& amb) { return TowerPoly::constant(amb, amb->ring.uniformizer()); }

TowerPoly pi_pow_poly(const AmbientPtr& amb, std::uint64_t k) {
  return TowerPoly::constant(amb, amb->ring.pi_pow(k));
}

// ---------------------------------------------------------------------------------------
// Change of ambient

TowerPoly substitute(const TowerPoly& f, std::size_t v, const TowerPoly& value) {
  const auto& amb = f.ambient();
  if (!same_ambient(amb, value.ambient())) throw Error(ErrorCode::AmbientMismatch, "substitute");
  if (v >= amb->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  const std::int64_t n = amb->tower[v];
  std::map<std::int64_t, TowerPoly> powers;
  TowerPoly out(amb);
  for (const auto& [e, c] : f.terms()) {
    if (e[v] % n != 0) throw Error(ErrorCode::InvalidArgument, "substitution into a fractional power");
    const std::int64_t k = e[v] / n;
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, value.pow(static_cast<std::uint64_t>(k))).first;
    Exponents rest = e;
    rest[v] = 0;
    out += TowerPoly::monomial(amb, rest, c) * it->second;
  }
  return out;
}

TowerPoly embed(const TowerPoly& f, const AmbientPtr& target, const std::vector<std::size_t>& index_map) {
  const auto& src = f.ambient();
  if (!(src->ring == target->ring)) throw Error(ErrorCode::AmbientMismatch, "embed across different rings");
  if (index_map.size() != src->nvars()) throw Error(ErrorCode::InvalidArgument, "index map size");
  std::vector<std::int64_t> factor(src->nvars());
  for (std::size_t i = 0; i < src->nvars(); ++i) {
    const std::size_t j = index_map[i];
    if (j >= target->nvars()) throw Error(ErrorCode::InvalidArgument, "index map out of range");
    if (target->tower[j] % src->tower[i] != 0)
      throw Error(ErrorCode::AmbientMismatch, "target tower does not refine source tower");
    factor[i] = target->tower[j] / src->tower[i];
  }
  TowerPoly out(target);
  Exponents e(target->nvars());
  for (const auto& [es, c] : f.terms()) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < es.size(); ++i) e[index_map[i]] = checked_add(e[index_map[i]], checked_mul(es[i], factor[i]));
    out.add_term(e, c);
  }
  return out;
}

TowerPoly embed(const TowerPoly& f, const AmbientPtr& target) {
  const auto& src = f.ambient();
  std::vector<std::size_t> map(src->nvars());
  for (std::size_t i = 0; i < src->nvars(); ++i) {
    auto j = target->index_of(src->vars[i]);
    if (!j) throw Error(ErrorCode::AmbientMismatch, "variable " + src->vars[i] + " missing in target");
    map[i] = *j;
  }
  return embed(f, target, map);
}

TowerExtension tower_extend(const AmbientPtr& amb, std::size_t v, std::int64_t k) {
  if (v >= amb->nvars()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "tower factor must be at least 2");
  auto tower = amb->tower;
  tower[v] = checked_mul(tower[v], k);
  auto ext = make_ambient(amb->ring, amb->vars, tower);
  std::vector<std::size_t> id(amb->nvars());
  std::iota(id.begin(), id.end(), 0);
  return TowerExtension{ext, [ext, id](const TowerPoly& f) { return embed(f, ext, id); }};
}

AmbientPtr with_variables(const AmbientPtr& amb, const std::vector<std::string>& names) {
  auto vars = amb->vars;
  auto tower = amb->tower;
  for (const auto& n : names) {
    vars.push_back(n);
    tower.push_back(1);
  }
  return make_ambient(amb->ring, vars, tower);
}

AmbientPtr with_root_index(const AmbientPtr& amb, unsigned l) {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "root index factor must be positive");
  return make_ambient(cyclo::Ring(amb->ring.p(), amb->ring.root_index() * l), amb->vars, amb->tower);
}

TowerPoly change_root_index(const TowerPoly& f, const AmbientPtr& target) {
  const auto& src = f.ambient();
  const unsigned s0 = src->ring.root_index(), s1 = target->ring.root_index();
  if (src->ring.p() != target->ring.p() || s1 % s0 != 0)
    throw Error(ErrorCode::AmbientMismatch, "target ring is not a root extension of the source ring");
  if (src->vars != target->vars || src->tower != target->tower)
    throw Error(ErrorCode::AmbientMismatch, "change_root_index keeps the variables");
  const unsigned l = s1 / s0;
  const auto& R = target->ring;
  std::vector<CycElt> basis;
  for (unsigned i = 0; i < src->ring.degree(); ++i) basis.push_back(R.pi_pow(static_cast<std::uint64_t>(i) * l));
  TowerPoly out(target);
  for (const auto& [e, c] : f.terms()) {
    CycElt acc = R.zero();
    for (unsigned i = 0; i < c.coeffs.size(); ++i)
      if (c.coeffs[i] != 0) acc = R.add(acc, R.scale(basis[i], c.coeffs[i]));
    out.add_term(e, acc);
  }
  return out;
}

TowerPoly reduce_power(const TowerPoly& f, std::size_t v, std::uint64_t deg, const TowerPoly& tail) {
  const auto& amb = f.ambient();
  const std::int64_t bound = checked_mul(static_cast<std::int64_t>(deg), amb->tower[v]);
  TowerPoly cur = f;
  for (;;) {
    TowerPoly keep(amb), over(amb);
    for (const auto& [e, c] : cur.terms()) {
      if (e[v] >= bound) {
        Exponents r = e;
        r[v] -= bound;
        over.add_term(r, c);
      } else {
        keep.add_term(e, c);
      }
    }
    if (over.is_zero()) return keep;
    cur = keep + over * tail;
  }
}

std::vector<TowerPoly> coefficients_in(const TowerPoly& f, std::size_t v) {
  const auto& amb = f.ambient();
  const std::int64_t n = amb->tower[v];
  std::vector<TowerPoly> out;
  for (const auto& [e, c] : f.terms()) {
    if (e[v] % n != 0) throw Error(ErrorCode::InvalidArgument, "fractional power in coefficients_in");
    const auto k = static_cast<std::size_t>(e[v] / n);
    while (out.size() <= k) out.emplace_back(amb);
    Exponents r = e;
    r[v] = 0;
    out[k].add_term(r, c);
  }
  return out;
}

TowerPoly determinant(const std::vector<std::vector<TowerPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  if (n == 1) return m[0][0];
  const auto& amb = m[0][0].ambient();
  TowerPoly acc(amb);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<TowerPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<TowerPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    TowerPoly t = m[0][j] * determinant(minor);
    if (j % 2) acc -= t;
    else acc += t;
  }
  return acc;
}

// ---------------------------------------------------------------------------------------
// Local fractions

bool is_local_unit(const TowerPoly& f) { return !reduce_mod_upow(f, 1).is_zero(); }

LocalElt::LocalElt(TowerPoly n, TowerPoly d) : num(std::move(n)), den(std::move(d)) {
  if (!same_ambient(num.ambient(), den.ambient())) throw Error(ErrorCode::AmbientMismatch, "LocalElt");
  if (!is_local_unit(den)) throw Error(ErrorCode::NotLocalUnit, "denominator lies in (pi)");
}

LocalElt::LocalElt(TowerPoly n) : num(n), den(TowerPoly::integer(n.ambient(), 1)) {}

LocalElt LocalElt::operator+(const LocalElt& o) const {
  if (den == o.den) return LocalElt(num + o.num, den);
  return LocalElt(num * o.den + o.num * den, den * o.den);
}

LocalElt LocalElt::operator-(const LocalElt& o) const {
  if (den == o.den) return LocalElt(num - o.num, den);
  return LocalElt(num * o.den - o.num * den, den * o.den);
}

LocalElt LocalElt::operator*(const LocalElt& o) const { return LocalElt(num * o.num, den * o.den); }

LocalElt LocalElt::pow(std::uint64_t k) const { return LocalElt(num.pow(k), den.pow(k)); }

bool LocalElt::equals(const LocalElt& o) const { return num * o.den == o.num * den; }

LocalElt reduce_mod_upow(const LocalElt& f, std::uint64_t m) {
  if (!is_local_unit(f.den)) throw Error(ErrorCode::NotLocalUnit, "denominator lies in (pi)");
  const auto& amb = f.num.ambient();
  if (f.den.is_constant()) {
    auto inv = amb->ring.local_inverse(f.den.leading().second, m);
    if (!inv) throw Error(ErrorCode::NotLocalUnit, "denominator lies in (pi)");
    return LocalElt(reduce_mod_upow(f.num.scaled(*inv), m));
  }
  return LocalElt(reduce_mod_upow(f.num, m), reduce_mod_upow(f.den, m));
}

}  // namespace ramlab
