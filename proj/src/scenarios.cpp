#include "ramlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "ramlab/error.hpp"

namespace ramlab {

bool ScenarioReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void ScenarioReport::check(std::string name, bool ok, std::string detail) {
  checks.push_back(Check{std::move(name), ok, std::move(detail)});
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string describe(const RamClass& c) {
  std::string s = to_string(c.verdict);
  if (c.reason != RamifiedReason::None) s += "(" + to_string(c.reason) + ")";
  if (c.cert) s += " Gamma " + to_string(c.cert->status) + " " + std::to_string(c.cert->level);
  return s;
}

std::string describe(const GammaCert& c) { return to_string(c.status) + " " + std::to_string(c.level); }

}  // namespace

// ---------------------------------------------------------------------------------------

ScenarioReport koh_scenario(unsigned extra_vars) {
  const auto t0 = Clock::now();
  ScenarioReport rep;
  rep.id = "koh";
  std::vector<std::string> vars{"x", "y"};
  for (unsigned i = 1; i <= extra_vars; ++i) vars.push_back("z" + std::to_string(i));
  rep.inputs = {{"p", "3"}, {"variables", std::to_string(vars.size())}, {"a", "x*y^4 + 27"}, {"b", "x^4*y + 27"},
                {"f", "a*b^2"}};
  rep.notes.push_back(
      "the ambient has only the variables needed for the construction; the basis and closure checks do not depend "
      "on the dimension");

  const auto S = make_ambient(3, vars);
  const TowerPoly a = parse_poly(S, "x*y^4 + 27");
  const TowerPoly b = parse_poly(S, "x^4*y + 27");
  const TowerPoly f = a * b.pow(2);

  // Over S[eps]: a and b are ramified with Gamma = 0, while f = a b^2 clears the threshold.
  for (const auto& [name, g] : {std::pair{"a", a}, std::pair{"b", b}}) {
    const RamClass c = classify(g);
    const bool ok = c.verdict == Verdict::Ramified && c.reason == RamifiedReason::GammaBelowThreshold && c.cert &&
                    c.cert->status == GammaStatus::Exact && c.cert->level == 0;
    rep.check(std::string("Gamma(") + name + ") = 0 over S[eps]", ok, describe(c));
    if (c.cert) rep.certs.emplace_back(std::string("S:") + name, *c.cert);
  }
  {
    const RamClass c = classify(f);
    rep.check("f is tame over S[eps]", c.verdict == Verdict::Tame, describe(c));
    const GammaCert g6 = gamma(f, 3, 6);
    rep.check("Gamma(f) >= 6 over S[eps]", g6.status == GammaStatus::AtLeast && g6.level >= 6, describe(g6));
    rep.certs.emplace_back("S:f", g6);
  }
  {
    const SquarefreeReport sq = squarefree_coprime_check({a, b});
    rep.check("a, b squarefree and coprime", sq.pass);
    const CanonicalResult cr = canonical_reduce(Presentation{TowerPoly::integer(S, 1), {{a, 1}, {b, 2}}}, 3);
    const bool ok = cr.divisors.size() == 2 && cr.divisors[0] == a && cr.divisors[1] == b;
    rep.check("canonical divisors of f are {a, b}", ok);
  }

  // Over T = S[eps][x^(1/3), y^(1/3)].
  std::vector<std::int64_t> tower(vars.size(), 1);
  tower[0] = tower[1] = 3;
  const auto T = make_ambient(3, vars, tower);
  const TowerPoly aT = embed(a, T), bT = embed(b, T);
  std::vector<GammaCert> tc;
  for (const auto& [name, g] : {std::pair{"a", aT}, std::pair{"b", bT}}) {
    const RamClass c = classify(g);
    rep.check(std::string(name) + " is tame over T", c.verdict == Verdict::Tame, describe(c));
    const GammaCert g6 = gamma(g, 3, 6);
    rep.check(std::string("Gamma(") + name + ") >= 6 over T", g6.status == GammaStatus::AtLeast && g6.level >= 6,
              describe(g6));
    rep.certs.emplace_back(std::string("T:") + name, g6);
    tc.push_back(gamma(g, 3, threshold(T->ring)));
  }
  {
    const GammaCert g6 = gamma(embed(f, T), 3, 6);
    rep.check("Gamma(a b^2) >= 6 over T", g6.status == GammaStatus::AtLeast && g6.level >= 6, describe(g6));
    rep.certs.emplace_back("T:f", g6);
  }

  const KummerAlg Ka = normalize_degree_p(aT, tc[0], "A");
  const KummerAlg Kb = normalize_degree_p(bT, tc[1], "B");
  const KummerAlg V = tensor_compose({Ka, Kb});
  rep.check("V has rank 9", V.rank == 9, std::to_string(V.rank));

  // The displayed basis: ((A - x^(1/3) y^(4/3)) / (eps - 1))^i ((B - y^(1/3) x^(4/3)) / (eps - 1))^j,
  // in the order i + 3 j.
  {
    const auto& F = V.frac_ambient;
    const TowerPoly da = parse_poly(F, "A - x^(1/3)*y^(4/3)");
    const TowerPoly db = parse_poly(F, "B - y^(1/3)*x^(4/3)");
    const TowerPoly u = parse_poly(F, "e - 1");
    bool ok = V.frac_num.size() == 9;
    std::string detail;
    for (unsigned j = 0; ok && j < 3; ++j)
      for (unsigned i = 0; i < 3; ++i) {
        const std::size_t I = i + 3 * j;
        // Compare num / pi^d with da^i db^j / u^(i+j) by cross-multiplication.
        const TowerPoly lhs = V.frac_num[I] * u.pow(i + j);
        const TowerPoly rhs = da.pow(i) * db.pow(j) * pi_pow_poly(F, V.frac_den[I]);
        if (!(lhs == rhs)) {
          ok = false;
          detail = "basis element " + std::to_string(I) + " differs";
          break;
        }
      }
    rep.check("basis of V matches the displayed fractions", ok, detail);
  }
  const AlgebraReport vr = verify_algebra(V);
  std::string detail;
  for (const auto& s : vr.failures) detail += s + "; ";
  rep.check("V closure, identity, commutativity, associativity", vr.ok(), detail);

  // Hilbert-Burch data for the cover of a.
  {
    const HBPair hb = hb_matrices(1, tc[0].num, aT);
    rep.check("Hilbert-Burch minors for a", hb.minors_ok);
    rep.check("Hilbert-Burch cofactors for a", hb.cofactors_ok);
    rep.check("Hilbert-Burch determinant for a", hb.det_ok);
    rep.check("factorization residual for a is zero", hb.factorization_ok, hb.residual.str());
  }

  for (const auto& [label, c] : rep.certs) rep.check("certificate " + label + " re-verifies", verify_gamma_cert(c));
  rep.algebras.emplace_back("T[a^(1/3)]", Ka);
  rep.algebras.emplace_back("T[b^(1/3)]", Kb);
  rep.algebras.emplace_back("V", V);
  rep.seconds = since(t0);
  return rep;
}

// ---------------------------------------------------------------------------------------

ScenarioReport quadratic_scenario(long f) {
  const auto t0 = Clock::now();
  if (f % 2 == 0 || f == 0 || f > 1000000 || f < -1000000) throw Error(ErrorCode::BadInput, "f must be odd, nonzero and |f| <= 10^6");
  for (long d = 3; d * d <= std::labs(f); d += 2)
    if (f % (d * d) == 0) throw Error(ErrorCode::BadInput, "f is not squarefree");

  ScenarioReport rep;
  rep.id = "quad";
  rep.inputs = {{"p", "2"}, {"f", std::to_string(f)}};
  const auto Z = make_ambient(2, {});
  const TowerPoly F = TowerPoly::integer(Z, f);
  const RamClass c = classify(F);
  if (c.cert) rep.certs.emplace_back("f", *c.cert);
  const long r4 = ((f % 4) + 4) % 4;
  const bool classical_unramified = f == 1 || r4 == 1;
  rep.check("tame iff f = 1 mod 4", (c.verdict == Verdict::Tame || c.verdict == Verdict::PthPower) == classical_unramified,
            describe(c));
  if (c.verdict == Verdict::Tame) {
    const KummerAlg K = normalize_degree_p(F, c.cert);
    const TowerPoly d = discriminant(K);
    rep.check("cover discriminant equals f", d == F, d.str());
    const AlgebraReport ar = verify_algebra(K);
    rep.check("cover passes verify_algebra", ar.ok());
    rep.algebras.emplace_back("cover", K);
  }
  for (const auto& [label, cert] : rep.certs) rep.check("certificate " + label + " re-verifies", verify_gamma_cert(cert));
  rep.seconds = since(t0);
  return rep;
}

// ---------------------------------------------------------------------------------------

namespace {

struct Rng {
  std::mt19937_64 gen;
  Rng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(stream)};
    gen.seed(seq);
  }
  // Plain modular reduction keeps the stream identical across standard libraries.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen() % n; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

AmbientPtr battery_ambient(unsigned p, unsigned nvars) {
  static const std::vector<std::string> names{"x", "y"};
  return make_ambient(p, std::vector<std::string>(names.begin(), names.begin() + nvars));
}

Exponents random_exponents(Rng& rng, unsigned nvars, unsigned degree) {
  Exponents e(nvars, 0);
  std::int64_t left = rng.range(0, degree);
  for (unsigned v = 0; v < nvars; ++v) {
    e[v] = rng.range(0, left);
    left -= e[v];
  }
  return e;
}

TowerPoly random_poly(Rng& rng, const AmbientPtr& amb, unsigned degree, std::int64_t height, unsigned max_terms) {
  TowerPoly f(amb);
  const auto nterms = rng.range(1, max_terms);
  for (std::int64_t t = 0; t < nterms; ++t) {
    const std::int64_t c = rng.range(-height, height);
    f.add_term(random_exponents(rng, static_cast<unsigned>(amb->nvars()), degree), amb->ring.from_int(c));
  }
  return f;
}

struct InstanceResult {
  std::string f;
  bool oracle_run = false, oracle_agree = false, cert_ok = false;
  bool unit_invariance = false, power_agreement = false;
  bool tame = false, cover_ok = false;
  std::string detail;
};

unsigned oracle_degree(unsigned p, unsigned nvars, std::int64_t deg) {
  std::int64_t B = std::max<std::int64_t>(1, deg / p + 1);
  auto monos = [&](std::int64_t b) {
    return nvars == 0 ? 1 : nvars == 1 ? b + 1 : (b + 1) * (b + 2) / 2;
  };
  while (B > 0 && std::pow(double(p), double(monos(B))) > 1e5) --B;
  return static_cast<unsigned>(B);
}

InstanceResult run_instance(std::uint64_t seed, std::uint64_t index, const BatteryProfile& prof) {
  InstanceResult r;
  const TowerPoly f = battery_instance(seed, index, prof);
  const auto& amb = f.ambient();
  const unsigned p = prof.p;
  const unsigned nvars = static_cast<unsigned>(amb->nvars());
  r.f = f.str();
  const std::uint64_t T = threshold(amb->ring);
  const std::uint64_t depth = nvars == 0 ? 4 : std::min<std::uint64_t>(4, T + 1);

  const GammaCert c = gamma(f, p, depth);
  r.cert_ok = verify_gamma_cert(c);
  try {
    const OracleResult o = gamma_oracle(f, p, depth, oracle_degree(p, nvars, f.degree()));
    r.oracle_run = true;
    r.oracle_agree = o.level == c.level;
    if (!r.oracle_agree)
      r.detail = "engine " + describe(c) + " vs oracle " + std::to_string(o.level) + " for " + r.f;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InstanceTooLarge) throw;
  }

  const RamClass base = classify(f);
  const auto level_of = [](const RamClass& k) { return k.cert ? std::optional<std::uint64_t>(k.cert->level) : std::nullopt; };

  Rng rng(seed, index, 2);
  TowerPoly v = random_poly(rng, amb, 2, 3, 3);
  v += TowerPoly::integer(amb, 1);
  if (!is_local_unit(v)) v += TowerPoly::integer(amb, 1);
  const RamClass scaled = classify(v.pow(p) * f);
  r.unit_invariance = scaled.verdict == base.verdict && scaled.reason == base.reason && level_of(scaled) == level_of(base);
  if (!r.unit_invariance) r.detail += " v^p invariance fails for v = " + v.str();

  const unsigned j = p == 2 ? 3 : 2;
  const RamClass powered = classify(f.pow(j));
  r.power_agreement = powered.verdict == base.verdict;
  if (!r.power_agreement) r.detail += " f^" + std::to_string(j) + " verdict differs";

  if (base.verdict == Verdict::Tame) {
    r.tame = true;
    try {
      r.cover_ok = verify_algebra(normalize_degree_p(f, base.cert)).ok();
    } catch (const Error& e) {
      r.detail += std::string(" cover: ") + e.what();
    }
  }
  return r;
}

}  // namespace

TowerPoly battery_instance(std::uint64_t seed, std::uint64_t index, const BatteryProfile& prof) {
  if (prof.p != 2 && prof.p != 3) throw Error(ErrorCode::InvalidArgument, "battery supports p = 2 and p = 3");
  if (prof.max_vars > 2) throw Error(ErrorCode::InvalidArgument, "battery supports at most two variables");
  Rng rng(seed, index, 1);
  const unsigned nvars = static_cast<unsigned>(rng.below(prof.max_vars + 1));
  const auto amb = battery_ambient(prof.p, nvars);
  const std::int64_t height = prof.height;
  const std::uint64_t T = threshold(amb->ring);
  TowerPoly f(amb);
  switch (rng.below(3)) {
    case 0:
      f = random_poly(rng, amb, prof.degree, height, 5);
      break;
    default: {
      // Near p-th powers: g^p + pi^k r, with k up to the threshold and beyond.
      const TowerPoly g = random_poly(rng, amb, std::max(1u, prof.degree / prof.p), 1, 3);
      const std::uint64_t k = 1 + rng.below(T + 2);
      const TowerPoly r = random_poly(rng, amb, prof.degree, std::min<std::int64_t>(height, 9), 3);
      f = g.pow(prof.p) + pi_pow_poly(amb, k) * r;
    }
  }
  if (f.is_zero()) f = TowerPoly::integer(amb, 1);
  return f;
}

ScenarioReport battery(std::uint64_t seed, std::uint64_t count, const BatteryProfile& prof) {
  const auto t0 = Clock::now();
  ScenarioReport rep;
  rep.id = "battery";
  rep.inputs = {{"seed", std::to_string(seed)}, {"count", std::to_string(count)}, {"p", std::to_string(prof.p)},
                {"max_vars", std::to_string(prof.max_vars)}, {"degree", std::to_string(prof.degree)},
                {"height", std::to_string(prof.height)}};

  std::vector<InstanceResult> results(count);
  std::vector<std::string> errors(count);
  const unsigned nt = std::max(1u, std::min<unsigned>(prof.threads, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
  auto worker = [&](unsigned w) {
    for (std::uint64_t i = w; i < count; i += nt) {
      try {
        results[i] = run_instance(seed, i, prof);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (nt == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nt; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  auto& cnt = rep.counters;
  for (const char* k : {"instances", "errors", "oracle_run", "oracle_agree", "cert_ok", "unit_invariance",
                        "power_agreement", "tame", "cover_ok"})
    cnt[k] = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto& r = results[i];
    ++cnt["instances"];
    rep.inputs.emplace_back("f#" + std::to_string(i), r.f);
    if (!errors[i].empty()) {
      ++cnt["errors"];
      rep.check("instance " + std::to_string(i) + " runs", false, errors[i]);
      continue;
    }
    cnt["oracle_run"] += r.oracle_run;
    cnt["oracle_agree"] += r.oracle_run && r.oracle_agree;
    cnt["cert_ok"] += r.cert_ok;
    cnt["unit_invariance"] += r.unit_invariance;
    cnt["power_agreement"] += r.power_agreement;
    cnt["tame"] += r.tame;
    cnt["cover_ok"] += r.tame && r.cover_ok;
    if (!r.detail.empty()) rep.notes.push_back("instance " + std::to_string(i) + ":" + r.detail);
  }
  const auto n = cnt["instances"] - cnt["errors"];
  auto frac = [](std::uint64_t a, std::uint64_t b) { return std::to_string(a) + "/" + std::to_string(b); };
  rep.check("engine agrees with the oracle", cnt["oracle_agree"] == cnt["oracle_run"],
            frac(cnt["oracle_agree"], cnt["oracle_run"]));
  rep.check("certificates re-verify", cnt["cert_ok"] == n, frac(cnt["cert_ok"], n));
  rep.check("classify is invariant under f -> v^p f", cnt["unit_invariance"] == n, frac(cnt["unit_invariance"], n));
  rep.check("f and f^j share a verdict", cnt["power_agreement"] == n, frac(cnt["power_agreement"], n));
  rep.check("tame covers pass verify_algebra", cnt["cover_ok"] == cnt["tame"], frac(cnt["cover_ok"], cnt["tame"]));
  rep.seconds = since(t0);
  return rep;
}

}  // namespace ramlab
