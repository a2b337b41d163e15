#include "ramlab/serialize.hpp"

#include "ramlab/error.hpp"
#include "ramlab/residue.hpp"

namespace ramlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadInput, what); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return need(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

void check_schema(const Json& j, const std::string& kind) {
  if (get<int>(j, "schema") != kSchema) bad("unsupported schema version");
  if (!kind.empty() && get<std::string>(j, "kind") != kind) bad("expected a certificate of kind " + kind);
}

GammaStatus status_from(const std::string& s) {
  for (auto st : {GammaStatus::Exact, GammaStatus::AtLeast, GammaStatus::Unknown})
    if (to_string(st) == s) return st;
  bad("unknown gamma status " + s);
}

Json cert_body(const GammaCert& c) {
  Json j;
  j["n"] = c.n;
  j["status"] = to_string(c.status);
  j["level"] = c.level;
  j["depth"] = c.depth;
  j["bound_hit"] = c.bound_hit;
  j["f"] = c.f.str();
  j["num"] = c.num.str();
  j["den"] = c.den.str();
  j["b"] = c.b.str();
  j["branch_log"] = c.branch_log;
  return j;
}

GammaCert cert_from_body(const Json& j, const AmbientPtr& amb) {
  GammaCert c;
  c.n = get<unsigned>(j, "n");
  c.status = status_from(get<std::string>(j, "status"));
  c.level = get<std::uint64_t>(j, "level");
  c.depth = get<std::uint64_t>(j, "depth");
  c.bound_hit = j.contains("bound_hit") ? get<std::int64_t>(j, "bound_hit") : -1;
  c.f = parse_poly(amb, get<std::string>(j, "f"));
  c.num = parse_poly(amb, get<std::string>(j, "num"));
  c.den = parse_poly(amb, get<std::string>(j, "den"));
  c.b = parse_poly(amb, get<std::string>(j, "b"));
  if (j.contains("branch_log")) c.branch_log = j.at("branch_log").get<std::vector<std::string>>();
  return c;
}

// Checks that a claimed Exact level cannot be improved, from the residue of the certificate data.
bool exactness_holds(const GammaCert& c, std::string& why) {
  const auto& R = c.f.ring();
  const unsigned p = R.p();
  const Order k0 = ord_at(c.f);
  if (k0.infinite) {
    why = "zero element";
    return false;
  }
  if (c.n != p) {
    if (k0.value % c.n != 0) return c.level == k0.value || (why = "level differs from ord(f)", false);
    if (c.level != k0.value) {
      why = "an exact level above ord(f) is impossible for n prime to p";
      return false;
    }
    const TowerPoly unit = *divide_by_pi_pow(c.f, k0.value);
    if (nth_root(residue_of(unit), c.n)) {
      why = "the residue has an n-th root";
      return false;
    }
    return true;
  }
  if (k0.value % p != 0) {
    if (c.level != k0.value) why = "level differs from ord(f)";
    return c.level == k0.value;
  }
  if (c.level < k0.value) {
    why = "level below ord(f)";
    return false;
  }
  const std::uint64_t m = c.level - k0.value;
  const std::uint64_t T = threshold(R);
  if (ord_at(c.b).value != 0 || ord_at(c.b).infinite) {
    why = "b is not a local unit";
    return false;
  }
  const ResiduePoly bbar = residue_of(c.b);
  if (m < T) {
    if (m % p != 0) return true;
    if (frobenius_root(bbar)) {
      why = "residue of b is a p-th power";
      return false;
    }
    return true;
  }
  if (m == T) {
    auto nq = divide_by_pi_pow(c.num, k0.value / p);
    if (!nq) {
      why = "witness is not divisible by the expected power of pi";
      return false;
    }
    const ResiduePoly nbar = residue_of(*nq);
    const unsigned wbar = R.residue(cyclo::cyclo_ring(p, R.root_index()).unit_w);
    const ResiduePoly coef = nbar.pow(p - 1).scaled(wbar);
    const std::int64_t bound = std::max<std::int64_t>({bbar.degree(), nbar.degree(), 0});
    if (solve_artin_schreier(coef, bbar, bound)) {
      why = "the Artin-Schreier equation at the threshold is solvable";
      return false;
    }
    return true;
  }
  why = "an exact level above the threshold is impossible";
  return false;
}

VerifyResult verify_gamma(const GammaCert& c) {
  VerifyResult r;
  r.ok = verify_gamma_cert(c);
  if (!r.ok) r.messages.push_back("identity f den^n = num^n + pi^level b fails");
  if (c.level > c.depth) {
    r.ok = false;
    r.messages.push_back("level exceeds depth");
  }
  switch (c.status) {
    case GammaStatus::AtLeast:
      if (c.level != c.depth) {
        r.ok = false;
        r.messages.push_back("AtLeast certificate must sit at the requested depth");
      }
      break;
    case GammaStatus::Exact: {
      std::string why;
      if (!exactness_holds(c, why)) {
        r.ok = false;
        r.messages.push_back("exactness: " + why);
      }
      break;
    }
    case GammaStatus::Unknown:
      r.messages.push_back("unknown status: only the identity is checked");
      break;
  }
  return r;
}

Verdict verdict_from(const std::string& s) {
  for (auto v : {Verdict::PthPower, Verdict::Tame, Verdict::Ramified, Verdict::Unknown})
    if (to_string(v) == s) return v;
  bad("unknown verdict " + s);
}

RamifiedReason reason_from(const std::string& s) {
  for (auto v : {RamifiedReason::None, RamifiedReason::DividesP, RamifiedReason::GammaBelowThreshold})
    if (to_string(v) == s) return v;
  bad("unknown reason " + s);
}

VerifyResult verify_classify(const Json& j) {
  const auto amb = ambient_from_json(need(j, "ambient"));
  const TowerPoly f = parse_poly(amb, get<std::string>(j, "f"));
  const Verdict v = verdict_from(get<std::string>(j, "verdict"));
  const RamifiedReason why = reason_from(get<std::string>(j, "reason"));
  const std::uint64_t T = threshold(amb->ring);
  VerifyResult r{true, {}};
  auto fail = [&](const std::string& s) {
    r.ok = false;
    r.messages.push_back(s);
  };
  if (get<std::uint64_t>(j, "threshold") != T) fail("threshold does not match the ambient");
  std::optional<GammaCert> cert;
  if (j.contains("gamma")) {
    cert = cert_from_body(j.at("gamma"), amb);
    if (!(cert->f == f)) fail("certificate is for a different element");
    auto g = verify_gamma(*cert);
    if (!g.ok) r.ok = false;
    r.messages.insert(r.messages.end(), g.messages.begin(), g.messages.end());
  }
  switch (v) {
    case Verdict::PthPower: {
      if (!j.contains("root")) {
        fail("missing p-th root");
        break;
      }
      const TowerPoly root = parse_poly(amb, get<std::string>(j, "root"));
      if (!(root.pow(amb->ring.p()) == f)) fail("root^p differs from f");
      break;
    }
    case Verdict::Tame:
      if (!cert || cert->n != amb->ring.p() || cert->level < T) fail("tame verdict needs a certificate at the threshold");
      break;
    case Verdict::Ramified:
      if (why == RamifiedReason::DividesP) {
        if (!ord_at(f).at_least(1)) fail("f is not divisible by pi");
      } else if (why == RamifiedReason::GammaBelowThreshold) {
        if (!cert || cert->status != GammaStatus::Exact || cert->level >= T)
          fail("ramified verdict needs an exact level below the threshold");
      } else {
        fail("ramified verdict without a reason");
      }
      break;
    case Verdict::Unknown:
      if (!cert || cert->status != GammaStatus::Unknown) fail("unknown verdict needs an unknown certificate");
      break;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------------------

AmbientPtr Manifest::ambient() const { return make_ambient(p, vars, tower, root_index); }

TowerPoly Manifest::element(const std::string& name) const {
  auto it = elements.find(name);
  if (it == elements.end()) throw Error(ErrorCode::InvalidArgument, "no element named " + name);
  return parse_poly(ambient(), it->second);
}

Json ambient_json(const AmbientPtr& amb) {
  Json j;
  j["p"] = amb->ring.p();
  j["uniformizer_root"] = amb->ring.root_index();
  j["variables"] = amb->vars;
  j["tower"] = amb->tower;
  j["localized_at"] = "pi";
  return j;
}

AmbientPtr ambient_from_json(const Json& j) {
  const auto vars = get<std::vector<std::string>>(j, "variables");
  std::vector<std::int64_t> tower;
  if (j.contains("tower")) tower = get<std::vector<std::int64_t>>(j, "tower");
  const unsigned s = j.contains("uniformizer_root") ? get<unsigned>(j, "uniformizer_root") : 1;
  return make_ambient(get<unsigned>(j, "p"), vars, tower, s);
}

Manifest parse_manifest(const Json& j) {
  if (get<int>(j, "schema") != kSchema) bad("unsupported schema version");
  Manifest m;
  m.p = get<unsigned>(j, "p");
  m.root_index = j.contains("uniformizer_root") ? get<unsigned>(j, "uniformizer_root") : 1;
  if (j.contains("ambient")) {
    const Json& a = j.at("ambient");
    if (a.contains("variables")) m.vars = get<std::vector<std::string>>(a, "variables");
    if (a.contains("tower")) m.tower = get<std::vector<std::int64_t>>(a, "tower");
  }
  if (j.contains("elements")) {
    for (const auto& [k, v] : j.at("elements").items()) {
      if (!v.is_string()) bad("element " + k + " must be a string");
      m.elements[k] = v.get<std::string>();
    }
  }
  if (j.contains("params")) m.params = j.at("params");
  // Fail early on malformed elements.
  const auto amb = m.ambient();
  for (const auto& [k, v] : m.elements) parse_poly(amb, v);
  return m;
}

Json to_json(const Manifest& m) {
  Json j;
  j["schema"] = kSchema;
  j["p"] = m.p;
  j["uniformizer_root"] = m.root_index;
  j["ambient"] = {{"variables", m.vars}, {"tower", m.tower}};
  Json e = Json::object();
  const auto amb = m.ambient();
  for (const auto& [k, v] : m.elements) e[k] = parse_poly(amb, v).str();
  j["elements"] = e;
  j["params"] = m.params;
  return j;
}

Json gamma_cert_json(const GammaCert& c) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "gamma";
  j["ambient"] = ambient_json(c.f.ambient());
  const Json body = cert_body(c);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

GammaCert gamma_cert_from_json(const Json& j) {
  check_schema(j, "gamma");
  return cert_from_body(j, ambient_from_json(need(j, "ambient")));
}

Json classify_json(const TowerPoly& f, const RamClass& c) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "classify";
  j["ambient"] = ambient_json(f.ambient());
  j["f"] = f.str();
  j["verdict"] = to_string(c.verdict);
  j["reason"] = to_string(c.reason);
  j["threshold"] = c.threshold;
  j["ord"] = c.ord.str();
  if (c.root) j["root"] = c.root->str();
  if (c.cert) j["gamma"] = cert_body(*c.cert);
  return j;
}

Json algebra_json(const KummerAlg& a) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "algebra";
  j["ambient"] = ambient_json(a.ambient);
  j["rank"] = a.rank;
  j["labels"] = a.labels;
  Json table = Json::array();
  for (std::size_t i = 0; i < a.rank; ++i)
    for (std::size_t jj = 0; jj < a.rank; ++jj)
      for (std::size_t k = 0; k < a.rank; ++k)
        if (!a.table[i][jj][k].is_zero()) table.push_back(Json::array({i, jj, k, a.table[i][jj][k].str()}));
  j["table"] = table;
  if (!a.radicals.empty()) {
    Json fr;
    fr["ambient"] = ambient_json(a.frac_ambient);
    Json rads = Json::array();
    for (const auto& r : a.radicals) rads.push_back({{"var", r.var}, {"f", r.f.str()}, {"n", r.n}});
    fr["radicals"] = rads;
    Json nums = Json::array();
    for (const auto& n : a.frac_num) nums.push_back(n.str());
    fr["numerators"] = nums;
    fr["pi_exponents"] = a.frac_den;
    j["fractions"] = fr;
  }
  j["provenance"] = a.provenance;
  return j;
}

KummerAlg algebra_from_json(const Json& j) {
  check_schema(j, "algebra");
  KummerAlg a;
  a.ambient = ambient_from_json(need(j, "ambient"));
  a.rank = get<std::size_t>(j, "rank");
  if (a.rank == 0 || a.rank > 4096) bad("rank out of range");
  if (j.contains("labels")) a.labels = get<std::vector<std::string>>(j, "labels");
  a.table.assign(a.rank, std::vector<std::vector<TowerPoly>>(a.rank, std::vector<TowerPoly>(a.rank, TowerPoly(a.ambient))));
  for (const auto& e : need(j, "table")) {
    if (!e.is_array() || e.size() != 4) bad("table entries are [i, j, k, poly]");
    const auto i = e[0].get<std::size_t>(), jj = e[1].get<std::size_t>(), k = e[2].get<std::size_t>();
    if (i >= a.rank || jj >= a.rank || k >= a.rank) bad("table index out of range");
    a.table[i][jj][k] = parse_poly(a.ambient, e[3].get<std::string>());
  }
  if (j.contains("fractions")) {
    const Json& fr = j.at("fractions");
    a.frac_ambient = ambient_from_json(need(fr, "ambient"));
    for (const auto& r : need(fr, "radicals"))
      a.radicals.push_back(Radical{get<std::string>(r, "var"), parse_poly(a.ambient, get<std::string>(r, "f")),
                                   get<unsigned>(r, "n")});
    for (const auto& n : need(fr, "numerators")) a.frac_num.push_back(parse_poly(a.frac_ambient, n.get<std::string>()));
    a.frac_den = get<std::vector<std::uint64_t>>(fr, "pi_exponents");
  }
  if (j.contains("provenance")) a.provenance = get<std::string>(j, "provenance");
  return a;
}

Json report_json(const ScenarioReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "report";
  j["id"] = r.id;
  Json in = Json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  j["inputs"] = in;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["counters"] = r.counters;
  j["notes"] = r.notes;
  Json certs = Json::array();
  for (const auto& [label, c] : r.certs) certs.push_back({{"label", label}, {"certificate", gamma_cert_json(c)}});
  j["certificates"] = certs;
  Json algs = Json::array();
  for (const auto& [label, a] : r.algebras) algs.push_back({{"label", label}, {"certificate", algebra_json(a)}});
  j["algebras"] = algs;
  j["pass"] = r.pass();
  return j;
}

VerifyResult verify_certificate(const Json& j) {
  try {
    if (get<int>(j, "schema") != kSchema) bad("unsupported schema version");
    const std::string kind = get<std::string>(j, "kind");
    if (kind == "gamma") return verify_gamma(gamma_cert_from_json(j));
    if (kind == "classify") return verify_classify(j);
    if (kind == "algebra") {
      const KummerAlg a = algebra_from_json(j);
      const AlgebraReport rep = verify_algebra(a);
      VerifyResult r{rep.ok(), rep.failures};
      if (a.radicals.empty()) r.messages.push_back("no defining fractions: only the table axioms are checked");
      return r;
    }
    if (kind == "report") {
      VerifyResult r{true, {}};
      for (const char* key : {"certificates", "algebras"})
        for (const auto& e : need(j, key)) {
          const auto sub = verify_certificate(need(e, "certificate"));
          const std::string label = get<std::string>(e, "label");
          if (!sub.ok) r.ok = false;
          r.messages.push_back(label + ": " + (sub.ok ? "ok" : "FAILED"));
          for (const auto& m : sub.messages) r.messages.push_back("  " + m);
        }
      return r;
    }
    bad("unknown certificate kind " + kind);
  } catch (const Error& e) {
    return VerifyResult{false, {e.what()}};
  } catch (const nlohmann::json::exception& e) {
    return VerifyResult{false, {std::string("malformed JSON: ") + e.what()}};
  }
}

}  // namespace ramlab
