// ramlab: command-line front end.
//
// Exit codes: 0 success (tame, p-th power, verified), 1 ramified or verification failure,
// 2 unknown verdict, 64 usage or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ramlab/algebra.hpp"
#include "ramlab/error.hpp"
#include "ramlab/ramification.hpp"
#include "ramlab/scenarios.hpp"
#include "ramlab/serialize.hpp"
#include "ramlab/valuation.hpp"

using namespace ramlab;

namespace {

constexpr int kOk = 0, kFail = 1, kUnknown = 2, kUsage = 64;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadInput, path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Element by explicit name, else params.element, else "f", else the only element.
TowerPoly pick(const Manifest& m, const std::string& name) {
  if (!name.empty()) return m.element(name);
  if (m.params.contains("element")) return m.element(m.params.at("element").get<std::string>());
  if (m.elements.count("f")) return m.element("f");
  if (m.elements.size() == 1) return m.element(m.elements.begin()->first);
  throw Error(ErrorCode::InvalidArgument, "several elements in the manifest; pass --element");
}

template <class T>
T param(const Manifest& m, const char* key, T fallback) {
  return m.params.contains(key) ? m.params.at(key).get<T>() : fallback;
}

void print_algebra(const KummerAlg& a, const AlgebraReport& r) {
  std::cout << "rank " << a.rank << "\nbasis:";
  for (std::size_t i = 0; i < a.rank; ++i) {
    std::cout << "\n  " << (i < a.labels.size() ? a.labels[i] : std::to_string(i));
    if (i < a.frac_num.size()) std::cout << " = (" << a.frac_num[i].str() << ") / pi^" << a.frac_den[i];
  }
  std::cout << "\nverify: identity " << r.identity << ", commutative " << r.commutative << ", associative "
            << r.associative << ", closure " << r.closure;
  if (r.fractions) std::cout << ", fractions " << *r.fractions;
  std::cout << "\n";
  for (const auto& f : r.failures) std::cout << "  " << f << "\n";
}

int print_report(const ScenarioReport& r, const std::string& out, bool json) {
  if (json) {
    std::cout << report_json(r).dump(2) << "\n";
  } else {
    std::cout << "scenario " << r.id << "\n";
    for (const auto& c : r.checks)
      std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail)
                << "\n";
    for (const auto& [k, v] : r.counters) std::cout << "  " << k << " = " << v << "\n";
    for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
    std::cout << "  time " << r.seconds << " s\n" << (r.pass() ? "PASS" : "FAIL") << "\n";
  }
  write_json(out, report_json(r));
  return r.pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ramlab: ramification of Kummer extensions over p-adic cyclotomic bases"};
  app.require_subcommand(1);

  std::string manifest, element, out, cert_path;
  bool json = false;
  std::uint64_t depth = 0;
  unsigned n = 0;
  std::int64_t as_degree = -1;

  auto with_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest, "manifest JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "write the certificate JSON here");
  };

  auto* classify_cmd = app.add_subcommand("classify", "tame / ramified / p-th power verdict");
  with_manifest(classify_cmd);
  classify_cmd->add_option("--element", element);
  classify_cmd->add_option("--as-degree", as_degree, "cap on Artin-Schreier correction degree");

  auto* gamma_cmd = app.add_subcommand("gamma", "approximate root depth with certificate");
  with_manifest(gamma_cmd);
  gamma_cmd->add_option("--element", element);
  gamma_cmd->add_option("--depth", depth, "search depth")->required();
  gamma_cmd->add_option("--n", n, "root degree (default p)");
  gamma_cmd->add_option("--as-degree", as_degree);

  auto* norm_cmd = app.add_subcommand("normalize", "rank-p cover of a tame element");
  with_manifest(norm_cmd);
  norm_cmd->add_option("--element", element);

  std::string h_name, f_name;
  unsigned hb_n = 1;
  auto* hb_cmd = app.add_subcommand("hb", "Hilbert-Burch matrices for (X - h, alpha^n)^(p-1)");
  with_manifest(hb_cmd);
  hb_cmd->add_option("--root", h_name, "element h")->required();
  hb_cmd->add_option("--element", f_name, "element f")->required();
  hb_cmd->add_option("--n", hb_n);

  std::string names, units;
  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of the covers of several elements");
  with_manifest(tensor_cmd);
  tensor_cmd->add_option("--elements", names, "comma separated")->required();

  unsigned t = 0;
  auto* roberts_cmd = app.add_subcommand("roberts", "monomial algebra of t-th roots (p does not divide t)");
  with_manifest(roberts_cmd);
  roberts_cmd->add_option("--divisors", names, "comma separated");
  roberts_cmd->add_option("--units", units, "comma separated");
  roberts_cmd->add_option("--t", t)->required();

  std::string r_name, y_name;
  unsigned l = 0;
  auto* pram_cmd = app.add_subcommand("p-ramified", "first p-ramified case: g = r^p + pi^(lp(p-1)+tl) y");
  with_manifest(pram_cmd);
  pram_cmd->add_option("--r", r_name)->required();
  pram_cmd->add_option("--y", y_name)->required();
  pram_cmd->add_option("--t", t)->required();
  pram_cmd->add_option("--l", l)->required();

  unsigned extra = 0;
  auto* koh_cmd = app.add_subcommand("koh", "Koh's example end to end");
  koh_cmd->add_option("--extra-vars", extra);
  koh_cmd->add_option("--out", out);
  koh_cmd->add_flag("--json", json);

  long qf = 0;
  auto* quad_cmd = app.add_subcommand("quad", "p = 2 cross-check against Q(sqrt f)");
  quad_cmd->add_option("--f", qf)->required();
  quad_cmd->add_option("--out", out);
  quad_cmd->add_flag("--json", json);

  std::uint64_t seed = 1, count = 50;
  BatteryProfile prof;
  auto* bat_cmd = app.add_subcommand("battery", "randomized consistency battery");
  bat_cmd->add_option("--seed", seed);
  bat_cmd->add_option("--count", count);
  bat_cmd->add_option("--p", prof.p)->check(CLI::IsMember({2u, 3u}));
  bat_cmd->add_option("--max-vars", prof.max_vars)->check(CLI::Range(0u, 2u));
  bat_cmd->add_option("--threads", prof.threads)->check(CLI::Range(1u, 256u));
  bat_cmd->add_option("--out", out);
  bat_cmd->add_flag("--json", json);

  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate file");
  verify_cmd->add_option("--cert", cert_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*koh_cmd) return print_report(koh_scenario(extra), out, json);
    if (*quad_cmd) return print_report(quadratic_scenario(qf), out, json);
    if (*bat_cmd) return print_report(battery(seed, count, prof), out, json);

    if (*verify_cmd) {
      const VerifyResult r = verify_certificate(read_json(cert_path));
      for (const auto& m : r.messages) std::cout << m << "\n";
      std::cout << (r.ok ? "verified" : "verification FAILED") << "\n";
      return r.ok ? kOk : kFail;
    }

    const Manifest m = parse_manifest(read_json(manifest));
    GammaBounds bounds;
    if (as_degree >= 0) bounds.as_degree = as_degree;

    if (*classify_cmd) {
      const TowerPoly f = pick(m, element);
      const RamClass c = classify(f, bounds);
      std::cout << "f = " << f.str() << "\nverdict: " << to_string(c.verdict);
      if (c.reason != RamifiedReason::None) std::cout << " (" << to_string(c.reason) << ")";
      std::cout << "\nthreshold: " << c.threshold << "\nord: " << c.ord.str() << "\n";
      if (c.root) std::cout << "root: " << c.root->str() << "\n";
      if (c.cert)
        std::cout << "Gamma: " << to_string(c.cert->status) << " " << c.cert->level << "\nwitness: ("
                  << c.cert->num.str() << ") / (" << c.cert->den.str() << ")\n";
      write_json(out, classify_json(f, c));
      switch (c.verdict) {
        case Verdict::Tame:
        case Verdict::PthPower: return kOk;
        case Verdict::Ramified: return kFail;
        case Verdict::Unknown: return kUnknown;
      }
    }
    if (*gamma_cmd) {
      const TowerPoly f = pick(m, element);
      const GammaCert c = gamma(f, n ? n : m.p, depth, bounds);
      std::cout << "f = " << f.str() << "\nGamma: " << to_string(c.status) << " " << c.level << " (depth " << c.depth
                << ")\nwitness: (" << c.num.str() << ") / (" << c.den.str() << ")\n";
      for (const auto& s : c.branch_log) std::cout << "  " << s << "\n";
      write_json(out, gamma_cert_json(c));
      return c.status == GammaStatus::Unknown ? kUnknown : kOk;
    }
    if (*norm_cmd) {
      const KummerAlg a = normalize_degree_p(pick(m, element));
      const AlgebraReport r = verify_algebra(a);
      print_algebra(a, r);
      write_json(out, algebra_json(a));
      return r.ok() ? kOk : kFail;
    }
    if (*hb_cmd) {
      const HBPair hb = hb_matrices(hb_n, m.element(h_name), m.element(f_name));
      std::cout << "gamma = " << hb.gamma_poly.str() << "\n";
      for (std::size_t i = 0; i < hb.minors.size(); ++i) std::cout << "minor " << i + 1 << ": " << hb.minors[i].str() << "\n";
      std::cout << "minors " << hb.minors_ok << ", cofactors " << hb.cofactors_ok << ", determinant " << hb.det_ok
                << ", factorization " << hb.factorization_ok << "\n";
      Json j{{"schema", kSchema}, {"kind", "hb"}, {"ambient", ambient_json(hb.ambient)}, {"n", hb.n},
             {"gamma", hb.gamma_poly.str()}, {"minors_ok", hb.minors_ok}, {"cofactors_ok", hb.cofactors_ok},
             {"det_ok", hb.det_ok}, {"factorization_ok", hb.factorization_ok}, {"residual", hb.residual.str()}};
      write_json(out, j);
      return hb.minors_ok && hb.cofactors_ok && hb.det_ok && hb.factorization_ok ? kOk : kFail;
    }
    if (*tensor_cmd) {
      std::vector<KummerAlg> covers;
      for (const auto& name : split(names)) covers.push_back(normalize_degree_p(m.element(name), std::nullopt, "w_" + name));
      const KummerAlg a = tensor_compose(covers);
      const AlgebraReport r = verify_algebra(a);
      print_algebra(a, r);
      write_json(out, algebra_json(a));
      return r.ok() ? kOk : kFail;
    }
    if (*roberts_cmd) {
      std::vector<TowerPoly> d, u;
      for (const auto& name : split(names)) d.push_back(m.element(name));
      for (const auto& name : split(units)) u.push_back(m.element(name));
      const KummerAlg a = roberts_build(d, u, t);
      const AlgebraReport r = verify_algebra(a);
      print_algebra(a, r);
      write_json(out, algebra_json(a));
      return r.ok() ? kOk : kFail;
    }
    if (*pram_cmd) {
      const PRamifiedResult res = p_ramified_build(m.element(r_name), t, m.element(y_name), l);
      std::cout << "q = " << res.q << " (lp > q: " << res.lp_exceeds_q << ")\ng = " << res.g.str()
                << "\nresidual in A: " << res.residual.str() << "\nresidual in the zeta order is zero: "
                << res.zeta_order_residual_zero << "\nrank " << res.algebra.rank << " algebra verifies: "
                << res.algebra_report.ok() << "\nrank " << res.zeta_order.rank
                << " zeta order verifies: " << res.zeta_order_report.ok() << "\n";
      write_json(out, algebra_json(res.algebra));
      const bool ok = res.residual_zero && res.zeta_order_residual_zero && res.algebra_report.ok() &&
                      res.zeta_order_report.ok();
      return ok ? kOk : kFail;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::BadInput:
      case ErrorCode::ParseError:
      case ErrorCode::InvalidArgument:
      case ErrorCode::AmbientMismatch:
      case ErrorCode::BadParameters:
      case ErrorCode::HypothesisFailure:
      case ErrorCode::ModularExponent:
      case ErrorCode::CompositeModulus:
        return kUsage;
      default:
        return kFail;
    }
  }
  return kUsage;
}
