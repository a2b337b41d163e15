#include <doctest.h>

#include "ramlab/error.hpp"
#include "ramlab/scenarios.hpp"
#include "ramlab/serialize.hpp"

using namespace ramlab;

TEST_CASE("Koh scenario passes and is independent of inert variables") {
  const ScenarioReport r0 = koh_scenario(0);
  for (const auto& c : r0.checks) CHECK_MESSAGE(c.pass, c.name << " " << c.detail);
  const ScenarioReport r1 = koh_scenario(1);
  CHECK(r1.pass());
  REQUIRE(r0.certs.size() == r1.certs.size());
  for (std::size_t i = 0; i < r0.certs.size(); ++i) {
    const auto& a = r0.certs[i].second;
    const auto& b = r1.certs[i].second;
    CHECK(a.level == b.level);
    CHECK(a.num.str() == b.num.str());
    CHECK(a.den.str() == b.den.str());
    CHECK(a.b.str() == b.b.str());
  }
  // Deterministic serialization.
  CHECK(report_json(koh_scenario(0)).dump() == report_json(r0).dump());
}

TEST_CASE("quadratic scenario") {
  CHECK(quadratic_scenario(17).pass());
  CHECK(quadratic_scenario(5).pass());
  const ScenarioReport r3 = quadratic_scenario(3);
  CHECK(r3.pass());
  CHECK(r3.algebras.empty());
  CHECK_THROWS_AS(quadratic_scenario(12), Error);
  CHECK_THROWS_AS(quadratic_scenario(45), Error);
  CHECK_THROWS_AS(quadratic_scenario(2000001), Error);
}

TEST_CASE("battery") {
  CHECK(battery(1, 0).pass());
  BatteryProfile p3;
  const ScenarioReport r = battery(7, 12, p3);
  CHECK(r.pass());
  CHECK(r.counters.at("instances") == 12);
  // Same results regardless of threads.
  BatteryProfile p3t = p3;
  p3t.threads = 3;
  CHECK(report_json(battery(7, 12, p3t)).dump() == report_json(r).dump());
  BatteryProfile p2;
  p2.p = 2;
  CHECK(battery(3, 12, p2).pass());
  CHECK(battery_instance(5, 4, p3) == battery_instance(5, 4, p3));
}

TEST_CASE("manifests round trip") {
  const Json j = Json::parse(R"J({"schema":1,"p":3,"uniformizer_root":1,
    "ambient":{"variables":["x","y"],"tower":[3,3]},
    "elements":{"a":"x*y^4+27","h":"x^(1/3)*y^(4/3)"},"params":{"depth":6}})J");
  const Manifest m = parse_manifest(j);
  CHECK(m.element("a") == parse_poly(m.ambient(), "x*y^4 + 27"));
  const Manifest m2 = parse_manifest(to_json(m));
  CHECK(to_json(m2).dump() == to_json(m).dump());
  CHECK_THROWS_AS(m.element("zz"), Error);
  CHECK_THROWS_AS(parse_manifest(Json::parse(R"({"schema":2,"p":3})")), Error);
  CHECK_THROWS_AS(parse_manifest(Json::parse(R"({"schema":1,"p":3,"elements":{"f":"x +"}})")), Error);
}

TEST_CASE("certificates verify and tampering is caught") {
  const auto A = make_ambient(3, {"x"});
  for (const auto* s : {"3", "1 + u^3*x", "1 + u^3*(x^3 - x)", "x^2 + u*x", "x", "3*x + 9"}) {
    const TowerPoly f = parse_poly(A, s);
    const GammaCert c = gamma(f, 3, 4);
    CHECK_MESSAGE(verify_certificate(gamma_cert_json(c)).ok, s);
    CHECK_MESSAGE(verify_certificate(classify_json(f, classify(f))).ok, s);
    const GammaCert back = gamma_cert_from_json(gamma_cert_json(c));
    CHECK(back.num == c.num);
    CHECK(back.level == c.level);
  }
  // An exact level that could be improved is rejected.
  GammaCert weak = gamma(parse_poly(A, "1 + u^3*(x^3 - x)"), 3, 3);
  weak.status = GammaStatus::Exact;
  weak.num = parse_poly(A, "1");
  weak.den = parse_poly(A, "1");
  weak.b = parse_poly(A, "x^3 - x");
  CHECK(verify_gamma_cert(weak));
  const Json j = gamma_cert_json(weak);
  CHECK_FALSE(verify_certificate(j).ok);
  // A false classify verdict.
  Json k = classify_json(parse_poly(A, "1 + u^2*x"), classify(parse_poly(A, "1 + u^2*x")));
  k["verdict"] = "tame";
  CHECK_FALSE(verify_certificate(k).ok);

  const auto Z = make_ambient(2, {});
  const KummerAlg K = normalize_degree_p(parse_poly(Z, "17"));
  Json alg = algebra_json(K);
  CHECK(verify_certificate(alg).ok);
  const KummerAlg back = algebra_from_json(alg);
  CHECK(back.table == K.table);
  alg["table"][3][3] = "5";
  CHECK_FALSE(verify_certificate(alg).ok);
  CHECK_FALSE(verify_certificate(Json::parse(R"({"schema":1,"kind":"nope"})")).ok);
}

TEST_CASE("scenario reports re-verify from their JSON") {
  const Json j = Json::parse(report_json(koh_scenario(0)).dump());
  CHECK(verify_certificate(j).ok);
}
