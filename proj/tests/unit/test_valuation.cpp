#include <doctest.h>

#include <random>

#include "ramlab/error.hpp"
#include "ramlab/residue.hpp"
#include "ramlab/valuation.hpp"

using namespace ramlab;

namespace {

GammaCert run(const AmbientPtr& A, const std::string& f, std::uint64_t depth, unsigned n = 0) {
  const TowerPoly g = parse_poly(A, f);
  const GammaCert c = gamma(g, n ? n : A->ring.p(), depth);
  CHECK(verify_gamma_cert(c));
  return c;
}

}  // namespace

TEST_CASE("frobenius roots over F_3") {
  const auto A = make_ambient(3, {"x", "y"});
  auto r = frobenius_root(residue_of(parse_poly(A, "x^9*y^6")));
  REQUIRE(r);
  CHECK(lift(*r, A) == parse_poly(A, "x^3*y^2"));
  CHECK_FALSE(frobenius_root(residue_of(parse_poly(A, "x"))));
  auto s = frobenius_root(residue_of(parse_poly(A, "x^3 + y^3")));
  REQUIRE(s);
  CHECK(lift(*s, A) == parse_poly(A, "x + y"));
}

TEST_CASE("Koh's f has Gamma at least 6 with h = x^3 y^2") {
  const auto A = make_ambient(3, {"x", "y"});
  const GammaCert c = run(A, "(x*y^4 + 27)*(x^4*y + 27)^2", 6);
  CHECK(c.status == GammaStatus::AtLeast);
  CHECK(c.level == 6);
  CHECK(c.num == parse_poly(A, "x^3*y^2"));
  CHECK(c.den == parse_poly(A, "1"));
}

TEST_CASE("Gamma of 3 is 2") {
  const auto A = make_ambient(3, {});
  const GammaCert c = run(A, "3", 3);
  CHECK(c.status == GammaStatus::Exact);
  CHECK(c.level == 2);
}

TEST_CASE("exact p-th powers reach any depth") {
  for (unsigned p : {2u, 3u, 5u}) {
    const auto A = make_ambient(p, {"x"});
    const GammaCert c = run(A, "(x+1)^" + std::to_string(p), 9);
    CHECK(c.status == GammaStatus::AtLeast);
    CHECK(c.level == 9);
  }
}

TEST_CASE("1 + u^3 x stops at the threshold") {
  // (1 + u d)^3 = 1 + u^3 (d^3 - d) mod u^4 and d^3 - d = x has no solution in F_3(x).
  const auto A = make_ambient(3, {"x"});
  const GammaCert c = run(A, "1 + u^3*x", 4);
  CHECK(c.status == GammaStatus::Exact);
  CHECK(c.level == 3);
  const GammaCert d = run(A, "1 + u^3*(x^3 - x)", 4);
  CHECK(d.status == GammaStatus::AtLeast);
  CHECK(d.level == 4);
}

TEST_CASE("quadratic values at p = 2") {
  const auto Z = make_ambient(2, {});
  CHECK(run(Z, "17", 4).status == GammaStatus::AtLeast);
  CHECK(run(Z, "5", 4).level == 2);
  CHECK(run(Z, "3", 4).level == 1);
  CHECK(run(Z, "2", 4).level == 1);
}

TEST_CASE("deeper levels use local denominators") {
  const auto A = make_ambient(3, {"x"});
  const GammaCert c = run(A, "1 + u^3*(x^3 - x)", 8);
  CHECK(c.status == GammaStatus::AtLeast);
  CHECK(c.level == 8);
  CHECK(is_local_unit(c.den));
}

TEST_CASE("n prime to p") {
  const auto A = make_ambient(3, {"x"});
  const GammaCert c = run(A, "x^2 + 2*x + 1 + 3*x", 6, 2);
  CHECK(c.status == GammaStatus::AtLeast);
  CHECK(run(A, "x", 4, 2).level == 0);
  CHECK(run(A, "3*x^2", 5, 2).level == 2);
  CHECK(run(A, "27", 9, 2).level == 6);
}

TEST_CASE("zero input is rejected") {
  const auto A = make_ambient(3, {"x"});
  CHECK_THROWS_AS(gamma(TowerPoly(A), 3, 3), Error);
}

TEST_CASE("oracle values") {
  const auto Z3 = make_ambient(3, {});
  CHECK(gamma_oracle(parse_poly(Z3, "3"), 3, 3, 0).level == 2);
  const auto A = make_ambient(3, {"x"});
  const OracleResult o = gamma_oracle(parse_poly(A, "1 + u^3*x"), 3, 4, 2);
  CHECK(o.level == 3);
  CHECK_FALSE(o.reached_depth);
  const OracleResult o2 = gamma_oracle(parse_poly(A, "1 + u^3*(x^3-x)"), 3, 4, 1);
  CHECK(o2.reached_depth);
  const auto Z2 = make_ambient(2, {});
  CHECK(gamma_oracle(parse_poly(Z2, "17"), 2, 4, 0).reached_depth);
  CHECK(gamma_oracle(parse_poly(Z2, "5"), 2, 4, 0).level == 2);
  const auto B = make_ambient(3, {"x", "y", "z"});
  CHECK_THROWS_AS(gamma_oracle(parse_poly(B, "x"), 3, 2, 1), Error);
}

TEST_CASE("engine agrees with the oracle on small instances") {
  const std::vector<std::string> fs{"x^3 + u^3*x", "1 + u*x", "x^2 + u^2", "(x+1)^3 + u^2*x", "2 + u^3*x^3",
                                    "x^3 - u^3*x + u^3", "1 + 9*x"};
  const auto A = make_ambient(3, {"x"});
  for (const auto& s : fs) {
    const TowerPoly f = parse_poly(A, s);
    const GammaCert c = gamma(f, 3, 4);
    CHECK_MESSAGE(gamma_oracle(f, 3, 4, 2).level == c.level, s);
  }
}

TEST_CASE("Gamma is invariant under multiplication by p-th powers of local units") {
  const auto A = make_ambient(3, {"x", "y"});
  const std::vector<std::string> fs{"x*y^4 + 27", "1 + u^3*x", "3", "x^3 + u^3*y", "1 + u^3*(x^3 - x)"};
  const std::vector<std::string> vs{"1 + x", "2 + x*y", "e + u*y^2"};
  for (const auto& s : fs)
    for (const auto& vv : vs) {
      const TowerPoly f = parse_poly(A, s), v = parse_poly(A, vv);
      const GammaCert a = gamma(f, 3, 5), b = gamma(v.pow(3) * f, 3, 5);
      CHECK(a.level == b.level);
      CHECK(a.status == b.status);
      CHECK(verify_gamma_cert(b));
    }
}

TEST_CASE("Gamma is monotone in the depth") {
  const auto A = make_ambient(3, {"x"});
  for (const auto& s : {"1 + u^3*(x^3 - x)", "1 + u^3*x", "x + 3", "(x+u)^3 + u^5"}) {
    const TowerPoly f = parse_poly(A, s);
    std::uint64_t prev = 0;
    for (std::uint64_t d = 1; d <= 7; ++d) {
      const auto l = gamma(f, 3, d).level;
      CHECK(l >= prev);
      CHECK(l <= d);
      prev = l;
    }
  }
}

TEST_CASE("Artin-Schreier bound below the complete bound reports Unknown") {
  const auto A = make_ambient(3, {"x"});
  // The correction needed at the threshold is d = x^2 (d^3 - d = x^6 - x^2).
  const TowerPoly f = parse_poly(A, "1 + u^3*(x^6 - x^2)");
  const GammaCert full = gamma(f, 3, 4);
  CHECK(full.status == GammaStatus::AtLeast);
  GammaBounds b;
  b.as_degree = 1;
  const GammaCert cut = gamma(f, 3, 4, b);
  CHECK(cut.status == GammaStatus::Unknown);
  CHECK(cut.bound_hit == 1);
  CHECK(verify_gamma_cert(cut));
}

TEST_CASE("certificates survive tampering checks") {
  const auto A = make_ambient(3, {"x"});
  GammaCert c = gamma(parse_poly(A, "1 + u^3*(x^3 - x)"), 3, 4);
  CHECK(verify_gamma_cert(c));
  c.b = c.b + parse_poly(A, "1");
  CHECK_FALSE(verify_gamma_cert(c));
}
