#include <doctest.h>

#include "ramlab/error.hpp"
#include "ramlab/ramification.hpp"

using namespace ramlab;

TEST_CASE("classify: p divides f") {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    const auto A = make_ambient(p, {"x", "y"});
    const RamClass c = classify(TowerPoly::integer(A, p));
    CHECK(c.verdict == Verdict::Ramified);
    CHECK(c.reason == RamifiedReason::DividesP);
    CHECK(c.ord.at_least(1));
  }
}

TEST_CASE("classify: Koh's a over S[eps] and over T") {
  const auto S = make_ambient(3, {"x", "y"});
  const RamClass c = classify(parse_poly(S, "x*y^4 + 27"));
  CHECK(c.verdict == Verdict::Ramified);
  CHECK(c.reason == RamifiedReason::GammaBelowThreshold);
  REQUIRE(c.cert);
  CHECK(c.cert->level == 0);

  const auto T = make_ambient(3, {"x", "y"}, {3, 3});
  const RamClass t = classify(parse_poly(T, "x*y^4 + 27"));
  CHECK(t.verdict == Verdict::Tame);
  CHECK(t.threshold == 3);
  REQUIRE(t.cert);
  CHECK(t.cert->level >= 3);
  CHECK(t.ord == Order::of(0));
  CHECK(gamma(parse_poly(T, "x*y^4 + 27"), 3, 6).level == 6);
}

TEST_CASE("classify: p-th powers and zero") {
  const auto A = make_ambient(3, {"x", "y"});
  const RamClass c = classify(parse_poly(A, "(x + u)^3"));
  CHECK(c.verdict == Verdict::PthPower);
  REQUIRE(c.root);
  CHECK(c.root->pow(3) == parse_poly(A, "(x + u)^3"));
  CHECK_THROWS_AS(classify(TowerPoly(A)), Error);
}

TEST_CASE("classify never needs the Artin-Schreier step") {
  // Levels below the threshold use Frobenius roots only, so a tiny correction bound is harmless.
  const auto A = make_ambient(3, {"x"});
  GammaBounds b;
  b.as_degree = 0;
  for (const auto* s : {"1 + u^3*(x^6 - x^2)", "1 + u^3*x", "1 + u^2*x", "x + 3"}) {
    const TowerPoly f = parse_poly(A, s);
    CHECK(classify(f, b).verdict == classify(f).verdict);
    CHECK(classify(f, b).verdict != Verdict::Unknown);
  }
  CHECK(classify(parse_poly(A, "1 + u^2*x")).verdict == Verdict::Ramified);
}

TEST_CASE("classify is invariant under v^p and f^j") {
  const auto A = make_ambient(3, {"x", "y"});
  for (const auto* s : {"x*y^4 + 27", "1 + u^3*x", "1 + u^3*(x^3 - x)", "x + 9", "3*x + 1", "(x + y)^3 + u^2"}) {
    const TowerPoly f = parse_poly(A, s);
    const Verdict v = classify(f).verdict;
    CHECK(classify(parse_poly(A, "(1 + x*y)^3") * f).verdict == v);
    CHECK(classify(f.pow(2)).verdict == v);
  }
}

TEST_CASE("C' at p = 3 and p = 5") {
  const auto A = make_ambient(3, {"h"});
  const CPrimePair c3 = cprime(parse_poly(A, "h"));
  CHECK(c3.cp == parse_poly(c3.ambient, "X*h"));
  CHECK(c3.sum_identity);
  CHECK(c3.congruence);
  CHECK(c3.cprime_eps_identity);

  const auto B = make_ambient(5, {"h"});
  const CPrimePair c5 = cprime(parse_poly(B, "h"));
  CHECK(c5.cp == parse_poly(c5.ambient, "X*h*(X^2 - X*h + h^2)"));
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    const auto C = make_ambient(p, {"y"});
    const CPrimePair c = cprime(parse_poly(C, "y^2 + 1"));
    CHECK(c.sum_identity);
    CHECK(c.congruence);
    CHECK(c.cprime_eps_identity);
  }
}

TEST_CASE("Eisenstein checks on shifted cyclotomic polynomials") {
  const EisensteinReport r31 = eisenstein_shift_check(3, 1);
  CHECK(r31.coefficients == std::vector<Int>{3, 3, 1});
  const EisensteinReport r22 = eisenstein_shift_check(2, 2);
  CHECK(r22.coefficients == std::vector<Int>{2, 2, 1});
  for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}, {7, 1}})
    CHECK(eisenstein_shift_check(p, r).eisenstein());
  CHECK(eisenstein_shift_check(3, 2).coefficients.size() == 7);
}

TEST_CASE("squarefree and coprime checks") {
  const auto A = make_ambient(3, {"x", "y"});
  CHECK(squarefree_coprime_check({parse_poly(A, "x"), parse_poly(A, "y")}).pass);
  const SquarefreeReport r = squarefree_coprime_check({parse_poly(A, "x"), parse_poly(A, "x*y")});
  CHECK_FALSE(r.pass);
  CHECK(r.certified);
  CHECK(squarefree_coprime_check({parse_poly(A, "x*y^4 + 27"), parse_poly(A, "x^4*y + 27")}).pass);
  CHECK_FALSE(squarefree_coprime_check({parse_poly(A, "(x + y + 1)^2*(x - 1)")}).pass);
  CHECK_FALSE(squarefree_coprime_check({parse_poly(A, "(x + 1)*(y + 2)"), parse_poly(A, "(x + 1)*(y - 2)")}).pass);
}

TEST_CASE("canonical reduction") {
  const auto A = make_ambient(3, {"x", "y"});
  const TowerPoly q1 = parse_poly(A, "x + 1"), q2 = parse_poly(A, "y + 2"), u = parse_poly(A, "e");
  const CanonicalResult c = canonical_reduce(Presentation{u, {{q1, 3}, {q2, 2}}}, 3);
  REQUIRE(c.divisors.size() == 1);
  CHECK(c.divisors[0] == q2);
  CHECK(c.exponents == std::vector<std::uint64_t>{2});
  CHECK(c.element == u * q2.pow(2));

  const TowerPoly a = parse_poly(A, "x*y^4 + 27"), b = parse_poly(A, "x^4*y + 27");
  const CanonicalResult k = canonical_reduce(Presentation{TowerPoly::integer(A, 1), {{a, 1}, {b, 2}}}, 3);
  CHECK(k.divisors.size() == 2);
  CHECK(k.element == a * b.pow(2));

  CHECK(canonical_reduce(Presentation{u, {}}, 3).divisors.empty());
  CHECK_THROWS_AS(canonical_reduce(Presentation{u, {{parse_poly(A, "x"), 1}, {parse_poly(A, "x*y"), 1}}}, 3), Error);
}
