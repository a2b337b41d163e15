#include <doctest.h>

#include "ramlab/algebra.hpp"
#include "ramlab/error.hpp"

using namespace ramlab;

TEST_CASE("quadratic cover of 17") {
  const auto Z = make_ambient(2, {});
  const KummerAlg K = normalize_degree_p(parse_poly(Z, "17"));
  REQUIRE(K.rank == 2);
  // u = -2, so z1 = (w - 1)/(-2) and z1^2 = 4 + z1.
  CHECK(K.table[1][1][0] == parse_poly(Z, "4"));
  CHECK(K.table[1][1][1] == parse_poly(Z, "1"));
  CHECK(discriminant(K) == parse_poly(Z, "17"));
  CHECK(verify_algebra(K).ok());
}

TEST_CASE("quadratic covers reproduce the classical maximal order") {
  const auto Z = make_ambient(2, {});
  for (long f : {5L, 13L, 17L, 21L, -3L, -7L, -15L, 33L, 41L, 57L, 105L}) {
    const TowerPoly F = TowerPoly::integer(Z, f);
    const KummerAlg K = normalize_degree_p(F);
    CHECK(discriminant(K) == F);
    CHECK(verify_algebra(K).ok());
  }
  CHECK_THROWS_AS(normalize_degree_p(parse_poly(Z, "3")), Error);
  CHECK_THROWS_AS(normalize_degree_p(parse_poly(Z, "9")), Error);
}

TEST_CASE("cover of Koh's a over T") {
  const auto T = make_ambient(3, {"x", "y"}, {3, 3});
  const KummerAlg K = normalize_degree_p(parse_poly(T, "x*y^4 + 27"), std::nullopt, "A");
  REQUIRE(K.rank == 3);
  const auto& F = K.frac_ambient;
  const TowerPoly d = parse_poly(F, "A - x^(1/3)*y^(4/3)");
  for (unsigned i = 0; i < 3; ++i) {
    CHECK(K.frac_num[i] == d.pow(i));
    CHECK(K.frac_den[i] == i);
  }
  const AlgebraReport r = verify_algebra(K);
  CHECK(r.ok());
  REQUIRE(r.fractions);
  CHECK(*r.fractions);
}

TEST_CASE("covers for p = 5 and root index 2") {
  const auto A = make_ambient(5, {"x"});
  const KummerAlg K = normalize_degree_p(parse_poly(A, "x^5 + 5^2*u^3*(x + 1)"));
  CHECK(K.rank == 5);
  CHECK(verify_algebra(K).ok());
  const auto B = make_ambient(3, {"x"}, {}, 2);
  const KummerAlg L = normalize_degree_p(parse_poly(B, "1 + pi^6*(x^3 - x)"));
  CHECK(verify_algebra(L).ok());
}

TEST_CASE("non-tame inputs are refused") {
  const auto A = make_ambient(3, {"x"});
  CHECK_THROWS_AS(normalize_degree_p(parse_poly(A, "(x + 1)^3")), Error);
  CHECK_THROWS_AS(normalize_degree_p(parse_poly(A, "1 + u^2*x")), Error);
  // Gamma(1 + u^3 x) = 3 meets the threshold exactly, so this one is tame.
  CHECK(verify_algebra(normalize_degree_p(parse_poly(A, "1 + u^3*x"))).ok());
  CHECK_THROWS_AS(normalize_degree_p(parse_poly(A, "x")), Error);
}

TEST_CASE("verify_algebra pinpoints a corrupted constant") {
  const auto Z = make_ambient(2, {});
  KummerAlg K = normalize_degree_p(parse_poly(Z, "17"));
  K.table[1][1][0] = parse_poly(Z, "5");
  const AlgebraReport r = verify_algebra(K);
  CHECK_FALSE(r.ok());
  REQUIRE(r.fractions);
  CHECK_FALSE(*r.fractions);

  const auto A = make_ambient(3, {"x"});
  KummerAlg M = normalize_degree_p(parse_poly(A, "1 + u^3*(x^3 - x)"));
  M.table[1][2][0] = M.table[1][2][0] + parse_poly(A, "1");
  M.table[2][1][0] = M.table[1][2][0];
  const AlgebraReport s = verify_algebra(M);
  CHECK_FALSE(s.associative);
  CHECK_FALSE(s.failures.empty());
}

TEST_CASE("Hilbert-Burch matrices") {
  for (unsigned p : {3u, 5u}) {
    const auto A = make_ambient(p, {"x"});
    const TowerPoly h = parse_poly(A, "x + 1");
    const TowerPoly f = h.pow(p) + pi_pow_poly(A, p - 1) * parse_poly(A, "x^2 + 2");
    const HBPair hb = hb_matrices(1, h, f);
    CHECK(hb.minors_ok);
    CHECK(hb.cofactors_ok);
    CHECK(hb.det_ok);
    CHECK(hb.factorization_ok);
    CHECK(hb.residual.is_zero());
  }
  // p = 3, n = 1: minors (X - h)^2, alpha (X - h), alpha^2 up to sign.
  const auto A = make_ambient(3, {"x"});
  const HBPair hb = hb_matrices(1, parse_poly(A, "x"), parse_poly(A, "x^3 + 3"));
  const TowerPoly xh = parse_poly(hb.ambient, "X - x"), al = parse_poly(hb.ambient, "u");
  const std::vector<TowerPoly> expect{al.pow(2), xh * al, xh.pow(2)};
  for (std::size_t i = 0; i < 3; ++i) CHECK((hb.minors[i] == expect[i] || hb.minors[i] == -expect[i]));

  // n (p - 1) must not exceed ord(p), and f - h^p must be divisible accordingly.
  CHECK_THROWS_AS(hb_matrices(2, parse_poly(A, "x"), parse_poly(A, "x^3 + 3")), Error);
  CHECK_THROWS_AS(hb_matrices(1, parse_poly(A, "x"), parse_poly(A, "x^3 + 1")), Error);
  // Root index 2 allows n = 2.
  const auto B = make_ambient(3, {"x"}, {}, 2);
  const HBPair hb2 = hb_matrices(2, parse_poly(B, "x"), parse_poly(B, "x^3 + pi^4*x"));
  CHECK(hb2.minors_ok);
  CHECK(hb2.cofactors_ok);
  CHECK(hb2.factorization_ok);
}

TEST_CASE("Hilbert-Burch residual on Koh's a") {
  const auto T = make_ambient(3, {"x", "y"}, {3, 3});
  const HBPair hb = hb_matrices(1, parse_poly(T, "x^(1/3)*y^(4/3)"), parse_poly(T, "x*y^4 + 27"));
  CHECK(hb.factorization_ok);
  CHECK(hb.minors_ok);
  CHECK(hb.cofactors_ok);
}

TEST_CASE("tensor products") {
  const auto T = make_ambient(3, {"x", "y"}, {3, 3});
  const KummerAlg a = normalize_degree_p(parse_poly(T, "x*y^4 + 27"), std::nullopt, "A");
  const KummerAlg b = normalize_degree_p(parse_poly(T, "x^4*y + 27"), std::nullopt, "B");
  const KummerAlg V = tensor_compose({a, b});
  CHECK(V.rank == 9);
  CHECK(verify_algebra(V).ok());
  // Tensoring with the trivial algebra changes nothing.
  const KummerAlg a1 = tensor_compose({a, trivial_algebra(T)});
  CHECK(a1.rank == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(a1.table[i][j] == a.table[i][j]);
  CHECK(verify_algebra(a1).ok());
  CHECK_THROWS_AS(tensor_compose({a, a}), Error);
  const auto S = make_ambient(3, {"x", "y"});
  CHECK_THROWS_AS(tensor_compose({a, trivial_algebra(S)}), Error);
}

TEST_CASE("monomial algebras of t-th roots") {
  const auto A = make_ambient(3, {"x", "y"});
  const KummerAlg r2 = roberts_build({parse_poly(A, "x")}, {}, 2);
  CHECK(r2.rank == 2);
  CHECK(r2.table[1][1][0] == parse_poly(A, "x"));
  CHECK(verify_algebra(r2).ok());
  const KummerAlg r9 = roberts_build({parse_poly(A, "x"), parse_poly(A, "y")}, {}, 4);
  CHECK(r9.rank == 16);
  CHECK(verify_algebra(r9).ok());
  const auto B = make_ambient(5, {"x"});
  const KummerAlg u3 = roberts_build({}, {parse_poly(B, "1 + x")}, 3);
  CHECK(u3.rank == 3);
  CHECK(u3.table[1][2][0] == parse_poly(B, "1 + x"));
  CHECK(verify_algebra(u3).ok());
  CHECK_THROWS_AS(roberts_build({parse_poly(A, "x")}, {}, 3), Error);
  CHECK_THROWS_AS(roberts_build({parse_poly(A, "x")}, {}, 6), Error);
}

TEST_CASE("first p-ramified case") {
  const auto A = make_ambient(3, {"x"}, {}, 3);
  for (auto [t, l, q] : std::vector<std::tuple<unsigned, unsigned, std::uint64_t>>{{1, 1, 2}, {2, 2, 5}}) {
    const PRamifiedResult r = p_ramified_build(parse_poly(A, "x"), t, parse_poly(A, "1 + x"), l);
    CHECK(r.q == q);
    CHECK(r.lp_exceeds_q);
    CHECK(r.residual_zero);
    CHECK(r.zeta_order_residual_zero);
    CHECK(r.algebra.rank == 9);
    CHECK(r.algebra_report.ok());
    CHECK(r.zeta_order.rank == 3);
    CHECK(r.zeta_order_report.ok());
  }
  CHECK_THROWS_AS(p_ramified_build(parse_poly(A, "x"), 1, parse_poly(A, "1"), 2), Error);
  CHECK_THROWS_AS(p_ramified_build(parse_poly(A, "x"), 1, parse_poly(A, "pi*x"), 1), Error);
  const auto S = make_ambient(3, {"x"});
  CHECK_THROWS_AS(p_ramified_build(parse_poly(S, "x"), 1, parse_poly(S, "1"), 1), Error);
  CHECK(p_ramified_rank_bound(3, 3) == 4374);
  CHECK(p_ramified_rank_bound(2, 1) == 2);
}

TEST_CASE("normal form for the first p-ramified case") {
  const auto A = make_ambient(3, {"x"}, {}, 3);
  for (unsigned t : {1u, 2u}) {
    const TowerPoly r = parse_poly(A, "x + 1"), y = parse_poly(A, "2 + x");
    const TowerPoly g = r.pow(3) + pi_pow_poly(A, 6 + t) * y;
    const auto nf = p_ramified_normalize(g);
    REQUIRE(nf);
    CHECK(nf->t == t);
    CHECK(nf->r.pow(3) + pi_pow_poly(A, 6 + t) * nf->y == g);
  }
  CHECK_FALSE(p_ramified_normalize(parse_poly(A, "x")));
}
