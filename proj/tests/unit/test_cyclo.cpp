#include <doctest.h>

#include <random>

#include "ramlab/cyclo.hpp"
#include "ramlab/error.hpp"

using namespace ramlab;
using namespace ramlab::cyclo;

namespace {

CycElt eps_poly(const Ring& R, std::vector<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  v.resize(R.degree(), 0);
  return R.from_epsilon_basis(v);
}

CycElt random_elt(const Ring& R, std::mt19937_64& g) {
  CycElt a{std::vector<Int>(R.degree())};
  for (auto& c : a.coeffs) c = static_cast<long>(g() % 41) - 20;
  return a;
}

}  // namespace

TEST_CASE("modulus of W_3 is u^2 + 3u + 3") {
  const RingDesc d = cyclo_ring(3);
  CHECK(d.modulus == std::vector<Int>{3, 3, 1});
  CHECK(d.verified);
  // (eps - 1)^2 = -3 eps
  const Ring& R = d.ring;
  const CycElt u = R.uniformizer();
  CHECK(R.mul(u, u) == R.scale(R.epsilon(), -3));
  CHECK(R.mul(R.neg(R.pow(R.epsilon(), 2)), R.mul(u, u)) == R.from_int(3));
}

TEST_CASE("W_2 is Z with u = -2") {
  const RingDesc d = cyclo_ring(2);
  const Ring& R = d.ring;
  CHECK(R.degree() == 1);
  CHECK(R.uniformizer() == R.from_int(-2));
  CHECK(d.unit_w == R.from_int(-1));
}

TEST_CASE("Eisenstein modulus for p = 5, 7, 11") {
  for (unsigned p : {5u, 7u, 11u}) {
    const RingDesc d = cyclo_ring(p);
    CHECK(d.modulus.front() == p);
    CHECK(d.modulus.back() == 1);
    for (std::size_t i = 1; i + 1 < d.modulus.size(); ++i) CHECK(d.modulus[i] % p == 0);
    CHECK(d.ring.valuation(d.ring.from_int(p)) == Order::of(p - 1));
  }
}

TEST_CASE("composite modulus is rejected") {
  CHECK_THROWS_AS(cyclo_ring(9), Error);
  try {
    Ring R(6);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositeModulus);
  }
}

TEST_CASE("valuations in W_3") {
  const Ring R(3);
  CHECK(R.valuation(R.from_int(3)) == Order::of(2));
  CHECK(R.valuation(R.from_int(27)) == Order::of(6));
  CHECK(R.valuation(R.epsilon()) == Order::of(0));
  CHECK(R.valuation(R.zero()).infinite);
}

TEST_CASE("local inverses") {
  const Ring R(3);
  auto v = R.local_inverse(R.from_int(2), 2);
  REQUIRE(v);
  CHECK(R.valuation(R.sub(R.mul(R.from_int(2), *v), R.one())).at_least(2));
  auto e = R.local_inverse(R.epsilon(), 10);
  REQUIRE(e);
  CHECK(R.valuation(R.sub(R.mul(R.epsilon(), *e), R.one())).at_least(10));
  CHECK_FALSE(R.local_inverse(R.uniformizer(), 3));
  std::mt19937_64 g(7);
  for (int i = 0; i < 50; ++i) {
    const CycElt a = random_elt(R, g);
    const auto inv = R.local_inverse(a, 7);
    CHECK(inv.has_value() == (R.residue(a) != 0));
    if (inv) CHECK(R.valuation(R.sub(R.mul(a, *inv), R.one())).at_least(7));
  }
}

TEST_CASE("ring axioms on random triples") {
  for (unsigned p : {2u, 3u, 5u}) {
    for (unsigned s : {1u, 2u}) {
      const Ring R(p, s);
      std::mt19937_64 g(p * 10 + s);
      for (int i = 0; i < 40; ++i) {
        const CycElt a = random_elt(R, g), b = random_elt(R, g), c = random_elt(R, g);
        CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
        CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
        CHECK(R.mul(a, b) == R.mul(b, a));
      }
    }
  }
}

TEST_CASE("pi^s = eps - 1 with root index s") {
  const Ring R(3, 3);
  CHECK(R.degree() == 6);
  CHECK(R.pi_pow(3) == R.sub(R.epsilon(), R.one()));
  CHECK(R.valuation(R.from_int(3)) == Order::of(6));
}

TEST_CASE("exact division and p-th roots") {
  const Ring R(3);
  // 3 / (eps - 1) = -eps^2 (eps - 1)
  auto q = R.divide(R.from_int(3), R.uniformizer());
  REQUIRE(q);
  CHECK(*q == R.neg(R.mul(R.pow(R.epsilon(), 2), R.uniformizer())));
  CHECK_FALSE(R.divide(R.one(), R.uniformizer()));
  auto r = R.pth_root(R.pow(R.add(R.epsilon(), R.from_int(2)), 3));
  REQUIRE(r);
  CHECK(R.pow(*r, 3) == R.pow(R.add(R.epsilon(), R.from_int(2)), 3));
  CHECK_FALSE(R.pth_root(R.from_int(2)));
}

TEST_CASE("epsilon basis round trip") {
  const Ring R(5);
  const CycElt a = eps_poly(R, {1, -2, 0, 7});
  CHECK(R.from_epsilon_basis(R.to_epsilon_basis(a)) == a);
}

TEST_CASE("c'_eps identity p = -(c'_eps)^{-1} (eps - 1)^{p-1}") {
  for (unsigned p : {3u, 5u, 7u}) {
    const RingDesc d = cyclo_ring(p);
    const Ring& R = d.ring;
    CHECK(R.mul(d.cprime_eps, d.cprime_eps_inv) == R.one());
    const CycElt rhs = R.neg(R.mul(d.cprime_eps_inv, R.pow(R.uniformizer(), p - 1)));
    CHECK(rhs == R.from_int(p));
  }
  // p = 3: c'_eps = eps.
  const RingDesc d3 = cyclo_ring(3);
  CHECK(d3.cprime_eps == d3.ring.epsilon());
}

TEST_CASE("digits and truncation") {
  const Ring R(3);
  const CycElt a = R.from_int(10);
  const auto dg = R.digits(a, 4);
  CycElt back = R.zero();
  for (std::size_t i = 0; i < dg.size(); ++i) back = R.add(back, R.scale(R.pi_pow(i), dg[i]));
  CHECK(R.valuation(R.sub(back, a)).at_least(4));
  CHECK(R.truncate(R.from_int(3), 2) == R.zero());
}
