#include "doctest.h"
#include "tdz/exact.hpp"

using namespace tdz;

TEST_CASE("rationals print in lowest terms and parse back") {
  CHECK(to_string(make_rat(10, -4)) == "-5/2");
  CHECK(to_string(make_rat(6, 3)) == "2");
  CHECK(parse_rat("-5/2") == make_rat(-5, 2));
  CHECK(parse_rat("7") == Rat(7));
  CHECK_THROWS_AS(parse_rat("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rat("a/b"), ValidationError);
  for (int p = -7; p <= 7; ++p)
    for (int q = 1; q <= 5; ++q) CHECK(parse_rat(to_string(make_rat(p, q))) == make_rat(p, q));
}

TEST_CASE("laurent polynomial arithmetic") {
  auto x = [](long d, long c = 1) { return LaurentPoly::monomial('x', d, c); };
  LaurentPoly a = x(1) + x(-2, 3);
  LaurentPoly b = x(2) - x(1);
  LaurentPoly p = a * b;
  CHECK(p == x(3) - x(2) + x(0, 3) - x(-1, 3));
  CHECK(p.max_degree() == 3);
  CHECK(p.min_degree() == -1);
  CHECK((a - a).is_zero());
  CHECK(laurent_top(a) == x(1));
  CHECK(a.shifted(2) == x(3) + x(0, 3));
  CHECK(a.dilated(2) == x(2) + x(-4, 3));
  CHECK(p.str() == "x^3 - x^2 + 3 - 3*x^(-1)");
}

TEST_CASE("laurent polynomials refuse to mix variables") {
  LaurentPoly a = LaurentPoly::monomial('L', 1);
  LaurentPoly b = LaurentPoly::monomial('w', 1);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("number theory helpers") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
  CHECK(euler_phi(24) == 8);
  CHECK(euler_phi(52) == 24);
  CHECK(euler_phi(106) == 52);
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(lcm64(8, 12) == 24);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPoly{-1, 1});
  CHECK(cyclotomic(6) == IntPoly{1, -1, 1});
  CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
  // product over divisors recovers x^n - 1
  for (std::int64_t n : {12, 24, 30, 52}) {
    IntPoly prod{1};
    for (auto d : divisors(n)) prod = poly_mul(prod, cyclotomic(d));
    IntPoly target(n + 1);
    target[0] = -1;
    target[n] = 1;
    CHECK(prod == target);
    CHECK(static_cast<std::int64_t>(cyclotomic(n).size()) - 1 == euler_phi(n));
  }
}

TEST_CASE("exact polynomial division") {
  IntPoly a = poly_mul(IntPoly{1, 2, 3}, IntPoly{-1, 0, 1});
  CHECK(poly_divexact(a, IntPoly{-1, 0, 1}) == IntPoly{1, 2, 3});
  CHECK_THROWS_AS(poly_divexact(a, IntPoly{5, 1}), std::domain_error);
}

TEST_CASE("cyclotomic elements reduce modulo the cyclotomic polynomial") {
  const std::int64_t M = 6;
  CycloElem z = CycloElem::root(M, 1, 1, 0);
  CycloElem p = CycloElem::lift(M, 1, LaurentPoly::constant('L', 1));
  CycloElem acc = p;
  for (int i = 0; i < 6; ++i) acc = acc * z;
  CHECK(acc == p);  // zeta^6 = 1
  // zeta^2 - zeta + 1 = 0
  CycloElem s = z * z;
  s += CycloElem::root(M, 1, 1, 0) * CycloElem::lift(M, 1, LaurentPoly::constant('L', -1));
  s += p;
  CHECK(s.is_zero());
}

TEST_CASE("root multiplicities by synthetic division") {
  auto L = [](long d, long c = 1) { return LaurentPoly::monomial('L', d, c); };
  // (T - L)^2 (T + L) = T^3 - L T^2 - L^2 T + L^3
  std::vector<LaurentPoly> q{L(3), -L(2), -L(1), L(0)};
  CHECK(cyclo_root_multiplicity(q, 1, 1, 0) == 2);
  CHECK(cyclo_root_multiplicity(q, 1, 2, 1) == 0);  // T = zeta_2 L^{1/2}
  // T^2 - L: simple roots at +- L^{1/2}
  std::vector<LaurentPoly> r{-L(1), LaurentPoly('L'), L(0)};
  CHECK(cyclo_root_multiplicity(r, 1, 2, 0) == 1);
  CHECK(cyclo_root_multiplicity(r, 1, 2, 1) == 1);
  CHECK(cyclo_root_multiplicity(r, 2, 2, 0) == 0);
  // (T^3 - L)^2 at the three cube roots
  std::vector<LaurentPoly> s{L(2), LaurentPoly('L'), LaurentPoly('L'), L(1, -2),
                             LaurentPoly('L'), LaurentPoly('L'), L(0)};
  for (int j = 0; j < 3; ++j) CHECK(cyclo_root_multiplicity(s, 1, 3, j) == 2);
}
