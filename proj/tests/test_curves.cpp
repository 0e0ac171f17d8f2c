#include <cmath>
#include <random>

#include "complexes.hpp"
#include "doctest.h"
#include "tdz/contact.hpp"
#include "tdz/curves.hpp"

using namespace tdz;

namespace {

Rat q(long p, long r = 1) { return make_rat(p, r); }

std::vector<std::pair<std::int64_t, Rat>> mono(std::initializer_list<long> exps) {
  std::vector<std::pair<std::int64_t, Rat>> v;
  for (long e : exps) v.push_back({e, Rat(1)});
  return v;
}

std::vector<std::pair<std::int64_t, std::int64_t>> nnu(const CurveGraph& g) {
  std::vector<std::pair<std::int64_t, std::int64_t>> v;
  for (const auto& x : g.vertices) v.push_back({x.N, x.nu});
  return v;
}

// Ramanujan sums by the closed form, as an independent check.
Int ramanujan_closed(std::int64_t k, std::int64_t d) {
  const std::int64_t g = std::gcd(d, k);
  return Int(moebius(k / g)) * euler_phi(k) / euler_phi(k / g);
}

}  // namespace

TEST_CASE("parameterizations from Newton pairs") {
  auto a = param_from_newton_pairs({{3, 2}});
  CHECK(a.x == mono({2}));
  CHECK(a.y == mono({3}));
  auto b = param_from_newton_pairs({{3, 2}, {1, 2}});
  CHECK(b.x == mono({4}));
  CHECK(b.y == mono({6, 7}));
  auto c = param_from_newton_pairs({{3, 2}, {1, 2}, {1, 2}});
  CHECK(c.x == mono({8}));
  CHECK(c.y == mono({12, 14, 15}));
  for (int k = 1; k <= 3; ++k) {
    NewtonPairs p{{3, 2}};
    for (int j = 1; j < k; ++j) p.push_back({1, 2});
    auto f = fk_family(k);
    auto g = param_from_newton_pairs(p);
    CHECK(f.x == g.x);
    CHECK(f.y == g.y);
  }
  CHECK(parse_newton_pairs("3/2,1/2") == NewtonPairs{{3, 2}, {1, 2}});
  CHECK_THROWS_AS(parse_newton_pairs("4/2"), ValidationError);
  CHECK_THROWS_AS(parse_newton_pairs("3/1"), ValidationError);
  CHECK_THROWS_AS(parse_newton_pairs("3-2"), ValidationError);
}

TEST_CASE("resolution of the cusp") {
  auto g = resolve_branches({fk_family(1)});
  CHECK(nnu(g) == std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {3, 3}, {6, 5}, {1, 1}});
  CHECK(g.edges == std::map<std::pair<int, int>, int>{{{0, 2}, 1}, {{1, 2}, 1}, {{2, 3}, 1}});
  CHECK(g.vertices[2].rupture);
  CHECK(g.vertices[3].strict);
  CHECK(g.branch_pairs == NewtonPairs{{3, 2}});
  auto c = complex_from_graph(g);
  CHECK(c.strata == fixture::cusp().strata);
  CHECK(verify_graph(g).ok);
}

TEST_CASE("resolution of f2 reproduces the tabulated graph") {
  auto g = resolve_branches({fk_family(2)});
  CHECK(nnu(g) == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 2}, {6, 3}, {12, 5}, {13, 6}, {26, 11}, {1, 1}});
  CHECK(complex_from_graph(g).strata == fixture::f2().strata);
  auto rep = verify_graph(g);
  CHECK(rep.ok);
  CHECK(rep.edge_gcd == std::map<std::pair<int, int>, std::int64_t>{
                            {{0, 2}, 4}, {{1, 2}, 6}, {{2, 4}, 2}, {{3, 4}, 13}, {{4, 5}, 1}});
  CHECK(g.vertices[1].group == "V_1");
  CHECK(g.vertices[0].group == "V_1'");
  CHECK(g.vertices[3].group == "V_2");
  CHECK(g.vertices[4].group == "R_2");
}

TEST_CASE("the f_k family matches the closed-form table") {
  for (int k = 1; k <= 5; ++k) {
    auto g = resolve_branches({fk_family(k)});
    REQUIRE(g.vertices.size() == static_cast<std::size_t>(2 * k + 2));
    const auto& v = g.vertices;
    CHECK(v[0].N == (std::int64_t{1} << k));
    CHECK(v[1].N == 3 * (std::int64_t{1} << (k - 1)));
    // E_{2l+1} is the rupture divisor over the vertical E_{2l}
    for (int l = 1; l <= k; ++l) {
      CHECK(v[2 * l].N == 2 * v[2 * l - 1].N);
      CHECK(v[2 * l].nu == 2 * v[2 * l - 1].nu - 1);
      CHECK(v[2 * l].rupture);
      CHECK(g.valency(2 * l) == 3);
      CHECK(stats(complex_from_graph(g), Stratum{2 * l}).alpha ==
            make_rat(v[2 * l].nu, v[2 * l].N));
    }
    for (int l = 2; l <= k; ++l) {
      CHECK(g.edges.count({2 * l - 1, 2 * l}));
    }
    CHECK(verify_graph(g).ok);
    // tabulated closed forms, l = 0..k
    auto f = [](int l) -> Rat { return (5 * Rat(std::pow(2.0, 2 * l - 1)) - 1) / 3; };
    for (int l = 0; l <= k; ++l) {
      CHECK(Rat(v[2 * l].N) == Rat(std::int64_t{1} << (k - l + 1)) * f(l));
      CHECK(v[2 * l].nu == 3 * (std::int64_t{1} << l) - 1);
      if (l >= 1) {
        CHECK(Rat(v[2 * l - 1].N) == Rat(std::int64_t{1} << (k - l)) * f(l));
        CHECK(v[2 * l - 1].nu == 3 * (std::int64_t{1} << (l - 1)));
      }
    }
    CHECK(v.back().N == 1);
  }
}

TEST_CASE("remarkable numbers of the f_k family") {
  const std::vector<std::set<Rat>> expected{
      {q(5, 6)},
      {q(5, 12), q(11, 26)},
      {q(5, 24), q(11, 52), q(23, 106)},
      {q(5, 48), q(11, 104), q(23, 212), q(47, 426)},
  };
  for (int k = 1; k <= 4; ++k) {
    auto c = complex_from_graph(resolve_branches({fk_family(k)}));
    CHECK(remarkable(c) == expected[k - 1]);
    CHECK(remarkable_via_dlct(c) == expected[k - 1]);
  }
}

TEST_CASE("d-lct trichotomy of f3") {
  auto c = complex_from_graph(resolve_branches({fk_family(3)}));
  for (std::int64_t d = 1; d <= 64; ++d) {
    const Rat want = d % 2 ? q(23, 106) : d % 4 == 2 ? q(11, 52) : q(5, 24);
    CHECK(d_lct(c, d) == want);
  }
  CHECK(pole_report(c) == PoleReport{{q(-5, 24), 1}, {q(-11, 52), 1}, {q(-23, 106), 1}});
}

TEST_CASE("monodromy characteristic polynomials") {
  auto cusp = acampo_charpoly(resolve_branches({fk_family(1)}));
  CHECK(cusp == IntPoly{1, -1, 1});
  auto f3 = acampo_charpoly(resolve_branches({fk_family(3)}));
  CHECK(f3.size() == 85);
  CHECK(cyclotomic_factors(f3) == std::map<std::int64_t, int>{{24, 1}, {52, 1}, {106, 1}});
  auto a4 = acampo_charpoly(resolve_branches({param_from_newton_pairs({{5, 2}})}));
  CHECK(a4 == cyclotomic(10));
  // degree equals the Milnor number computed from the graph
  for (int k = 1; k <= 4; ++k) {
    auto g = resolve_branches({fk_family(k)});
    std::int64_t deg = 1;
    for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i)
      if (!g.vertices[i].strict) deg += g.vertices[i].N * (g.valency(i) - 2);
    auto p = acampo_charpoly(g);
    CHECK(static_cast<std::int64_t>(p.size()) - 1 == deg);
    CHECK(p[0] == 1);
    CHECK_NOTHROW(cyclotomic_factors(p));
  }
}

TEST_CASE("Ramanujan sums") {
  for (std::int64_t d = 0; d <= 10; ++d) CHECK(ramanujan(1, d) == 1);
  CHECK(ramanujan(4, 2) == -2);
  for (std::int64_t k = 1; k <= 30; ++k)
    for (std::int64_t d = 0; d <= 40; ++d) CHECK(ramanujan(k, d) == ramanujan_closed(k, d));
  for (std::int64_t d = 1; d <= 48; ++d) {
    CHECK(ramanujan(106, d) != 0);
    CHECK((ramanujan(52, d) != 0) == (d % 2 == 0));
    CHECK((ramanujan(24, d) != 0) == (d % 4 == 0));
  }
}

TEST_CASE("smooth and multi-branch inputs") {
  BranchParam line{mono({1}), {}};
  auto g = resolve_branches({line});
  REQUIRE(g.vertices.size() == 1);
  CHECK(g.vertices[0].strict);
  CHECK(g.notes.size() == 1);

  BranchParam other{{}, mono({1})};
  auto xy = resolve_branches({line, other});
  CHECK(complex_from_graph(xy).strata == fixture::xy().strata);

  // y^2 = x^3 parameterized twice is a single germ
  BranchParam minus{mono({2}), {{3, Rat(-1)}}};
  auto dup = resolve_branches({fk_family(1), minus});
  CHECK(nnu(dup) == nnu(resolve_branches({fk_family(1)})));
  CHECK_FALSE(dup.notes.empty());

  // two tangent smooth branches y = x^2 and y = -x^2: A3
  BranchParam p1{mono({1}), mono({2})}, p2{mono({1}), {{2, Rat(-1)}}};
  auto a3 = resolve_branches({p1, p2});
  for (const auto& v : a3.vertices)
    if (v.strict) CHECK(v.N == 1);
  auto c = complex_from_graph(a3);
  CHECK(validate(c).empty());
  CHECK(remarkable(c) == remarkable_via_dlct(c));
  CHECK(lct(c) == q(3, 4));

  CHECK_THROWS_AS(resolve_branches({BranchParam{mono({2}), mono({4})}}), ValidationError);
}

TEST_CASE("random Newton pairs: engine and closed forms agree") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> ng(1, 3), kk(1, 7), rr(2, 3);
  int tried = 0;
  while (tried < 40) {
    NewtonPairs p;
    const int g = ng(rng);
    for (int j = 0; j < g; ++j) {
      std::int64_t k = kk(rng), r = rr(rng);
      if (p.empty()) k += r;
      if (std::gcd(k, r) != 1) continue;
      p.push_back({k, r});
    }
    if (p.empty()) continue;
    ++tried;
    auto graph = resolve_branches({param_from_newton_pairs(p)});
    REQUIRE_MESSAGE(graph.branch_pairs == p, to_string(p));
    auto rep = verify_graph(graph);
    CHECK_MESSAGE(rep.ok, to_string(p) << ": " << (rep.failures.empty() ? "" : rep.failures.front()));
    auto c = complex_from_graph(graph);
    CHECK(remarkable_via_dlct(c) == remarkable(c));
    if (period(c) <= 120) CHECK(pole_report(c) == pole_report_series(c));
    // monodromy is a product of cyclotomic polynomials
    CHECK_NOTHROW(cyclotomic_factors(acampo_charpoly(graph)));
  }
}

TEST_CASE("swapped first pair is accepted") {
  auto g = resolve_branches({BranchParam{mono({3}), mono({2})}});
  CHECK(g.branch_pairs == NewtonPairs{{3, 2}});
  CHECK_FALSE(g.notes.empty());
}

TEST_CASE("blow-ups of a curve graph keep every invariant") {
  auto c = complex_from_graph(resolve_branches({fk_family(2)}));
  auto b = blowup_point(blowup_point(c, {2, 4}), {0});
  CHECK(remarkable(b) == remarkable(c));
  CHECK(pole_report(b) == pole_report(c));
  for (std::int64_t d = 1; d <= 30; ++d) CHECK(d_lct(b, d) == d_lct(c, d));
}

TEST_CASE("dot export") {
  auto dot = resolve_branches({fk_family(2)}).to_dot();
  CHECK(dot.find("E3 -- E5 [label=\"2\"]") != std::string::npos);
  CHECK(dot.find("E4 N=13") != std::string::npos);
}
