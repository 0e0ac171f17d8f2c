#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tdz/arrangements.hpp"

using namespace tdz;

namespace {

Rat q(long p, long r = 1) { return make_rat(p, r); }

Arrangement arr(int n, std::vector<std::vector<long>> forms) {
  Arrangement a;
  a.ambient_dim = n;
  for (const auto& f : forms) {
    std::vector<Rat> h;
    for (long x : f) h.push_back(Rat(x));
    a.hyperplanes.push_back(h);
  }
  return a;
}

// Central arrangements with small integer forms, reduced by rejection.
Arrangement random_arrangement(std::mt19937_64& rng, int n, int k) {
  std::uniform_int_distribution<long> coef(-2, 2);
  Arrangement a;
  a.ambient_dim = n;
  while (static_cast<int>(a.hyperplanes.size()) < k) {
    std::vector<Rat> h;
    for (int i = 0; i < n; ++i) h.push_back(Rat(coef(rng)));
    bool ok = std::any_of(h.begin(), h.end(), [](const Rat& x) { return x != 0; });
    for (const auto& g : a.hyperplanes) ok = ok && rank({g, h}) == 2;
    if (ok) a.hyperplanes.push_back(h);
  }
  return a;
}

Rat min_ratio(const std::vector<Edge>& edges) {
  Rat best(2);
  for (const auto& e : edges) best = std::min(best, make_rat(e.codim, static_cast<long>(e.hyperplanes.size())));
  return best;
}

}  // namespace

TEST_CASE("exact rank") {
  CHECK(rank({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 1);
  CHECK(rank({{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(1), Rat(2)}}) == 2);
  CHECK(rank({{q(1, 2), q(1, 3)}, {q(1, 3), q(1, 2)}}) == 2);
}

TEST_CASE("three concurrent lines") {
  auto a = arr(2, {{1, 0}, {0, 1}, {1, 1}});
  auto edges = intersection_lattice(a);
  REQUIRE(edges.size() == 4);
  CHECK(edges.back().id == "W1.2.3");
  CHECK(edges.back().codim == 2);
  auto c = build_complex(a);
  CHECK(validate(c).empty());
  CHECK(c.divisors.back().N == 3);
  CHECK(c.divisors.back().nu == 2);
  CHECK(c.strata.size() == 4 + 3);
  CHECK(remarkable(c) == std::set<Rat>{q(2, 3)});
  auto rep = check_only_lct(a);
  CHECK(rep.pass);
  CHECK(rep.lct == q(2, 3));
  CHECK(rep.witness == std::vector<std::string>{"W1.2.3", "H1"});
}

TEST_CASE("normal crossings and a triangle of lines") {
  auto xy = build_complex(arr(2, {{1, 0}, {0, 1}}));
  CHECK(remarkable(xy) == std::set<Rat>{q(1)});
  CHECK(xy.divisors.back().N == 2);
  CHECK(xy.divisors.back().nu == 2);
  // three planes in general position in 3-space: three double lines and the origin
  auto tri = arr(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto c = build_complex(tri);
  CHECK(c.divisors.size() == 7);
  CHECK(remarkable(c) == std::set<Rat>{q(1)});
  CHECK(check_only_lct(tri).pass);
  CHECK(check_only_lct(tri).lct == 1);
  // the 3-element chain origin < line < plane has 3 * 2 realizations
  long top = 0;
  for (const auto& [I, comp] : c.strata)
    if (I.size() == 3) ++top;
  CHECK(top == 6);
}

TEST_CASE("a pencil plus a generic plane in 3-space") {
  auto a = arr(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  auto edges = intersection_lattice(a);
  bool triple = false;
  for (const auto& e : edges) triple = triple || (e.id == "W1.2.3" && e.codim == 2);
  CHECK(triple);
  auto rep = check_only_lct(a);
  CHECK(rep.pass);
  CHECK(rep.lct == q(2, 3));
}

TEST_CASE("invalid arrangements") {
  CHECK_THROWS_AS(intersection_lattice(arr(2, {{1, 0}, {2, 0}})), ValidationError);
  CHECK_THROWS_AS(intersection_lattice(arr(2, {{0, 0}})), ValidationError);
  CHECK_THROWS_AS(intersection_lattice(arr(2, {{1, 0, 0}})), ValidationError);
  Arrangement big;
  big.ambient_dim = 2;
  for (int i = 0; i < 17; ++i) big.hyperplanes.push_back({Rat(1), Rat(i)});
  CHECK_THROWS_AS(build_complex(big), ValidationError);
}

TEST_CASE("random central arrangements have the lct as only remarkable number") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 40; ++it) {
    auto a = random_arrangement(rng, it % 2 ? 3 : 2, 5);
    auto edges = intersection_lattice(a);
    auto c = build_complex(a);
    REQUIRE(validate(c).empty());
    const auto rem = oracle::remarkable_brute(c);
    CHECK(rem == std::set<Rat>{min_ratio(edges)});
    CHECK(remarkable(c) == rem);
    CHECK(check_only_lct(a).pass);
    // every flag ending in a hyperplane has N = 1
    for (const auto& [I, comp] : c.strata)
      if (c.divisors[I.front()].flags.count("hyperplane")) CHECK(stats(c, I).N == 1);
  }
}
