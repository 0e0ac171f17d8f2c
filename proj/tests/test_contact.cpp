#include <functional>
#include <random>

#include "complexes.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "tdz/contact.hpp"

using namespace tdz;

TEST_CASE("contact codimensions of the cusp") {
  auto c = fixture::cusp();
  CHECK(codim(c, 6) == 5);
  CHECK(codim(c, 7) == 6);
  auto no_strict = restrict_complex(c, [](const Stratum& I) { return I.back() != 3; });
  CHECK_FALSE(codim(no_strict, 1).has_value());
}

TEST_CASE("knapsack agrees with exhaustive enumeration") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> NN(1, 7), nu(1, 7), coin(0, 1);
  for (auto base : {fixture::cusp(), fixture::f2(), fixture::xy()}) {
    auto t = codim_table(base, 64);
    for (std::int64_t m = 1; m <= 64; ++m) CHECK(t[m] == oracle::codim_bruteforce(base, m));
  }
  for (int it = 0; it < 40; ++it) {
    StratumComplex c;
    c.ambient_dim = 2;
    for (int i = 0; i < 4; ++i) c.add_divisor("E" + std::to_string(i + 1), NN(rng), nu(rng));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (coin(rng)) c.add_stratum(Stratum{i, j});
    auto t = codim_table(c, 64);
    for (std::int64_t m = 1; m <= 64; ++m) {
      CHECK(t[m] == oracle::codim_bruteforce(c, m));
      if (t[m]) CHECK(make_rat(*t[m], m) >= lct(c));
    }
  }
}

TEST_CASE("contact profiles") {
  auto c = fixture::cusp();
  auto p6 = profile(c, 6, 4);
  for (const auto& s : p6.samples) CHECK(s.ratio == make_rat(5, 6));
  CHECK(p6.limit == make_rat(5, 6));
  CHECK(p6.monotone);
  CHECK(p6.stabilized);

  auto p1 = profile(c, 1, 4);
  std::vector<std::int64_t> ms, Cs;
  for (const auto& s : p1.samples) {
    ms.push_back(s.m);
    Cs.push_back(*s.C);
  }
  CHECK(ms == std::vector<std::int64_t>{1, 7, 13, 19, 25});
  CHECK(Cs == std::vector<std::int64_t>{1, 6, 11, 16, 21});
  CHECK(p1.monotone);
  CHECK(p1.bounded);
  CHECK(p1.limit == make_rat(5, 6));

  auto none = profile(fixture::single(2, 1), 1, 4);
  for (const auto& s : none.samples) CHECK_FALSE(s.C.has_value());
  CHECK_FALSE(none.limit.has_value());

  CHECK_THROWS_AS(profile(c, 0, 3), ValidationError);
  CHECK_THROWS_AS(profile(c, 7, 3), ValidationError);
}

TEST_CASE("profiles of f2 approach the d-lct") {
  auto c = fixture::f2();
  const auto N = period(c);
  for (std::int64_t d : std::vector<std::int64_t>{1, 2, 3, 12, 13, 26, N}) {
    auto p = profile(c, d, 12);
    CHECK(p.monotone);
    CHECK(p.bounded);
    CHECK(p.limit == d_lct(c, d));
    CHECK(p.stabilized);
  }
}

TEST_CASE("all residue classes at once") {
  for (auto c : {fixture::cusp(), fixture::f2()}) {
    const auto all = profiles(c, 6);
    REQUIRE(all.size() == static_cast<std::size_t>(period(c)));
    for (const auto& p : all) {
      const auto q = profile(c, p.d, 6);
      CHECK(p.limit == q.limit);
      CHECK(p.monotone == q.monotone);
      CHECK(p.bounded == q.bounded);
      CHECK(p.stabilized == q.stabilized);
      REQUIRE(p.samples.size() == q.samples.size());
      for (std::size_t i = 0; i < p.samples.size(); ++i) {
        CHECK(p.samples[i].C == q.samples[i].C);
        CHECK(p.samples[i].ratio == q.samples[i].ratio);
      }
    }
  }
}
