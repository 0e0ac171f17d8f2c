// Small stratum complexes used across tests.
#pragma once

#include <random>

#include "tdz/strata.hpp"

namespace fixture {

using namespace tdz;

inline StratumComplex make(int n, std::vector<std::tuple<std::string, long, long>> divs,
                           std::vector<std::vector<std::string>> edges) {
  StratumComplex c;
  c.ambient_dim = n;
  for (auto& [id, N, nu] : divs) c.add_divisor(id, N, nu);
  for (auto& e : edges) c.add_stratum(e);
  return c;
}

// minimal resolution of y^2 = x^3
inline StratumComplex cusp() {
  return make(2, {{"E1", 2, 2}, {"E2", 3, 3}, {"E3", 6, 5}, {"E4", 1, 1}},
              {{"E1", "E3"}, {"E2", "E3"}, {"E3", "E4"}});
}

inline StratumComplex f2() {
  return make(2, {{"E1", 4, 2}, {"E2", 6, 3}, {"E3", 12, 5}, {"E4", 13, 6}, {"E5", 26, 11}, {"E6", 1, 1}},
              {{"E1", "E3"}, {"E2", "E3"}, {"E3", "E5"}, {"E4", "E5"}, {"E5", "E6"}});
}

inline StratumComplex xy() { return make(2, {{"E1", 1, 1}, {"E2", 1, 1}}, {{"E1", "E2"}}); }

inline StratumComplex single(long N = 1, long nu = 1, int n = 1) { return make(n, {{"E1", N, nu}}, {}); }

// Random complexes with at most 4 divisors; surfaces, sometimes threefolds.
inline StratumComplex random_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, 4), NN(1, 6), nu(1, 6), coin(0, 2), comp(1, 2), dim(2, 3);
  StratumComplex c;
  c.ambient_dim = dim(rng) == 3 && coin(rng) == 0 ? 3 : 2;
  const int k = nd(rng);
  for (int i = 0; i < k; ++i) c.add_divisor("E" + std::to_string(i + 1), NN(rng), nu(rng));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (coin(rng)) c.add_stratum(Stratum{i, j}, comp(rng));
  if (c.ambient_dim == 3)
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int l = j + 1; l < k; ++l)
          if (c.strata.count({i, j}) && c.strata.count({i, l}) && c.strata.count({j, l}) && coin(rng))
            c.add_stratum(Stratum{i, j, l}, 1);
  return c;
}

}  // namespace fixture
