// Codimensions of contact loci read off a stratum complex.
#pragma once

#include <optional>
#include <vector>

#include "tdz/strata.hpp"

namespace tdz {

// C_m for m = 0..m_max; entry 0 is unused.
std::vector<std::optional<std::int64_t>> codim_table(const StratumComplex& c, std::int64_t m_max);
std::optional<std::int64_t> codim(const StratumComplex& c, std::int64_t m);

struct ContactSample {
  std::int64_t m;
  std::optional<std::int64_t> C;
  std::optional<Rat> ratio;
};

struct ContactProfile {
  std::int64_t d = 1;
  std::int64_t N = 1;
  std::vector<ContactSample> samples;
  std::optional<Rat> limit;  // d-lct
  bool monotone = true;      // present ratios weakly decrease
  bool bounded = true;       // every ratio is >= lct and >= limit
  bool stabilized = false;   // last step adds exactly N * limit
};

// Samples at m = lN + d for l = 0..l_max.
ContactProfile profile(const StratumComplex& c, std::int64_t d, std::int64_t l_max);
// Every residue class d = 1..N from one codimension table.
std::vector<ContactProfile> profiles(const StratumComplex& c, std::int64_t l_max);

}  // namespace tdz
