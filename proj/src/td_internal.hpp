// Shared between the two top-degree routes.
#pragma once

#include "tdz/series.hpp"

namespace tdz {

// b(T) / (1 - X^{-c} T^N)^e
struct Tail {
  std::int64_t c;
  int e;
  TPoly num;
};

// Sum of tails sharing the period N, over a common denominator.
StandardExpr assemble_tails(std::vector<Tail>& tails, std::int64_t N, char tag);

}  // namespace tdz
