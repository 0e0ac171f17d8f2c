// Central hyperplane arrangements: intersection lattice and the flag complex
// of the resolution obtained by blowing up all edges.
#pragma once

#include <string>
#include <vector>

#include "tdz/strata.hpp"

namespace tdz {

struct Arrangement {
  int ambient_dim = 2;
  std::vector<std::vector<Rat>> hyperplanes;  // linear forms
};

constexpr std::size_t kMaxHyperplanes = 16;

void validate_arrangement(const Arrangement& a);  // throws ValidationError

// Rank of a set of linear forms.
int rank(const std::vector<std::vector<Rat>>& rows);

// A proper edge, described by the hyperplanes containing it.
struct Edge {
  std::vector<int> hyperplanes;  // sorted, 0-based
  int codim = 1;
  std::string id;  // "H3" for a hyperplane, "W1.2.4" otherwise (1-based)
};

// Edges sorted by codimension, then by hyperplane set.
std::vector<Edge> intersection_lattice(const Arrangement& a);

StratumComplex build_complex(const Arrangement& a);

struct OnlyLctReport {
  bool pass = false;
  Rat lct;
  std::set<Rat> remarkable;
  std::vector<std::string> witness;  // a flag through a minimizing edge ending in a hyperplane
  std::string message;
};

OnlyLctReport check_only_lct(const Arrangement& a);

}  // namespace tdz
