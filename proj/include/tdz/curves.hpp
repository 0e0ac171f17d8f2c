// Plane curve branches: embedded resolution by point blow-ups and the
// closed forms for unibranch resolution graphs.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdz/strata.hpp"

namespace tdz {

using NewtonPair = std::pair<std::int64_t, std::int64_t>;  // (khat, rhat)
using NewtonPairs = std::vector<NewtonPair>;

void validate_newton_pairs(const NewtonPairs& p);  // throws ValidationError
NewtonPairs parse_newton_pairs(const std::string& s);  // "3/2,1/2"
std::string to_string(const NewtonPairs& p);

// x(t), y(t) as finite sums of c t^e with e >= 1.
struct BranchParam {
  std::vector<std::pair<std::int64_t, Rat>> x, y;
};

BranchParam param_from_newton_pairs(const NewtonPairs& p);
BranchParam fk_family(int k);

struct CurveVertex {
  std::string id;
  std::int64_t N = 1;
  std::int64_t nu = 1;
  bool strict = false;
  bool rupture = false;
  std::string group;    // H_j, V_j, V_1', R_j, strict; empty for several branches
  NewtonPairs pairs;    // Newton pairs of a transverse curvette; unibranch only
};

struct CurveGraph {
  std::vector<CurveVertex> vertices;
  std::map<std::pair<int, int>, int> edges;  // i < j -> number of intersection points
  std::optional<NewtonPairs> branch_pairs;   // unibranch only
  std::vector<std::string> notes;

  int valency(int v) const;
  std::string to_dot() const;
};

struct ResolveOptions {
  std::int64_t initial_precision = 64;
  std::int64_t max_precision = 2048;
};

// Minimal embedded resolution of the germ given by the branches.
CurveGraph resolve_branches(const std::vector<BranchParam>& branches, const ResolveOptions& opt = {});

StratumComplex complex_from_graph(const CurveGraph& g);

struct GraphReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::map<std::pair<int, int>, std::int64_t> edge_gcd;
};

// Checks the gcd, multiplicity, discrepancy and monotonicity laws and the
// rupture characterization of remarkable numbers.  Unibranch graphs only.
GraphReport verify_graph(const CurveGraph& g);

// Characteristic polynomial of the monodromy on H^1 of the Milnor fibre,
// coefficients in increasing degree.
IntPoly acampo_charpoly(const CurveGraph& g);
// Cyclotomic indices d with multiplicity; throws if not a product of them.
std::map<std::int64_t, int> cyclotomic_factors(const IntPoly& p);

// Ramanujan sum c_k(d), by direct summation in Z[zeta_k].
Int ramanujan(std::int64_t k, std::int64_t d);

}  // namespace tdz
