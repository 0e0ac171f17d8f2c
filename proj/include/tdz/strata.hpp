// Stratum complexes of simple normal crossing resolutions and the invariants
// read off from them.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tdz/exact.hpp"
#include "tdz/series.hpp"

namespace tdz {

struct Divisor {
  std::string id;
  std::int64_t N = 1;
  std::int64_t nu = 1;
  std::set<std::string> flags;
};

using Stratum = std::vector<int>;  // sorted divisor indices

struct StratumComplex {
  int ambient_dim = 2;
  std::vector<Divisor> divisors;
  std::map<Stratum, Int> strata;  // c_I, number of components
  std::map<Stratum, std::set<std::string>> stratum_flags;

  int index_of(const std::string& id) const;  // -1 when absent
  int add_divisor(std::string id, std::int64_t N, std::int64_t nu, std::set<std::string> flags = {});
  void add_stratum(const std::vector<std::string>& ids, Int components = 1);
  void add_stratum(Stratum I, Int components = 1);
  std::string label(const Stratum& I) const;  // "{E1,E3}"
};

struct StratumStats {
  std::int64_t N;
  Rat alpha;
  int m;
};

StratumStats stats(const StratumComplex& c, const Stratum& I);

// Empty iff the complex is valid.
std::vector<std::string> validate(const StratumComplex& c);
void require_valid(const StratumComplex& c);  // throws ValidationError

std::int64_t period(const StratumComplex& c);  // lcm of the N_i
Rat lct(const StratumComplex& c);

// Strata whose alpha is not undercut by a stratum with N_J | N_I.
std::set<Rat> remarkable(const StratumComplex& c);
// The same set read off the d-lct values.
std::set<Rat> remarkable_via_dlct(const StratumComplex& c);

std::optional<Rat> d_lct(const StratumComplex& c, std::int64_t d);

// d-lct for every divisor d of the period; the value at any d is the one at gcd(d, period).
class DlctTable {
 public:
  explicit DlctTable(const StratumComplex& c);
  std::int64_t period() const { return N_; }
  std::optional<Rat> at(std::int64_t d) const;
  const std::map<std::int64_t, std::optional<Rat>>& by_divisor() const { return v_; }

 private:
  std::int64_t N_;
  std::map<std::int64_t, std::optional<Rat>> v_;
};

std::set<Rat> j_remarkable(const StratumComplex& c, std::int64_t j);

struct PoleOptions {
  std::uint64_t cap = 10'000'000;
  int threads = 1;
};

// Pole orders of the top-degree zeta function from the combinatorics of the complex.
PoleReport pole_report(const StratumComplex& c, const PoleOptions& opt = {});
// Literal enumeration over all strata and tuples; small complexes only.  With
// printed_blocking the tie-break compares r the other way round.
PoleReport pole_report_literal(const StratumComplex& c, bool printed_blocking = false);
// Whether -alpha has order >= m, by the literal predicate.
bool pole_order_at_least(const StratumComplex& c, const Rat& alpha, int m);

// The same report read off td of the rho-assembly.
PoleReport pole_report_series(const StratumComplex& c);

std::vector<BasicTerm> assemble_rho_terms(const StratumComplex& c);
std::vector<BasicTerm> assemble_vp_terms(const StratumComplex& c);
StandardExpr assemble_rho_bir(const StratumComplex& c);
StandardExpr assemble_vp_top(const StratumComplex& c);

// Blows up a point of E_i (|I| = 1) or of E_i ∩ E_j (|I| = 2); surfaces only.
StratumComplex blowup_point(const StratumComplex& c, const Stratum& I);

StratumComplex restrict_complex(const StratumComplex& c, const std::function<bool(const Stratum&)>& keep);

}  // namespace tdz
