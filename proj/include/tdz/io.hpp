// JSON forms of the library types.  Rationals are strings "p/q".
#pragma once

#include <json.hpp>

#include "tdz/arrangements.hpp"
#include "tdz/contact.hpp"
#include "tdz/curves.hpp"
#include "tdz/strata.hpp"

namespace tdz {

using Json = nlohmann::ordered_json;

Json to_json(const Rat& q);
Rat rat_from_json(const Json& j);          // "p/q", "p" or an integer
Int int_from_json(const Json& j);          // integer or decimal string
std::int64_t i64_from_json(const Json& j, const std::string& what);

StratumComplex complex_from_json(const Json& j);  // missing singletons are inserted
Json complex_to_json(const StratumComplex& c);

StandardExpr expr_from_json(const Json& j);
Json expr_to_json(const StandardExpr& e);
Json laurent_to_json(const LaurentPoly& p);  // [[deg, "coeff"], ...]

Json poles_to_json(const PoleReport& r);

// A single {"x": ..., "y": ...}, a list of them, or {"branches": [...]}.
std::vector<BranchParam> branches_from_json(const Json& j);
Json branch_to_json(const BranchParam& b);

Json graph_to_json(const CurveGraph& g);
Json graph_report_to_json(const GraphReport& r, const CurveGraph& g);

Arrangement arrangement_from_json(const Json& j);
Json lattice_to_json(const std::vector<Edge>& edges);

Json profile_to_json(const ContactProfile& p);

// lct, remarkable numbers, d-lct keyed by the divisors of the period,
// j-remarkable sets for the same keys, and the poles.
Json strata_report(const StratumComplex& c, const PoleReport& poles);

Json parse_json_file(const std::string& path);

}  // namespace tdz
