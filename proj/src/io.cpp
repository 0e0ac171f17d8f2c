#include "tdz/io.hpp"

#include <fstream>

namespace tdz {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::vector<std::pair<std::int64_t, Rat>> terms_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + " must be a list of [exponent, coefficient]");
  std::vector<std::pair<std::int64_t, Rat>> out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw ValidationError(where + " entries must be [exponent, coefficient]");
    out.emplace_back(i64_from_json(t[0], where + " exponent"), rat_from_json(t[1]));
  }
  return out;
}

}  // namespace

Json to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rat(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ValidationError("expected a rational, got " + j.dump());
}

Int int_from_json(const Json& j) {
  const Rat q = rat_from_json(j);
  if (q.get_den() != 1) throw ValidationError("expected an integer, got " + j.dump());
  return q.get_num();
}

std::int64_t i64_from_json(const Json& j, const std::string& what) {
  try {
    return to_i64(int_from_json(j));
  } catch (const std::overflow_error&) {
    throw ValidationError(what + " is out of range");
  } catch (const ValidationError&) {
    throw ValidationError(what + ": expected an integer, got " + j.dump());
  }
}

// ---------------------------------------------------------------------------

StratumComplex complex_from_json(const Json& j) {
  StratumComplex c;
  c.ambient_dim = static_cast<int>(i64_from_json(field(j, "ambient_dim", "complex"), "ambient_dim"));
  for (const auto& d : field(j, "divisors", "complex")) {
    const std::string id = field(d, "id", "divisor").get<std::string>();
    if (c.index_of(id) >= 0) throw ValidationError("divisor id " + id + " repeats");
    std::set<std::string> flags;
    if (d.contains("flags"))
      for (const auto& f : d.at("flags")) flags.insert(f.get<std::string>());
    c.add_divisor(id, i64_from_json(field(d, "N", "divisor " + id), "N of " + id),
                  i64_from_json(field(d, "nu", "divisor " + id), "nu of " + id), flags);
  }
  if (j.contains("strata")) {
    for (const auto& s : j.at("strata")) {
      const auto ids = field(s, "ids", "stratum").get<std::vector<std::string>>();
      const Int comp = s.contains("components") ? int_from_json(s.at("components")) : Int(1);
      c.add_stratum(ids, comp);
      if (s.contains("flags")) {
        Stratum I;
        for (const auto& id : ids) I.push_back(c.index_of(id));
        std::sort(I.begin(), I.end());
        for (const auto& f : s.at("flags")) c.stratum_flags[I].insert(f.get<std::string>());
      }
    }
  }
  require_valid(c);
  return c;
}

Json complex_to_json(const StratumComplex& c) {
  Json j;
  j["ambient_dim"] = c.ambient_dim;
  j["divisors"] = Json::array();
  for (const auto& d : c.divisors) {
    Json dj{{"id", d.id}, {"N", d.N}, {"nu", d.nu}};
    if (!d.flags.empty()) dj["flags"] = d.flags;
    j["divisors"].push_back(dj);
  }
  j["strata"] = Json::array();
  for (const auto& [I, comp] : c.strata) {
    if (I.size() < 2 && comp == 1 && !c.stratum_flags.count(I)) continue;
    Json ids = Json::array();
    for (int i : I) ids.push_back(c.divisors[i].id);
    Json s{{"ids", ids}, {"components", comp.fits_slong_p() ? Json(comp.get_si()) : Json(comp.get_str())}};
    if (auto it = c.stratum_flags.find(I); it != c.stratum_flags.end()) s["flags"] = it->second;
    j["strata"].push_back(s);
  }
  return j;
}

// ---------------------------------------------------------------------------

StandardExpr expr_from_json(const Json& j) {
  char tag = 'x';
  if (j.contains("var")) {
    const auto v = j.at("var").get<std::string>();
    if (v.size() != 1) throw ValidationError("var must be a single letter");
    tag = v[0];
  }
  TPoly num(tag);
  const auto& nj = field(j, "num", "expression");
  if (!nj.is_array()) throw ValidationError("num must be a list indexed by the power of T");
  for (std::size_t k = 0; k < nj.size(); ++k) {
    for (const auto& [deg, c] : terms_from_json(nj[k], "num[" + std::to_string(k) + "]")) {
      if (c.get_den() != 1) throw ValidationError("numerator coefficients must be integers");
      num.add_term(static_cast<std::int64_t>(k), deg, c.get_num());
    }
  }
  std::vector<DenFactor> den;
  if (j.contains("den"))
    for (const auto& f : j.at("den")) {
      DenFactor d{i64_from_json(field(f, "c", "den"), "c"), i64_from_json(field(f, "N", "den"), "N"),
                  f.contains("e") ? static_cast<int>(i64_from_json(f.at("e"), "e")) : 1};
      if (d.N < 1 || d.e < 1) throw ValidationError("denominator factors need N >= 1 and e >= 1");
      den.push_back(d);
    }
  return StandardExpr(num, den);
}

Json laurent_to_json(const LaurentPoly& p) {
  Json a = Json::array();
  for (const auto& [d, c] : p.terms()) a.push_back(Json::array({d, c.get_str()}));
  return a;
}

Json expr_to_json(const StandardExpr& e) {
  Json j;
  j["var"] = std::string(1, e.tag());
  j["num"] = Json::array();
  for (std::size_t k = 0; k < e.num.size(); ++k) j["num"].push_back(laurent_to_json(e.num[k]));
  j["den"] = Json::array();
  for (const auto& d : e.den) j["den"].push_back({{"c", d.c}, {"N", d.N}, {"e", d.e}});
  return j;
}

Json poles_to_json(const PoleReport& r) {
  Json a = Json::array();
  for (const auto& [q, n] : r) a.push_back({{"q", to_string(q)}, {"order", n}});
  return a;
}

// ---------------------------------------------------------------------------

std::vector<BranchParam> branches_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object() && j.contains("branches")) list = &j.at("branches");
  std::vector<BranchParam> out;
  auto one = [&](const Json& b) {
    const std::string at = "branch " + std::to_string(out.size() + 1);
    BranchParam p;
    p.x = b.contains("x") ? terms_from_json(b.at("x"), at + " x") : decltype(p.x){};
    p.y = b.contains("y") ? terms_from_json(b.at("y"), at + " y") : decltype(p.y){};
    if (!b.contains("x") && !b.contains("y")) throw ValidationError(at + " needs \"x\" or \"y\"");
    out.push_back(std::move(p));
  };
  if (list->is_array()) {
    for (const auto& b : *list) one(b);
  } else if (list->is_object()) {
    one(*list);
  } else {
    throw ValidationError("a branch parameterization must be an object or a list");
  }
  if (out.empty()) throw ValidationError("no branches given");
  return out;
}

Json branch_to_json(const BranchParam& b) {
  auto side = [](const std::vector<std::pair<std::int64_t, Rat>>& v) {
    Json a = Json::array();
    for (const auto& [e, c] : v) a.push_back(Json::array({e, to_string(c)}));
    return a;
  };
  return {{"x", side(b.x)}, {"y", side(b.y)}};
}

Json graph_to_json(const CurveGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : g.vertices) {
    Json vj{{"id", v.id}, {"N", v.N}, {"nu", v.nu}, {"alpha", to_string(make_rat(v.nu, v.N))},
            {"strict", v.strict}, {"rupture", v.rupture}};
    if (!v.group.empty()) vj["group"] = v.group;
    if (!v.pairs.empty()) vj["pairs"] = to_string(v.pairs);
    j["vertices"].push_back(vj);
  }
  j["edges"] = Json::array();
  for (const auto& [e, k] : g.edges)
    j["edges"].push_back({{"a", g.vertices[e.first].id},
                          {"b", g.vertices[e.second].id},
                          {"count", k},
                          {"gcd", std::gcd(g.vertices[e.first].N, g.vertices[e.second].N)}});
  if (g.branch_pairs) j["newton_pairs"] = to_string(*g.branch_pairs);
  j["notes"] = g.notes;
  return j;
}

Json graph_report_to_json(const GraphReport& r, const CurveGraph& g) {
  Json edges = Json::array();
  for (const auto& [e, gcd] : r.edge_gcd)
    edges.push_back({{"a", g.vertices[e.first].id}, {"b", g.vertices[e.second].id}, {"gcd", gcd}});
  return {{"ok", r.ok}, {"failures", r.failures}, {"edge_gcd", edges}};
}

// ---------------------------------------------------------------------------

Arrangement arrangement_from_json(const Json& j) {
  Arrangement a;
  a.ambient_dim = static_cast<int>(i64_from_json(field(j, "ambient_dim", "arrangement"), "ambient_dim"));
  for (const auto& h : field(j, "hyperplanes", "arrangement")) {
    std::vector<Rat> f;
    for (const auto& x : h) f.push_back(rat_from_json(x));
    a.hyperplanes.push_back(std::move(f));
  }
  validate_arrangement(a);
  return a;
}

Json lattice_to_json(const std::vector<Edge>& edges) {
  Json a = Json::array();
  for (const auto& e : edges) {
    std::vector<int> hs;
    for (int h : e.hyperplanes) hs.push_back(h + 1);
    a.push_back({{"id", e.id},
                 {"codim", e.codim},
                 {"hyperplanes", hs},
                 {"N", e.hyperplanes.size()},
                 {"nu", e.codim},
                 {"alpha", to_string(make_rat(e.codim, static_cast<std::int64_t>(e.hyperplanes.size())))}});
  }
  return a;
}

Json profile_to_json(const ContactProfile& p) {
  Json s = Json::array();
  for (const auto& x : p.samples)
    s.push_back({{"m", x.m},
                 {"codim", x.C ? Json(*x.C) : Json(nullptr)},
                 {"ratio", x.ratio ? to_json(*x.ratio) : Json(nullptr)}});
  return {{"d", p.d},
          {"N", p.N},
          {"limit", p.limit ? to_json(*p.limit) : Json(nullptr)},
          {"monotone", p.monotone},
          {"bounded", p.bounded},
          {"stabilized", p.stabilized},
          {"samples", s}};
}

Json strata_report(const StratumComplex& c, const PoleReport& poles) {
  Json j;
  j["lct"] = to_json(lct(c));
  j["remarkable"] = Json::array();
  for (const auto& r : remarkable(c)) j["remarkable"].push_back(to_json(r));
  const DlctTable t(c);
  Json dl = Json::object(), jr = Json::object();
  for (const auto& [d, v] : t.by_divisor()) {
    dl[std::to_string(d)] = v ? to_json(*v) : Json(nullptr);
    Json s = Json::array();
    for (const auto& r : j_remarkable(c, d)) s.push_back(to_json(r));
    jr[std::to_string(d)] = s;
  }
  j["dlct"] = dl;
  j["jremarkable"] = jr;
  j["poles"] = poles_to_json(poles);
  return j;
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace tdz
