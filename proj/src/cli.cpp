#include "tdz/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "tdz/io.hpp"

namespace tdz {

namespace {

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Left-aligned text columns.
class Table {
 public:
  explicit Table(std::vector<std::string> head) { rows_.push_back(std::move(head)); }
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }
  void print(std::ostream& o) const {
    std::vector<std::size_t> w;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], display_width(r[i]));
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(w[i] - display_width(r[i]) + 2, ' ');
      }
      o << line << "\n";
    }
  }

 private:
  static std::size_t display_width(const std::string& s) {
    return std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; });
  }
  std::vector<std::vector<std::string>> rows_;
};

std::string join(const std::set<Rat>& s) {
  std::string out;
  for (const auto& q : s) out += (out.empty() ? "" : ", ") + to_string(q);
  return out;
}

struct Common {
  std::string format = "json";
  std::uint64_t cap = 10'000'000;
  int threads = 1;
  bool cross_check = false;

  PoleOptions poles() const { return {cap, std::max(1, threads)}; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "json, table or dot")
      ->check(CLI::IsMember({"json", "table", "dot"}))
      ->capture_default_str();
  sub->add_option("--enum-cap", c.cap, "cap on the pole-order enumeration")->envname("ZETA_ENUM_CAP")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads for the pole enumeration")
      ->envname("ZETA_THREADS")
      ->capture_default_str();
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Pole report with the optional second pipeline.
PoleReport checked_poles(const StratumComplex& c, const Common& opt, Json& j) {
  PoleReport pr = pole_report(c, opt.poles());
  if (opt.cross_check) {
    const PoleReport s = pole_report_series(c);
    if (s != pr) {
      j["cross_check"] = {{"ok", false}, {"series", poles_to_json(s)}};
      return pr;
    }
    j["cross_check"] = {{"ok", true}};
  }
  return pr;
}

bool cross_check_failed(const Json& j) { return j.contains("cross_check") && !j["cross_check"]["ok"].get<bool>(); }

void strata_table(std::ostream& out, const StratumComplex& c, const PoleReport& pr) {
  Table d({"id", "N", "nu", "alpha"});
  for (const auto& v : c.divisors)
    d.row({v.id, std::to_string(v.N), std::to_string(v.nu), to_string(make_rat(v.nu, v.N))});
  d.print(out);
  out << "\nlct: " << to_string(lct(c)) << "\nremarkable: " << join(remarkable(c)) << "\n\n";
  Table t({"d", "d-lct"});
  const DlctTable table(c);
  for (const auto& [dd, v] : table.by_divisor()) t.row({std::to_string(dd), v ? to_string(*v) : "-"});
  t.print(out);
  out << "\n";
  Table p({"pole", "order"});
  for (const auto& [q, n] : pr) p.row({to_string(q), std::to_string(n)});
  p.print(out);
}

std::string complex_dot(const StratumComplex& c) {
  if (c.ambient_dim != 2) throw ValidationError("dot output needs a surface complex (ambient_dim 2)");
  std::ostringstream o;
  o << "graph complex {\n";
  for (const auto& v : c.divisors)
    o << "  \"" << v.id << "\" [label=\"" << v.id << " N=" << v.N << " ν=" << v.nu
      << " α=" << to_string(make_rat(v.nu, v.N)) << "\"];\n";
  for (const auto& [I, comp] : c.strata) {
    if (I.size() != 2) continue;
    const auto& a = c.divisors[I[0]];
    const auto& b = c.divisors[I[1]];
    for (Int k = 0; k < comp; ++k)
      o << "  \"" << a.id << "\" -- \"" << b.id << "\" [label=\"" << std::gcd(a.N, b.N) << "\"];\n";
  }
  o << "}\n";
  return o.str();
}

StratumComplex apply_restrictions(StratumComplex c, const std::vector<std::string>& flags,
                                  const std::vector<std::string>& meets) {
  auto has = [&](int i, const std::string& f) { return c.divisors[i].flags.count(f) > 0; };
  for (const auto& f : flags) {
    // a stratum flagged f, or one all of whose divisors carry f
    c = restrict_complex(c, [&](const Stratum& I) {
      auto it = c.stratum_flags.find(I);
      if (it != c.stratum_flags.end() && it->second.count(f)) return true;
      return std::all_of(I.begin(), I.end(), [&](int i) { return has(i, f); });
    });
  }
  for (const auto& f : meets) {
    // strata whose closure meets the union of the divisors carrying f
    c = restrict_complex(c, [&](const Stratum& I) {
      for (const auto& [J, comp] : c.strata)
        if (std::includes(J.begin(), J.end(), I.begin(), I.end()) &&
            std::any_of(J.begin(), J.end(), [&](int j) { return has(j, f); }))
          return true;
      return false;
    });
  }
  return c;
}

// ---------------------------------------------------------------------------

int run_strata(const Common& opt, const std::string& input, const std::vector<std::string>& flags,
               const std::vector<std::string>& meets, std::ostream& out) {
  const StratumComplex c = apply_restrictions(complex_from_json(parse_json_file(input)), flags, meets);
  if (opt.format == "dot") {
    out << complex_dot(c);
    return kOk;
  }
  Json j;
  const PoleReport pr = checked_poles(c, opt, j);
  Json rep = strata_report(c, pr);
  if (j.contains("cross_check")) rep["cross_check"] = j["cross_check"];
  if (opt.format == "table") {
    strata_table(out, c, pr);
    if (rep.contains("cross_check")) out << "\ncross-check: " << (cross_check_failed(rep) ? "MISMATCH" : "OK") << "\n";
  } else {
    print_json(out, rep);
  }
  if (cross_check_failed(rep)) throw Mismatch("combinatorial and series pole reports differ");
  return kOk;
}

int run_curve(const Common& opt, int fk, const std::string& pairs, const std::string& param, std::ostream& out) {
  const int given = (fk > 0) + !pairs.empty() + !param.empty();
  if (given != 1) throw ValidationError("give exactly one of --fk, --newton-pairs, --param");
  std::vector<BranchParam> br;
  Json input;
  if (fk > 0) {
    br = {fk_family(fk)};
    input["fk"] = fk;
  } else if (!pairs.empty()) {
    const auto p = parse_newton_pairs(pairs);
    br = {param_from_newton_pairs(p)};
    input["newton_pairs"] = to_string(p);
  } else {
    br = branches_from_json(parse_json_file(param));
  }
  input["branches"] = Json::array();
  for (const auto& b : br) input["branches"].push_back(branch_to_json(b));

  const CurveGraph g = resolve_branches(br);
  if (opt.format == "dot") {
    out << g.to_dot();
    return kOk;
  }
  const StratumComplex c = complex_from_graph(g);
  Json j;
  j["input"] = input;
  j["graph"] = graph_to_json(g);
  std::optional<GraphReport> vr;
  if (g.branch_pairs) {
    vr = verify_graph(g);
    j["verify"] = graph_report_to_json(*vr, g);
  }
  const IntPoly ap = acampo_charpoly(g);
  Json fac = Json::object();
  for (const auto& [d, m] : cyclotomic_factors(ap)) fac[std::to_string(d)] = m;
  j["acampo"] = {{"degree", ap.size() - 1}, {"poly", poly_str(ap)}, {"cyclotomic", fac}};
  Json cc;
  const PoleReport pr = checked_poles(c, opt, cc);
  j["strata"] = strata_report(c, pr);
  if (cc.contains("cross_check")) j["cross_check"] = cc["cross_check"];

  if (opt.format == "table") {
    Table t({"id", "N", "nu", "alpha", "group", "pairs"});
    for (const auto& v : g.vertices)
      t.row({v.id, std::to_string(v.N), std::to_string(v.nu), to_string(make_rat(v.nu, v.N)),
             v.group + (v.rupture ? " *" : ""), to_string(v.pairs)});
    t.print(out);
    out << "\n";
    Table e({"edge", "gcd"});
    for (const auto& [k, n] : g.edges) {
      const auto& a = g.vertices[k.first];
      const auto& b = g.vertices[k.second];
      for (int i = 0; i < n; ++i) e.row({a.id + "-" + b.id, std::to_string(std::gcd(a.N, b.N))});
    }
    e.print(out);
    out << "\nremarkable: " << join(remarkable(c)) << "\nlct: " << to_string(lct(c)) << "\n";
    out << "monodromy: " << poly_str(ap) << "\n";
    if (vr) out << "closed forms: " << (vr->ok ? "OK" : "FAILED") << "\n";
    for (const auto& f : vr ? vr->failures : std::vector<std::string>{}) out << "  " << f << "\n";
    for (const auto& n : g.notes) out << "note: " << n << "\n";
    if (j.contains("cross_check")) out << "cross-check: " << (cross_check_failed(j) ? "MISMATCH" : "OK") << "\n";
  } else {
    print_json(out, j);
  }
  if (cross_check_failed(j)) throw Mismatch("combinatorial and series pole reports differ");
  if (opt.cross_check && vr && !vr->ok) throw Mismatch("resolution graph disagrees with the closed forms");
  return kOk;
}

int run_arrangement(const Common& opt, const std::string& input, std::ostream& out) {
  const Arrangement a = arrangement_from_json(parse_json_file(input));
  const auto edges = intersection_lattice(a);
  const StratumComplex c = build_complex(a);
  const OnlyLctReport rep = check_only_lct(a);
  if (opt.format == "dot") throw ValidationError("dot output is not available for arrangements");
  Json j;
  j["lattice"] = lattice_to_json(edges);
  Json cc;
  j["strata"] = strata_report(c, checked_poles(c, opt, cc));
  Json rem = Json::array();
  for (const auto& r : rep.remarkable) rem.push_back(to_json(r));
  j["only_lct"] = {{"pass", rep.pass}, {"lct", to_json(rep.lct)}, {"remarkable", rem}, {"witness", rep.witness}};
  if (!rep.pass) j["only_lct"]["message"] = rep.message;
  if (cc.contains("cross_check")) j["cross_check"] = cc["cross_check"];
  if (opt.format == "table") {
    Table t({"edge", "codim", "N", "alpha"});
    for (const auto& e : edges)
      t.row({e.id, std::to_string(e.codim), std::to_string(e.hyperplanes.size()),
             to_string(make_rat(e.codim, static_cast<std::int64_t>(e.hyperplanes.size())))});
    t.print(out);
    out << "\nlct: " << to_string(rep.lct) << "\nremarkable: " << join(rep.remarkable)
        << "\nonly lct: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  } else {
    print_json(out, j);
  }
  if (!rep.pass) throw Mismatch(rep.message);
  if (cross_check_failed(j)) throw Mismatch("combinatorial and series pole reports differ");
  return kOk;
}

int run_contact(const Common& opt, const std::string& input, std::vector<std::int64_t> ds, std::int64_t l_max,
                const std::vector<std::string>& flags, const std::vector<std::string>& meets, std::ostream& out) {
  const StratumComplex c = apply_restrictions(complex_from_json(parse_json_file(input)), flags, meets);
  if (opt.format == "dot") throw ValidationError("dot output is not available for contact profiles");
  if (l_max < 0) throw ValidationError("--l-max must be non-negative");
  if (ds.empty()) ds = {1};
  Json j = Json::array();
  std::vector<ContactProfile> ps;
  for (auto d : ds) {
    ps.push_back(profile(c, d, l_max));
    j.push_back(profile_to_json(ps.back()));
  }
  if (opt.format == "table") {
    for (const auto& p : ps) {
      out << "d = " << p.d << ", N = " << p.N << ", limit " << (p.limit ? to_string(*p.limit) : "-") << "\n";
      Table t({"m", "codim", "codim/m"});
      for (const auto& s : p.samples)
        t.row({std::to_string(s.m), s.C ? std::to_string(*s.C) : "-", s.ratio ? to_string(*s.ratio) : "-"});
      t.print(out);
      out << "monotone " << (p.monotone ? "yes" : "no") << ", bounded " << (p.bounded ? "yes" : "no")
          << ", stabilized " << (p.stabilized ? "yes" : "no") << "\n\n";
    }
  } else {
    print_json(out, j);
  }
  return kOk;
}

int run_series(const Common& opt, const std::string& input, const std::string& mode, std::int64_t M,
               std::ostream& out) {
  const StandardExpr e = expr_from_json(parse_json_file(input));
  if (opt.format == "dot") throw ValidationError("dot output is not available for series");
  const PoleMode pm = mode == "rv" ? PoleMode::RootOfUnityOne : PoleMode::PerRoot;
  const TdResult td = td_expr(e);
  const PoleReport pr = poles(e, pm);
  if (M < 0) {
    const StandardExpr n = normalize_common(e);
    const std::int64_t N = n.den.empty() ? 1 : n.den.front().N;
    std::int64_t esum = 0;
    for (const auto& f : n.den) esum += f.e;
    M = 2 * (static_cast<std::int64_t>(e.num.size()) - 1 + N * esum) + 2 * N;
  }
  const TPoly ex = expand(td.combined(), M);
  Json j;
  j["mode"] = mode;
  j["td"] = expr_to_json(td.combined());
  j["td_rational"] = expr_to_json(td.rational);
  j["td_corrections"] = expr_to_json(StandardExpr(td.W, {}))["num"];
  j["expansion_order"] = M;
  j["td_expansion"] = Json::array();
  for (std::int64_t k = 0; k <= M; ++k) j["td_expansion"].push_back(laurent_to_json(ex.at(k)));
  j["poles"] = poles_to_json(pr);
  if (opt.cross_check) {
    const PoleReport other = poles_by_roots(e, pm);
    j["cross_check"] = {{"ok", other == pr}};
    if (other != pr) j["cross_check"]["by_roots"] = poles_to_json(other);
  }
  if (opt.format == "table") {
    out << "td numerator: ";
    bool first = true;
    const auto& num = td.combined().num;
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (num[k].is_zero()) continue;
      out << (first ? "" : " + ") << "(" << num[k].str() << ")T^" << k;
      first = false;
    }
    if (first) out << "0";
    out << "\ntd denominator:";
    for (const auto& f : td.combined().den)
      out << " (1 - " << e.tag() << "^(" << -f.c << ")T^" << f.N << ")" << (f.e > 1 ? "^" + std::to_string(f.e) : "");
    out << "\n\n";
    Table p({"pole", "order"});
    for (const auto& [q, n] : pr) p.row({to_string(q), std::to_string(n)});
    p.print(out);
    if (j.contains("cross_check")) out << "\ncross-check: " << (cross_check_failed(j) ? "MISMATCH" : "OK") << "\n";
  } else {
    print_json(out, j);
  }
  if (cross_check_failed(j)) throw Mismatch("residue-class and root-by-root pole orders differ");
  return kOk;
}

void diagnose(std::ostream& err, const std::string& kind, const std::string& msg, Json extra = Json::object()) {
  Json j{{"error", kind}, {"message", msg}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Top-degree zeta functions, remarkable numbers and d-lct from resolution data", "tdzeta"};
  app.require_subcommand(1);
  Common opt;
  std::string input, pairs, param, mode = "per_root";
  std::vector<std::string> flags, meets;
  int fk = 0;
  std::vector<std::int64_t> ds;
  std::int64_t l_max = 8, M = -1;

  auto* strata = app.add_subcommand("strata", "invariants of a stratum complex");
  add_common(strata, opt);
  strata->add_option("--input", input, "stratum complex JSON")->required();
  strata->add_flag("--cross-check", opt.cross_check, "compare with the series pipeline");
  strata->add_option("--restrict-flag", flags, "keep strata carrying this flag, or all of whose divisors carry it");
  strata->add_option("--restrict-meets", meets, "keep strata whose closure meets a divisor with this flag");

  auto* curve = app.add_subcommand("curve", "resolve a plane curve germ");
  add_common(curve, opt);
  curve->add_option("--fk", fk, "the family x = t^(2^k), y = sum of t^(2^k + ... )")->check(CLI::Range(1, 30));
  curve->add_option("--newton-pairs", pairs, "comma-separated khat/rhat list, e.g. 3/2,1/2");
  curve->add_option("--param", param, "branch parameterization JSON");
  curve->add_flag("--cross-check", opt.cross_check, "compare pole pipelines and the closed forms");

  auto* arr = app.add_subcommand("arrangement", "central hyperplane arrangement");
  add_common(arr, opt);
  arr->add_option("--input", input, "arrangement JSON")->required();
  arr->add_flag("--cross-check", opt.cross_check, "compare with the series pipeline");

  auto* contact = app.add_subcommand("contact", "codimensions of contact loci");
  add_common(contact, opt);
  contact->add_option("--input", input, "stratum complex JSON")->required();
  contact->add_option("--d", ds, "residues d (default 1)");
  contact->add_option("--l-max", l_max, "samples m = lN + d for l = 0..l-max")->capture_default_str();
  contact->add_option("--restrict-flag", flags, "as for strata");
  contact->add_option("--restrict-meets", meets, "as for strata");

  auto* series = app.add_subcommand("series", "top-degree transform and poles of a rational series");
  add_common(series, opt);
  series->add_option("--expr", input, "standard expression JSON")->required();
  series->add_option("--mode", mode, "per_root or rv")->check(CLI::IsMember({"per_root", "rv"}))->capture_default_str();
  series->add_option("--expand-order", M, "expansion order (default covers two periods past the transients)");
  series->add_flag("--cross-check", opt.cross_check, "compare with root-by-root multiplicities");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "usage", e.what());
    return kInvalid;
  }

  try {
    if (strata->parsed()) return run_strata(opt, input, flags, meets, out);
    if (curve->parsed()) return run_curve(opt, fk, pairs, param, out);
    if (arr->parsed()) return run_arrangement(opt, input, out);
    if (contact->parsed()) return run_contact(opt, input, ds, l_max, flags, meets, out);
    if (series->parsed()) return run_series(opt, input, mode, M, out);
  } catch (const ValidationError& e) {
    diagnose(err, "validation", e.what());
    return kInvalid;
  } catch (const Json::exception& e) {
    diagnose(err, "validation", e.what());
    return kInvalid;
  } catch (const EnumCapError& e) {
    diagnose(err, "enumeration_cap", e.what(), {{"size", e.size}, {"cap", e.cap}});
    return kCap;
  } catch (const Mismatch& e) {
    diagnose(err, "cross_check", e.what());
    return kMismatch;
  } catch (const std::overflow_error& e) {
    diagnose(err, "validation", std::string("input too large: ") + e.what());
    return kInvalid;
  } catch (const std::exception& e) {
    diagnose(err, "internal", e.what());
    return 1;
  }
  return kInvalid;
}

}  // namespace tdz
