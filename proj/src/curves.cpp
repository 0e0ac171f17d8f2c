#include "tdz/curves.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace tdz {

// ---------------------------------------------------------------------------
// Newton pairs and parameterizations

void validate_newton_pairs(const NewtonPairs& p) {
  if (p.empty()) throw ValidationError("at least one Newton pair is required");
  for (std::size_t j = 0; j < p.size(); ++j) {
    const auto [k, r] = p[j];
    const std::string at = "Newton pair " + std::to_string(j + 1);
    if (k < 1 || r < 2) throw ValidationError(at + " needs khat >= 1 and rhat >= 2");
    if (std::gcd(k, r) != 1) throw ValidationError(at + " is not coprime");
  }
}

NewtonPairs parse_newton_pairs(const std::string& s) {
  NewtonPairs out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) throw ValidationError("Newton pair '" + item + "' is not of the form k/r");
    try {
      std::size_t a = 0, b = 0;
      const std::string ks = item.substr(0, slash), rs = item.substr(slash + 1);
      const long long k = std::stoll(ks, &a), r = std::stoll(rs, &b);
      if (a != ks.size() || b != rs.size()) throw std::invalid_argument(item);
      out.emplace_back(k, r);
    } catch (const std::logic_error&) {
      throw ValidationError("Newton pair '" + item + "' is not of the form k/r");
    }
  }
  validate_newton_pairs(out);
  return out;
}

std::string to_string(const NewtonPairs& p) {
  std::string s;
  for (const auto& [k, r] : p) s += (s.empty() ? "" : ",") + std::to_string(k) + "/" + std::to_string(r);
  return s;
}

BranchParam param_from_newton_pairs(const NewtonPairs& p) {
  validate_newton_pairs(p);
  const std::size_t g = p.size();
  std::vector<std::int64_t> r(g + 1, 1), kappa(g);
  for (std::size_t j = g; j-- > 0;) r[j] = r[j + 1] * p[j].second;
  for (std::size_t j = 0; j < g; ++j) kappa[j] = p[j].first * r[j + 1];
  BranchParam b;
  b.x.push_back({r[0], Rat(1)});
  std::int64_t s = 0;
  for (std::size_t j = 0; j < g; ++j) {
    s += kappa[j];
    b.y.push_back({s, Rat(1)});
  }
  return b;
}

BranchParam fk_family(int k) {
  if (k < 1 || k > 30) throw ValidationError("k must lie in 1..30");
  BranchParam b;
  const std::int64_t top = std::int64_t{1} << k;
  b.x.push_back({top, Rat(1)});
  std::int64_t e = top;
  for (int j = 1; j <= k; ++j) {
    e += top >> j;
    b.y.push_back({e, Rat(1)});
  }
  return b;
}

// ---------------------------------------------------------------------------
// Truncated power series in t with rational coefficients

namespace {

constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

struct Insufficient {};

struct Duplicate {
  int drop, keep;
  bool approximate;
};

struct PSeries {
  std::vector<Rat> c;
  std::int64_t known = kExact;  // coefficients up to this exponent are correct

  bool exact() const { return known >= kExact; }
  Rat at(std::int64_t i) const { return i < static_cast<std::int64_t>(c.size()) ? c[i] : Rat(0); }
  std::int64_t stored() const { return static_cast<std::int64_t>(c.size()); }

  // nullopt for the zero series
  std::optional<std::int64_t> ord() const {
    const std::int64_t lim = std::min(known, stored() - 1);
    for (std::int64_t i = 0; i <= lim; ++i)
      if (c[i] != 0) return i;
    if (exact()) return std::nullopt;
    throw Insufficient{};
  }
  std::int64_t ord_or_inf() const {
    auto o = ord();
    return o ? *o : kExact;
  }
  // first nonzero index among known terms, or known + 1
  std::int64_t ord_lower_bound() const {
    const std::int64_t lim = std::min(known, stored() - 1);
    for (std::int64_t i = 0; i <= lim; ++i)
      if (c[i] != 0) return i;
    return exact() ? kExact : known + 1;
  }
  bool is_monomial() const {
    return exact() && std::count_if(c.begin(), c.end(), [](const Rat& r) { return r != 0; }) == 1;
  }
  void normalize(std::int64_t W) {
    if (!exact()) {
      known = std::min(known, W);
      if (stored() > known + 1) c.resize(known + 1);
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

PSeries from_terms(const std::vector<std::pair<std::int64_t, Rat>>& terms) {
  PSeries s;
  for (const auto& [e, r] : terms) {
    if (e >= s.stored()) s.c.resize(e + 1);
    s.c[e] += r;
  }
  s.normalize(kExact);
  return s;
}

PSeries sub(const PSeries& a, const PSeries& b, std::int64_t W) {
  PSeries r;
  r.known = std::min(a.known, b.known);
  std::int64_t n = std::max(a.stored(), b.stored());
  if (!r.exact()) n = std::min(n, r.known + 1);
  r.c.resize(std::max<std::int64_t>(n, 0));
  for (std::int64_t i = 0; i < n; ++i) r.c[i] = a.at(i) - b.at(i);
  r.normalize(W);
  return r;
}

PSeries mul(const PSeries& a, const PSeries& b, std::int64_t W) {
  PSeries r;
  const std::int64_t oa = a.ord_lower_bound(), ob = b.ord_lower_bound();
  if (a.exact() && b.exact()) {
    r.known = kExact;
  } else {
    r.known = std::min(a.exact() ? kExact : a.known + ob, b.exact() ? kExact : b.known + oa);
    r.known = std::min(r.known, W);
  }
  std::int64_t n = a.stored() + b.stored();
  if (!r.exact()) n = std::min(n, r.known + 1);
  r.c.assign(std::max<std::int64_t>(n, 0), Rat(0));
  for (std::int64_t i = 0; i < a.stored(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::int64_t j = 0; j < b.stored() && i + j < n; ++j)
      if (b.c[j] != 0) r.c[i + j] += a.c[i] * b.c[j];
  }
  r.normalize(W);
  return r;
}

PSeries shift_down(const PSeries& a, std::int64_t k) {
  PSeries r;
  r.known = a.exact() ? kExact : a.known - k;
  if (k < a.stored()) r.c.assign(a.c.begin() + k, a.c.end());
  return r;
}

// v / u with ord v >= ord u.
PSeries divide(const PSeries& v, const PSeries& u, std::int64_t W) {
  const std::int64_t a = *u.ord();
  PSeries U = shift_down(u, a), V = shift_down(v, a);
  PSeries q;
  if (U.exact() && V.exact() && U.stored() == 1) {
    q.c = V.c;
    for (auto& x : q.c) x /= U.c[0];
    q.normalize(W);
    return q;
  }
  q.known = std::min({U.known, V.known, W});
  if (q.known < 0) throw Insufficient{};
  q.c.assign(q.known + 1, Rat(0));
  for (std::int64_t n = 0; n <= q.known; ++n) {
    Rat s = V.at(n);
    for (std::int64_t i = 1; i <= n && i < U.stored(); ++i)
      if (U.c[i] != 0) s -= U.c[i] * q.c[n - i];
    q.c[n] = s / U.c[0];
  }
  q.normalize(W);
  return q;
}

PSeries power(const PSeries& u, std::int64_t k, std::int64_t W) {
  PSeries r;
  r.c = {Rat(1)};
  for (std::int64_t i = 0; i < k; ++i) r = mul(r, u, W);
  return r;
}

// ---------------------------------------------------------------------------
// Blow-up engine

struct Axis {
  int divisor = -1;                 // -1 for a coordinate axis that is not a divisor
  NewtonPair pair{0, 1};
};

struct Branch {
  int id;
  PSeries u, v;
};

struct Point {
  Axis au, av;  // {u = 0} and {v = 0}
  std::vector<Branch> branches;
  int level = 1;
  NewtonPairs prefix;
  bool level_start = false;
  int together = 0;  // consecutive blow-ups with several smooth branches
};

struct Proto {
  std::int64_t N, nu;
  int level;
  NewtonPairs prefix;
  NewtonPair pair;
  bool level_end = false;
};

struct Engine {
  std::int64_t W;
  bool merge_duplicates;
  bool unibranch;
  std::vector<Proto> exc;
  std::vector<std::pair<int, int>> strict_on;  // (branch, divisor or -1)
  std::map<std::pair<int, int>, int> edges;    // exceptional indices, strict as -(branch + 1)
  void add_edge(int a, int b, int k = 1) {
    const std::pair<int, int> key = std::minmax(a, b);
    edges[{key.first, key.second}] += k;
    if (edges[{key.first, key.second}] == 0) edges.erase({key.first, key.second});
  }

  static bool smooth(const Branch& b) { return std::min(b.u.ord_or_inf(), b.v.ord_or_inf()) == 1; }

  // Removes v-terms that are powers of u; {u = 0} is fixed, {v = 0} is not a divisor.
  void tschirnhausen(Branch& b) {
    while (true) {
      const std::int64_t n = b.u.ord_or_inf(), m = b.v.ord_or_inf();
      if (n < 2 || m >= kExact || m % n != 0) return;
      const std::int64_t k = m / n;
      PSeries uk = power(b.u, k, W);
      Rat lam = b.v.at(m) / uk.at(m);
      PSeries s = uk;
      for (auto& x : s.c) x *= lam;
      b.v = sub(b.v, s, W);
    }
  }

  void finish(Point& P) {
    for (const auto& b : P.branches) {
      int on = -1;
      if (P.au.divisor >= 0) on = P.au.divisor;
      if (P.av.divisor >= 0) on = P.av.divisor;
      strict_on.push_back({b.id, on});
      if (on >= 0) add_edge(on, -(b.id + 1));
    }
    if (P.branches.size() == 2) add_edge(-(P.branches[0].id + 1), -(P.branches[1].id + 1));
  }

  bool is_snc(const Point& P) const {
    const int D = (P.au.divisor >= 0) + (P.av.divisor >= 0);
    const auto& br = P.branches;
    for (const auto& b : br)
      if (!smooth(b)) return false;
    if (br.size() == 1) {
      if (D == 0) return true;
      if (D == 2) return false;
      const auto& b = br[0];
      return P.au.divisor >= 0 ? b.u.ord_or_inf() == 1 : b.v.ord_or_inf() == 1;
    }
    if (br.size() == 2 && D == 0) {
      const auto& a = br[0];
      const auto& b = br[1];
      return a.u.at(1) * b.v.at(1) - a.v.at(1) * b.u.at(1) != 0;
    }
    return false;
  }

  // Two branches through P with the same exact zero coordinate are one germ.
  static void find_duplicate(const Point& P) {
    const auto& br = P.branches;
    for (std::size_t i = 0; i < br.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const bool same_v = br[i].v.exact() && br[j].v.exact() && !br[i].v.ord() && !br[j].v.ord();
        const bool same_u = br[i].u.exact() && br[j].u.exact() && !br[i].u.ord() && !br[j].u.ord();
        if (same_v || same_u) throw Duplicate{std::max(br[i].id, br[j].id), std::min(br[i].id, br[j].id), false};
      }
  }

  void process(Point P) {
    if (P.branches.empty()) return;
    if (unibranch && P.level_start) tschirnhausen(P.branches[0]);
    if (P.branches.size() > 1) find_duplicate(P);
    if (is_snc(P)) {
      finish(P);
      return;
    }
    bool all_smooth = P.branches.size() > 1;
    for (const auto& b : P.branches) all_smooth = all_smooth && smooth(b);
    P.together = all_smooth ? P.together + 1 : 0;
    if (P.together > W) {
      if (!merge_duplicates) throw Insufficient{};
      throw Duplicate{P.branches[1].id, P.branches[0].id, true};
    }

    // blow up P
    const int D = (P.au.divisor >= 0) + (P.av.divisor >= 0);
    Proto e{0, 2 - D, P.level, P.prefix, {P.au.pair.first + P.av.pair.first, P.au.pair.second + P.av.pair.second}};
    for (const Axis* ax : {&P.au, &P.av})
      if (ax->divisor >= 0) {
        e.N += exc[ax->divisor].N;
        e.nu += exc[ax->divisor].nu;
      }
    for (const auto& b : P.branches) e.N += std::min(b.u.ord_or_inf(), b.v.ord_or_inf());
    const int E = static_cast<int>(exc.size());
    exc.push_back(e);
    for (const Axis* ax : {&P.au, &P.av})
      if (ax->divisor >= 0) add_edge(E, ax->divisor);
    if (D == 2) add_edge(P.au.divisor, P.av.divisor, -1);

    Point along_u, along_v;  // tangent to {v = 0}, tangent to {u = 0}
    std::vector<std::pair<Rat, Point>> slopes;
    for (auto& b : P.branches) {
      const std::int64_t a = b.u.ord_or_inf(), c = b.v.ord_or_inf();
      if (a < c) {
        b.v = divide(b.v, b.u, W);
        along_u.branches.push_back(std::move(b));
      } else if (a > c) {
        PSeries nu = b.v, nv = divide(b.u, b.v, W);
        b.u = std::move(nu);
        b.v = std::move(nv);
        along_v.branches.push_back(std::move(b));
      } else {
        const Rat lam = b.v.at(c) / b.u.at(a);
        PSeries q = divide(b.v, b.u, W);
        PSeries l;
        l.c = {lam};
        b.v = sub(q, l, W);
        auto it = std::find_if(slopes.begin(), slopes.end(), [&](const auto& s) { return s.first == lam; });
        if (it == slopes.end()) {
          slopes.push_back({lam, Point{}});
          it = slopes.end() - 1;
        }
        it->second.branches.push_back(std::move(b));
      }
    }
    const Axis ae{E, e.pair};
    along_u.au = ae;
    along_u.av = P.av;
    along_v.au = ae;
    along_v.av = P.au;
    for (Point* q : {&along_u, &along_v}) {
      q->level = P.level;
      q->prefix = P.prefix;
      q->together = P.together;
    }
    if (!slopes.empty()) exc[E].level_end = true;
    process(std::move(along_u));
    process(std::move(along_v));
    for (auto& [lam, q] : slopes) {
      q.au = Axis{E, {0, 1}};
      q.av = Axis{-1, {1, 0}};
      q.level = P.level + 1;
      q.prefix = P.prefix;
      q.prefix.push_back(e.pair);
      q.level_start = true;
      q.together = P.together;
      process(std::move(q));
    }
  }
};

std::string group_of(const Proto& p, const NewtonPairs& branch) {
  const std::size_t j = p.level;
  if (j > branch.size()) return "H_" + std::to_string(j);
  const auto [k, r] = branch[j - 1];
  // compare pair fraction with the target k/r
  const __int128 lhs = static_cast<__int128>(p.pair.first) * r, rhs = static_cast<__int128>(k) * p.pair.second;
  const std::string js = std::to_string(j);
  if (lhs == rhs) return "R_" + js;
  if (lhs < rhs) return j == 1 ? "V_1'" : "H_" + js;
  return "V_" + js;
}

}  // namespace

int CurveGraph::valency(int v) const {
  int n = 0;
  for (const auto& [e, k] : edges)
    if (e.first == v || e.second == v) n += k;
  return n;
}

CurveGraph resolve_branches(const std::vector<BranchParam>& branches, const ResolveOptions& opt) {
  if (branches.empty()) throw ValidationError("at least one branch is required");
  std::vector<Branch> init;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& b = branches[i];
    std::int64_t g = 0;
    for (const auto* side : {&b.x, &b.y})
      for (const auto& [e, c] : *side) {
        if (e < 1) throw ValidationError("branch " + std::to_string(i + 1) + " has a non-positive exponent");
        if (c != 0) g = std::gcd(g, e);
      }
    Branch br{static_cast<int>(i), from_terms(b.x), from_terms(b.y)};
    if (!br.u.ord() && !br.v.ord()) throw ValidationError("branch " + std::to_string(i + 1) + " is constant");
    if (g > 1)
      throw ValidationError("branch " + std::to_string(i + 1) + " is parameterized non-injectively (gcd of exponents " +
                            std::to_string(g) + ")");
    init.push_back(std::move(br));
  }

  std::vector<std::string> notes;
  bool swapped = false;
  for (std::int64_t W = opt.initial_precision;; W *= 2) {
    const bool last = W * 2 > opt.max_precision;
    const bool unibranch = init.size() == 1;
    if (unibranch && init[0].u.ord_or_inf() > init[0].v.ord_or_inf()) {
      std::swap(init[0].u, init[0].v);
      swapped = true;
    }
    Engine eng{W, last, unibranch, {}, {}, {}};
    Point origin;
    origin.au = Axis{-1, {0, 1}};
    origin.av = Axis{-1, {1, 0}};
    origin.branches = init;
    origin.level_start = true;
    try {
      eng.process(std::move(origin));
    } catch (const Insufficient&) {
      if (last) throw ValidationError("insufficient truncation: raise the precision limit");
      continue;
    } catch (const Duplicate& d) {
      notes.push_back("branch " + std::to_string(d.drop + 1) + " is the same germ as branch " +
                      std::to_string(d.keep + 1) +
                      (d.approximate ? " to the working precision; merged" : "; merged"));
      std::erase_if(init, [&](const Branch& b) { return b.id == d.drop; });
      W /= 2;
      continue;
    }

    CurveGraph g;
    if (swapped) g.notes.push_back("coordinates exchanged so that ord x < ord y");
    for (auto& n : notes) g.notes.push_back(std::move(n));
    if (eng.exc.empty() && unibranch) g.notes.push_back("smooth input: no blow-ups needed");

    const int k = static_cast<int>(eng.exc.size());
    NewtonPairs bp;
    for (const auto& p : eng.exc)
      if (p.level_end) bp.push_back(p.pair);
    if (unibranch && k > 0) g.branch_pairs = bp;
    for (int i = 0; i < k; ++i) {
      const auto& p = eng.exc[i];
      CurveVertex v;
      v.id = "E" + std::to_string(i + 1);
      v.N = p.N;
      v.nu = p.nu;
      if (unibranch) {
        v.pairs = p.prefix;
        v.pairs.push_back(p.pair);
        v.group = group_of(p, bp);
      }
      g.vertices.push_back(std::move(v));
    }
    std::map<int, int> strict_index;
    for (const auto& [b, on] : eng.strict_on) {
      if (strict_index.count(b)) continue;
      strict_index[b] = static_cast<int>(g.vertices.size());
      CurveVertex v;
      v.id = "E" + std::to_string(g.vertices.size() + 1);
      v.strict = true;
      if (unibranch) v.group = "strict";
      g.vertices.push_back(std::move(v));
    }
    auto idx = [&](int x) { return x >= 0 ? x : strict_index.at(-x - 1); };
    for (const auto& [e, cnt] : eng.edges) {
      const std::pair<int, int> key = std::minmax(idx(e.first), idx(e.second));
      g.edges[{key.first, key.second}] += cnt;
    }
    for (int i = 0; i < k; ++i) g.vertices[i].rupture = g.valency(i) >= 3;
    if (unibranch)
      for (int i = 0; i < k; ++i)
        if (g.vertices[i].rupture != eng.exc[i].level_end)
          throw std::logic_error("rupture vertices do not match the ends of the blow-up levels");
    return g;
  }
}

StratumComplex complex_from_graph(const CurveGraph& g) {
  StratumComplex c;
  c.ambient_dim = 2;
  for (const auto& v : g.vertices) {
    std::set<std::string> flags{v.strict ? "strict_transform" : "exceptional"};
    if (v.rupture) flags.insert("rupture");
    c.add_divisor(v.id, v.N, v.nu, flags);
  }
  for (const auto& [e, k] : g.edges) c.add_stratum(Stratum{e.first, e.second}, k);
  return c;
}

std::string CurveGraph::to_dot() const {
  std::ostringstream o;
  o << "graph resolution {\n";
  for (const auto& v : vertices) {
    o << "  " << v.id << " [label=\"" << v.id << " N=" << v.N << " ν=" << v.nu
      << " α=" << to_string(make_rat(v.nu, v.N)) << "\"";
    if (v.strict) o << ", shape=box";
    else if (v.rupture) o << ", peripheries=2";
    o << "];\n";
  }
  for (const auto& [e, k] : edges) {
    const auto& a = vertices[e.first];
    const auto& b = vertices[e.second];
    for (int i = 0; i < k; ++i)
      o << "  " << a.id << " -- " << b.id << " [label=\"" << std::gcd(a.N, b.N) << "\"];\n";
  }
  o << "}\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Closed-form checks

GraphReport verify_graph(const CurveGraph& g) {
  if (!g.branch_pairs) throw ValidationError("graph verification needs a non-smooth unibranch resolution");
  GraphReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  const NewtonPairs& bp = *g.branch_pairs;
  const std::size_t gg = bp.size();
  std::vector<std::int64_t> r(gg + 2, 1), kappa(gg + 1, 0);
  for (std::size_t j = gg; j >= 1; --j) r[j] = r[j + 1] * bp[j - 1].second;
  for (std::size_t j = 1; j <= gg; ++j) kappa[j] = bp[j - 1].first * r[j + 1];

  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> rupture(gg + 1, -1);
  int strict = -1;
  for (int i = 0; i < n; ++i) {
    const auto& grp = g.vertices[i].group;
    if (grp.rfind("R_", 0) == 0) rupture[std::stoi(grp.substr(2))] = i;
    if (g.vertices[i].strict) strict = i;
  }
  for (std::size_t j = 1; j <= gg; ++j)
    if (rupture[j] < 0) fail("rupture vertex R_" + std::to_string(j) + " not found");
  if (!rep.ok) return rep;

  // group membership, each with the expected edge gcd
  struct Group {
    std::string name;
    std::vector<int> members;
    std::int64_t gcd;
    int dir;  // +1: alpha increases with the pair fraction, -1: decreases
    std::size_t level = 0;
  };
  std::vector<Group> groups;
  auto tagged = [&](const std::string& t) {
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
      if (g.vertices[i].group == t) v.push_back(i);
    return v;
  };
  for (std::size_t j = 1; j <= gg; ++j) {
    const std::string js = std::to_string(j);
    auto vj = tagged("V_" + js);
    vj.push_back(rupture[j]);
    groups.push_back({"V_" + js, vj, j == 1 ? kappa[1] : g.vertices[rupture[j - 1]].N + kappa[j], +1, j});
    if (j == 1) {
      auto v1p = tagged("V_1'");
      v1p.push_back(rupture[1]);
      groups.push_back({"V_1'", v1p, r[1], -1, 1});
    } else {
      auto hj = tagged("H_" + js);
      hj.push_back(rupture[j - 1]);
      hj.push_back(rupture[j]);
      groups.push_back({"H_" + js, hj, r[j], +1, j});
    }
  }
  {
    std::vector<int> last{rupture[gg]};
    if (strict >= 0) last.push_back(strict);
    groups.push_back({"H_" + std::to_string(gg + 1), last, 1, +1, gg + 1});
  }

  // (a) gcds along edges inside each group
  for (const auto& [e, k] : g.edges) rep.edge_gcd[e] = std::gcd(g.vertices[e.first].N, g.vertices[e.second].N);
  for (const auto& grp : groups)
    for (const auto& [e, k] : g.edges) {
      const bool in = std::count(grp.members.begin(), grp.members.end(), e.first) &&
                      std::count(grp.members.begin(), grp.members.end(), e.second);
      if (in && rep.edge_gcd[e] != grp.gcd)
        fail("edge " + g.vertices[e.first].id + "-" + g.vertices[e.second].id + " in " + grp.name + " has gcd " +
             std::to_string(rep.edge_gcd[e]) + ", expected " + std::to_string(grp.gcd));
    }

  // (b) multiplicities and log discrepancies from the vertex pairs
  for (int i = 0; i < n; ++i) {
    const auto& v = g.vertices[i];
    if (v.strict) continue;
    const auto& P = v.pairs;
    const std::size_t gE = P.size();
    if (gE == 0 || gE > gg) {
      fail("vertex " + v.id + " has no usable Newton pairs");
      continue;
    }
    std::vector<std::int64_t> rE(gE + 2, 1), kE(gE + 1, 0);
    for (std::size_t j = gE; j >= 1; --j) rE[j] = rE[j + 1] * P[j - 1].second;
    for (std::size_t j = 1; j <= gE; ++j) kE[j] = P[j - 1].first * rE[j + 1];
    std::int64_t N = 0;
    for (std::size_t j = 1; j < gE; ++j) N += kE[j] * r[j];
    N += std::min(kE[gE] * r[gE], kappa[gE] * rE[gE]);
    if (N != v.N) fail("vertex " + v.id + ": N = " + std::to_string(v.N) + " but the pair formula gives " + std::to_string(N));
    const auto [kh, rh] = P.back();
    const std::int64_t nu = gE == 1 ? kh + rh : kh + rh * g.vertices[rupture[gE - 1]].nu;
    if (nu != v.nu)
      fail("vertex " + v.id + ": nu = " + std::to_string(v.nu) + " but the pair formula gives " + std::to_string(nu));
  }

  // (c) monotonicity of alpha inside groups, ordered by the last pair's fraction
  for (const auto& grp : groups) {
    if (grp.name == "H_" + std::to_string(gg + 1)) {
      if (strict >= 0 && !(make_rat(g.vertices[rupture[gg]].nu, g.vertices[rupture[gg]].N) < Rat(1)))
        fail("alpha does not increase from the last rupture to the strict transform");
      continue;
    }
    auto frac = [&](int i) {
      const auto& P = g.vertices[i].pairs;
      // the left rupture of a horizontal group sits at fraction 0 of this level
      if (P.size() < grp.level) return Rat(0);
      return make_rat(P.back().first, P.back().second);
    };
    std::vector<std::pair<Rat, int>> order;
    for (int i : grp.members) order.push_back({frac(i), i});
    std::sort(order.begin(), order.end());
    for (std::size_t t = 1; t < order.size(); ++t) {
      const auto& a = g.vertices[order[t - 1].second];
      const auto& b = g.vertices[order[t].second];
      const Rat aa = make_rat(a.nu, a.N), ab = make_rat(b.nu, b.N);
      if (grp.dir > 0 ? !(aa < ab) : !(aa > ab))
        fail("alpha is not monotone in " + grp.name + " between " + a.id + " and " + b.id);
    }
  }

  // (d) remarkable numbers are the rupture alphas
  std::set<Rat> rup;
  for (std::size_t j = 1; j <= gg; ++j) rup.insert(make_rat(g.vertices[rupture[j]].nu, g.vertices[rupture[j]].N));
  if (remarkable(complex_from_graph(g)) != rup) fail("remarkable numbers differ from the rupture alphas");
  for (int i = 0; i < n; ++i)
    if (!g.vertices[i].strict && g.vertices[i].rupture != (g.valency(i) >= 3))
      fail("vertex " + g.vertices[i].id + " rupture flag disagrees with its valency");
  return rep;
}

// ---------------------------------------------------------------------------
// Monodromy

IntPoly acampo_charpoly(const CurveGraph& g) {
  IntPoly num{1, -1}, den{1};
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    const auto& v = g.vertices[i];
    if (v.strict) continue;
    const int e = g.valency(i) - 2;
    IntPoly f(v.N + 1);
    f[0] = 1;
    f[v.N] = -1;
    for (int k = 0; k < std::abs(e); ++k) (e > 0 ? num : den) = poly_mul(e > 0 ? num : den, f);
  }
  try {
    return poly_divexact(num, den);
  } catch (const std::domain_error&) {
    throw ValidationError("A'Campo product is not a polynomial; the graph is malformed");
  }
}

std::map<std::int64_t, int> cyclotomic_factors(const IntPoly& p0) {
  IntPoly p = p0;
  trim(p);
  if (p.empty()) throw std::invalid_argument("zero polynomial");
  std::map<std::int64_t, int> out;
  const std::int64_t deg = static_cast<std::int64_t>(p.size()) - 1;
  for (std::int64_t d = 1; static_cast<std::int64_t>(p.size()) > 1 && d <= 2 * deg * deg + 2; ++d) {
    if (euler_phi(d) > static_cast<std::int64_t>(p.size()) - 1) continue;
    const IntPoly f = cyclotomic(d);
    while (p.size() > 1) {
      IntPoly r = poly_rem_monic(p, f);
      if (!r.empty()) break;
      p = poly_divexact(p, f);
      ++out[d];
    }
  }
  if (p.size() != 1 || (p[0] != 1 && p[0] != -1)) throw ValidationError("polynomial is not a product of cyclotomic polynomials");
  return out;
}

Int ramanujan(std::int64_t k, std::int64_t d) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  IntPoly s(k, Int(0));
  for (std::int64_t a = 1; a <= k; ++a)
    if (std::gcd(a, k) == 1) s[mod_floor(d % k * (a % k), k)] += 1;
  IntPoly r = poly_rem_monic(s, cyclotomic(k));
  trim(r);
  if (r.size() > 1) throw std::logic_error("Ramanujan sum did not reduce to an integer");
  return r.empty() ? Int(0) : r[0];
}

}  // namespace tdz
