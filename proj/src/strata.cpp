#include "tdz/strata.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace tdz {

int StratumComplex::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < divisors.size(); ++i)
    if (divisors[i].id == id) return static_cast<int>(i);
  return -1;
}

int StratumComplex::add_divisor(std::string id, std::int64_t N, std::int64_t nu,
                                std::set<std::string> flags) {
  if (index_of(id) >= 0) throw ValidationError("duplicate divisor id " + id);
  divisors.push_back({std::move(id), N, nu, std::move(flags)});
  const int i = static_cast<int>(divisors.size()) - 1;
  strata.emplace(Stratum{i}, 1);
  return i;
}

void StratumComplex::add_stratum(const std::vector<std::string>& ids, Int components) {
  Stratum I;
  for (const auto& id : ids) {
    const int i = index_of(id);
    if (i < 0) throw ValidationError("unknown divisor id " + id);
    I.push_back(i);
  }
  add_stratum(std::move(I), std::move(components));
}

void StratumComplex::add_stratum(Stratum I, Int components) {
  std::sort(I.begin(), I.end());
  if (std::adjacent_find(I.begin(), I.end()) != I.end())
    throw ValidationError("stratum " + label(I) + " repeats a divisor");
  strata[std::move(I)] = std::move(components);
}

std::string StratumComplex::label(const Stratum& I) const {
  std::string s = "{";
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (k) s += ",";
    const int i = I[k];
    s += (i >= 0 && i < static_cast<int>(divisors.size())) ? divisors[i].id : std::to_string(i);
  }
  return s + "}";
}

StratumStats stats(const StratumComplex& c, const Stratum& I) {
  StratumStats s{0, Rat(0), 0};
  for (int i : I) {
    const auto& d = c.divisors[i];
    s.N = std::gcd(s.N, d.N);
    Rat a = make_rat(d.nu, d.N);
    if (s.m == 0 || a < s.alpha) {
      s.alpha = a;
      s.m = 1;
    } else if (a == s.alpha) {
      ++s.m;
    }
  }
  return s;
}

std::vector<std::string> validate(const StratumComplex& c) {
  std::vector<std::string> v;
  if (c.ambient_dim < 1) v.push_back("ambient dimension must be positive");
  std::set<std::string> ids;
  for (const auto& d : c.divisors) {
    if (!ids.insert(d.id).second) v.push_back("duplicate divisor id " + d.id);
    if (d.N <= 0) v.push_back("divisor " + d.id + " has N <= 0");
    if (d.nu <= 0) v.push_back("divisor " + d.id + " has nu <= 0");
  }
  const int n = static_cast<int>(c.divisors.size());
  for (int i = 0; i < n; ++i)
    if (!c.strata.count(Stratum{i})) v.push_back("missing singleton stratum {" + c.divisors[i].id + "}");
  for (const auto& [I, comp] : c.strata) {
    if (I.empty()) {
      v.push_back("empty stratum");
      continue;
    }
    if (std::any_of(I.begin(), I.end(), [&](int i) { return i < 0 || i >= n; })) {
      v.push_back("stratum refers to an unknown divisor");
      continue;
    }
    if (comp <= 0) v.push_back("stratum " + c.label(I) + " has no components");
    if (static_cast<int>(I.size()) > c.ambient_dim)
      v.push_back("stratum " + c.label(I) + " exceeds the ambient dimension");
    if (I.size() > 1 && I.size() < 20) {
      const std::uint32_t full = (1u << I.size()) - 1;
      for (std::uint32_t mask = 1; mask < full; ++mask) {
        Stratum J;
        for (std::size_t k = 0; k < I.size(); ++k)
          if (mask >> k & 1) J.push_back(I[k]);
        if (J.size() > 1 && !c.strata.count(J))
          v.push_back("stratum " + c.label(I) + " present but its face " + c.label(J) + " is missing");
      }
    }
  }
  return v;
}

void require_valid(const StratumComplex& c) {
  auto v = validate(c);
  if (v.empty()) return;
  std::string msg = "invalid stratum complex:";
  for (const auto& s : v) msg += "\n  " + s;
  throw ValidationError(msg);
}

std::int64_t period(const StratumComplex& c) {
  std::int64_t N = 1;
  for (const auto& d : c.divisors) N = lcm64(N, d.N);
  return N;
}

Rat lct(const StratumComplex& c) {
  if (c.divisors.empty()) throw ValidationError("complex has no divisors");
  Rat best = make_rat(c.divisors[0].nu, c.divisors[0].N);
  for (const auto& d : c.divisors) best = std::min(best, make_rat(d.nu, d.N));
  return best;
}

std::set<Rat> remarkable(const StratumComplex& c) {
  std::vector<StratumStats> st;
  for (const auto& [I, comp] : c.strata) st.push_back(stats(c, I));
  std::set<Rat> out;
  for (const auto& s : st) {
    bool ok = true;
    for (const auto& t : st)
      if (t.alpha < s.alpha && s.N % t.N == 0) {
        ok = false;
        break;
      }
    if (ok) out.insert(s.alpha);
  }
  return out;
}

std::optional<Rat> d_lct(const StratumComplex& c, std::int64_t d) {
  std::optional<Rat> best;
  for (const auto& [I, comp] : c.strata) {
    auto s = stats(c, I);
    if (d % s.N == 0 && (!best || s.alpha < *best)) best = s.alpha;
  }
  return best;
}

DlctTable::DlctTable(const StratumComplex& c) : N_(tdz::period(c)) {
  std::map<std::int64_t, Rat> by_n;  // smallest alpha per N_I
  for (const auto& [I, comp] : c.strata) {
    auto s = stats(c, I);
    auto it = by_n.find(s.N);
    if (it == by_n.end() || s.alpha < it->second) by_n[s.N] = s.alpha;
  }
  for (auto d : divisors(N_)) {
    std::optional<Rat> best;
    for (const auto& [n, a] : by_n)
      if (d % n == 0 && (!best || a < *best)) best = a;
    v_[d] = best;
  }
}

std::optional<Rat> DlctTable::at(std::int64_t d) const {
  if (d <= 0) throw std::invalid_argument("d-lct needs d >= 1");
  return v_.at(std::gcd(d, N_));
}

std::set<Rat> remarkable_via_dlct(const StratumComplex& c) {
  std::set<Rat> out;
  const DlctTable t(c);
  for (const auto& [d, v] : t.by_divisor())
    if (v) out.insert(*v);
  return out;
}

std::set<Rat> j_remarkable(const StratumComplex& c, std::int64_t j) {
  if (j <= 0) throw std::invalid_argument("j must be positive");
  std::vector<StratumStats> st;
  for (const auto& [I, comp] : c.strata) st.push_back(stats(c, I));
  std::set<Rat> out;
  for (const auto& s : st) {
    bool ok = true;
    for (const auto& t : st)
      if (t.alpha < s.alpha && (static_cast<__int128>(j) * s.N) % t.N == 0) {
        ok = false;
        break;
      }
    if (ok) out.insert(s.alpha);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pole orders

namespace {

struct Tuple {
  std::int64_t w;
  std::int64_t k;   // floor(N_a / N)
  std::int64_t nu;  // nu_a
};

// Calls f on every a in prod {1..N/N_i}.
template <class F>
void for_each_tuple(const StratumComplex& c, const Stratum& I, std::int64_t N, F&& f) {
  const std::size_t s = I.size();
  std::vector<std::int64_t> a(s, 1), lim(s), Ni(s), nui(s);
  std::int64_t Na = 0, nua = 0;
  for (std::size_t t = 0; t < s; ++t) {
    Ni[t] = c.divisors[I[t]].N;
    nui[t] = c.divisors[I[t]].nu;
    lim[t] = N / Ni[t];
    Na += Ni[t];
    nua += nui[t];
  }
  while (true) {
    f(Tuple{Na % N, Na / N, nua});
    std::size_t t = 0;
    for (; t < s; ++t) {
      if (a[t] < lim[t]) {
        ++a[t];
        Na += Ni[t];
        nua += nui[t];
        break;
      }
      Na -= (a[t] - 1) * Ni[t];
      nua -= (a[t] - 1) * nui[t];
      a[t] = 1;
    }
    if (t == s) return;
  }
}

std::uint64_t tuple_count(const StratumComplex& c, const Stratum& I, std::int64_t N) {
  std::uint64_t n = 1;
  for (int i : I) {
    const auto f = static_cast<std::uint64_t>(N / c.divisors[i].N);
    if (f != 0 && n > UINT64_MAX / f) return UINT64_MAX;
    n *= f;
  }
  return n;
}

struct Best {
  __int128 r;
  int m;
};

using BestMap = std::unordered_map<std::int64_t, Best>;

void merge_best(BestMap& into, std::int64_t w, __int128 r, int m) {
  auto [it, fresh] = into.try_emplace(w, Best{r, m});
  if (fresh) return;
  if (r < it->second.r) it->second = {r, m};
  else if (r == it->second.r) it->second.m = std::max(it->second.m, m);
}

}  // namespace

PoleReport pole_report(const StratumComplex& c, const PoleOptions& opt) {
  require_valid(c);
  const std::int64_t N = period(c);
  const DlctTable dl(c);
  auto min_alpha = [&](std::int64_t w) { return dl.at(w == 0 ? N : std::gcd(w, N)); };

  // candidate strata per alpha: those not undercut along their own residues
  std::map<Rat, std::vector<std::pair<Stratum, int>>> cand;
  for (const auto& [I, comp] : c.strata) {
    auto s = stats(c, I);
    if (dl.at(s.N) == s.alpha) cand[s.alpha].push_back({I, s.m});
  }

  PoleReport out;
  std::uint64_t budget = 0;
  for (const auto& [alpha, list] : cand) {
    int maxm = 1;
    for (const auto& e : list) maxm = std::max(maxm, e.second);
    if (maxm == 1) {
      out[-alpha] = 1;
      continue;
    }
    for (const auto& e : list) {
      auto n = tuple_count(c, e.first, N);
      budget = (n > UINT64_MAX - budget) ? UINT64_MAX : budget + n;
    }
    if (budget > opt.cap) {
      std::ostringstream msg;
      msg << "pole enumeration needs " << budget << " tuples, above the cap of " << opt.cap;
      throw EnumCapError(msg.str(), budget, opt.cap);
    }
    const __int128 p = to_i64(alpha.get_num()), q = to_i64(alpha.get_den());
    auto scan = [&](std::size_t from, std::size_t step, BestMap& local) {
      for (std::size_t x = from; x < list.size(); x += step) {
        const auto& [I, m] = list[x];
        for_each_tuple(c, I, N, [&](const Tuple& t) {
          if (min_alpha(t.w) != alpha) return;
          // q * r_a
          merge_best(local, t.w, q * t.nu - p * t.k * N, m);
        });
      }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(opt.threads, list.size()));
    std::vector<BestMap> parts(threads);
    if (threads == 1) {
      scan(0, 1, parts[0]);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(scan, t, threads, std::ref(parts[t]));
      for (auto& th : pool) th.join();
    }
    BestMap all = std::move(parts[0]);
    for (std::size_t t = 1; t < threads; ++t)
      for (const auto& [w, b] : parts[t]) merge_best(all, w, b.r, b.m);
    int order = 0;
    for (const auto& [w, b] : all) order = std::max(order, b.m);
    if (order > 0) out[-alpha] = order;
  }
  return out;
}

namespace {

struct LiteralData {
  struct Entry {
    std::int64_t w;
    Rat alpha, r;
    int m;
  };
  std::vector<Entry> entries;
  std::map<std::int64_t, Rat> min_alpha;
  std::map<std::pair<std::int64_t, Rat>, std::pair<Rat, Rat>> r_range;  // (w, alpha) -> (min r, max r)
};

LiteralData literal_data(const StratumComplex& c) {
  require_valid(c);
  const std::int64_t N = period(c);
  LiteralData d;
  for (const auto& [I, comp] : c.strata) {
    auto s = stats(c, I);
    for_each_tuple(c, I, N, [&](const Tuple& t) {
      Rat r = Rat(t.nu) - s.alpha * Rat(t.k) * Rat(N);
      d.entries.push_back({t.w, s.alpha, r, s.m});
      auto [ma, fresh] = d.min_alpha.try_emplace(t.w, s.alpha);
      if (!fresh && s.alpha < ma->second) ma->second = s.alpha;
      auto [rr, nw] = d.r_range.try_emplace({t.w, s.alpha}, r, r);
      if (!nw) {
        rr->second.first = std::min(rr->second.first, r);
        rr->second.second = std::max(rr->second.second, r);
      }
    });
  }
  return d;
}

bool literal_predicate(const LiteralData& d, const Rat& alpha, int m, bool printed) {
  for (const auto& e : d.entries) {
    if (e.alpha != alpha || e.m < m) continue;
    if (d.min_alpha.at(e.w) < alpha) continue;
    if (m > 1) {
      const auto& [lo, hi] = d.r_range.at({e.w, alpha});
      if (printed ? (e.r < hi) : (lo < e.r)) continue;
    }
    return true;
  }
  return false;
}

}  // namespace

bool pole_order_at_least(const StratumComplex& c, const Rat& alpha, int m) {
  return literal_predicate(literal_data(c), alpha, m, false);
}

PoleReport pole_report_literal(const StratumComplex& c, bool printed_blocking) {
  const LiteralData d = literal_data(c);
  std::map<Rat, int> top_m;
  for (const auto& e : d.entries) top_m[e.alpha] = std::max(top_m[e.alpha], e.m);
  PoleReport out;
  for (const auto& [alpha, mm] : top_m)
    for (int m = mm; m >= 1; --m)
      if (literal_predicate(d, alpha, m, printed_blocking)) {
        out[-alpha] = m;
        break;
      }
  return out;
}

// ---------------------------------------------------------------------------
// Zeta assembly

namespace {

std::vector<BasicTerm> assemble_terms(const StratumComplex& c, char tag, std::int64_t scale) {
  require_valid(c);
  const std::int64_t n = c.ambient_dim;
  std::vector<BasicTerm> out;
  {
    BasicTerm empty{TPoly(tag), {}};
    empty.B.add_term(0, scale * n, 1);
    out.push_back(std::move(empty));
  }
  for (const auto& [I, comp] : c.strata) {
    std::int64_t nu = 0, N = 0;
    BasicTerm t{TPoly(tag), {}};
    for (int i : I) {
      nu += c.divisors[i].nu;
      N += c.divisors[i].N;
      t.factors.push_back({1, -scale * c.divisors[i].nu, c.divisors[i].N});
    }
    t.B.add_term(N, scale * (n - nu), comp);
    out.push_back(std::move(t));
  }
  return out;
}

StandardExpr assemble_common(const StratumComplex& c, char tag, std::int64_t scale) {
  require_valid(c);
  const std::int64_t n = c.ambient_dim;
  const int k = static_cast<int>(c.divisors.size());
  std::vector<DenFactor> den;
  for (const auto& d : c.divisors) den.push_back({scale * d.nu, d.N, 1});
  auto cofactor = [&](const Stratum& I, TPoly p) {
    for (int i = 0; i < k; ++i)
      if (!std::binary_search(I.begin(), I.end(), i))
        p.mul_binomial(LaurentPoly::monomial(tag, -scale * c.divisors[i].nu), c.divisors[i].N);
    return p;
  };
  TPoly num(tag);
  {
    TPoly e(tag);
    e.add_term(0, scale * n, 1);
    num += cofactor({}, e);
  }
  for (const auto& [I, comp] : c.strata) {
    std::int64_t nu = 0, N = 0;
    for (int i : I) {
      nu += c.divisors[i].nu;
      N += c.divisors[i].N;
    }
    TPoly t(tag);
    t.add_term(N, scale * (n - nu), comp);
    num += cofactor(I, t);
  }
  num.trim();
  return {num, den};
}

}  // namespace

std::vector<BasicTerm> assemble_rho_terms(const StratumComplex& c) { return assemble_terms(c, 'L', 1); }
std::vector<BasicTerm> assemble_vp_terms(const StratumComplex& c) { return assemble_terms(c, 'w', 2); }
StandardExpr assemble_rho_bir(const StratumComplex& c) { return assemble_common(c, 'L', 1); }
StandardExpr assemble_vp_top(const StratumComplex& c) { return assemble_common(c, 'w', 2); }

PoleReport pole_report_series(const StratumComplex& c) {
  return poles(td_expr(assemble_rho_terms(c)).rational, PoleMode::PerRoot);
}

// ---------------------------------------------------------------------------
// Surgery

StratumComplex blowup_point(const StratumComplex& c, const Stratum& I0) {
  if (c.ambient_dim != 2) throw ValidationError("point blow-ups are implemented for surfaces only");
  Stratum I = I0;
  std::sort(I.begin(), I.end());
  if (I.empty() || I.size() > 2) throw ValidationError("a point blow-up centre meets one or two divisors");
  auto it = c.strata.find(I);
  if (it == c.strata.end()) throw ValidationError("centre " + c.label(I) + " is not a stratum");
  StratumComplex out = c;
  std::int64_t N = 0, nu = 2 - static_cast<std::int64_t>(I.size());
  for (int i : I) {
    N += c.divisors[i].N;
    nu += c.divisors[i].nu;
  }
  std::size_t k = c.divisors.size() + 1;
  while (out.index_of("E" + std::to_string(k)) >= 0) ++k;
  const int e = out.add_divisor("E" + std::to_string(k), N, nu, {"exceptional"});
  for (int i : I) out.add_stratum(Stratum{i, e}, 1);
  if (I.size() == 2) {
    Int& comp = out.strata.at(I);
    comp -= 1;
    if (comp == 0) {
      out.strata.erase(I);
      out.stratum_flags.erase(I);
    }
  }
  return out;
}

StratumComplex restrict_complex(const StratumComplex& c, const std::function<bool(const Stratum&)>& keep) {
  std::set<Stratum> kept;
  for (const auto& [I, comp] : c.strata)
    if (keep(I)) kept.insert(I);
  for (const auto& I : kept) {
    const std::uint32_t full = (1u << I.size()) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      Stratum J;
      for (std::size_t t = 0; t < I.size(); ++t)
        if (mask >> t & 1) J.push_back(I[t]);
      if (!kept.count(J))
        throw ValidationError("restriction keeps " + c.label(I) + " but drops its face " + c.label(J));
    }
  }
  StratumComplex out;
  out.ambient_dim = c.ambient_dim;
  std::map<int, int> remap;
  for (const auto& I : kept)
    if (I.size() == 1) {
      remap[I[0]] = static_cast<int>(out.divisors.size());
      out.divisors.push_back(c.divisors[I[0]]);
    }
  for (const auto& I : kept) {
    Stratum J;
    for (int i : I) J.push_back(remap.at(i));
    std::sort(J.begin(), J.end());
    out.strata[J] = c.strata.at(I);
    if (auto f = c.stratum_flags.find(I); f != c.stratum_flags.end()) out.stratum_flags[J] = f->second;
  }
  if (out.divisors.empty()) throw ValidationError("restriction keeps no divisor");
  return out;
}

}  // namespace tdz
