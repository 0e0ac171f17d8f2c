// Top-degree transforms of rational series.
#include <algorithm>
#include <map>
#include <numeric>

#include "tdz/series.hpp"
#include "td_internal.hpp"

namespace tdz {

namespace {

// Max-plus addition on leading monomials: keep the higher degree, add on ties.
void top_add(LaurentPoly& acc, const LaurentPoly& x) {
  if (x.is_zero()) return;
  if (acc.is_zero() || x.max_degree() > acc.max_degree()) {
    acc = x.top();
  } else if (x.max_degree() == acc.max_degree()) {
    acc.add_term(x.max_degree(), x.lead());
  }
}

Int int_pow(const Int& b, std::int64_t e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

void require_positive(const TPoly& B) {
  for (std::size_t k = 0; k < B.size(); ++k)
    for (const auto& [d, c] : B[k].terms())
      if (c <= 0) throw std::invalid_argument("basic term numerator must have positive coefficients");
}

// In-place expansion of a numerator by 1/(1 - a T^s), truncated at order.
void geometric(std::vector<LaurentPoly>& c, const LaurentPoly& a, std::int64_t s) {
  for (std::size_t k = s; k < c.size(); ++k)
    if (!c[k - s].is_zero()) c[k] += a * c[k - s];
}

}  // namespace

TPoly td_expand(const std::vector<BasicTerm>& terms, std::int64_t order) {
  const char tag = terms.empty() ? 'L' : terms.front().B.tag();
  std::vector<LaurentPoly> total(order + 1, LaurentPoly(tag));
  for (const auto& t : terms) {
    require_positive(t.B);
    std::vector<LaurentPoly> r(order + 1, LaurentPoly(tag));
    for (std::int64_t k = 0; k <= order && k < static_cast<std::int64_t>(t.B.size()); ++k)
      r[k] = t.B[k].top();
    for (const auto& f : t.factors) {
      if (f.m <= 0) throw std::invalid_argument("basic term factor needs m > 0");
      const LaurentPoly a = LaurentPoly::monomial(tag, f.g, f.m);
      for (std::int64_t k = f.d; k <= order; ++k)
        if (!r[k - f.d].is_zero()) top_add(r[k], r[k - f.d] * a);
    }
    for (std::int64_t k = 0; k <= order; ++k) top_add(total[k], r[k]);
  }
  TPoly out(tag);
  for (std::int64_t k = 0; k <= order; ++k)
    if (!total[k].is_zero()) out.set(k, std::move(total[k]));
  return out;
}

TdBasic td_basic(const BasicTerm& t) {
  require_positive(t.B);
  const char tag = t.B.tag();
  TdBasic out;
  out.P = td_coeffs(t.B);
  if (t.factors.empty()) return out;

  Rat amax;
  std::int64_t d = 1;
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    const auto& f = t.factors[i];
    if (f.m <= 0 || f.d <= 0) throw std::invalid_argument("basic term factor needs m > 0, d > 0");
    Rat a = make_rat(f.g, f.d);
    if (i == 0 || a > amax) amax = a;
    d = lcm64(d, f.d);
  }
  // Q = B * prod (1 - a_i^{d/d_i} T^d) / (1 - a_i T^{d_i})
  TPoly Q = out.P;
  for (const auto& f : t.factors) {
    const std::int64_t rho = d / f.d;
    if (rho == 1) continue;
    Q.mul_binomial(LaurentPoly::monomial(tag, f.g * rho, int_pow(f.m, rho)), d);
    Q.div_binomial(LaurentPoly::monomial(tag, f.g, f.m), f.d);
  }
  const Rat cd = amax * d;
  out.d = d;
  out.exact_from = static_cast<std::int64_t>(Q.size()) - 1;
  out.P = td_Q(Q, to_i64(cd.get_num()), d, 1);
  for (const auto& f : t.factors) {
    if (make_rat(f.g, f.d) != amax) continue;
    const std::int64_t rho = d / f.d;
    out.den.push_back({int_pow(f.m, rho), f.g * rho, d});
  }
  return out;
}

TdSum td_sum(const std::vector<MonoTerm>& terms, std::int64_t d) {
  struct Info {
    bool poly;
    std::int64_t g, lambda, l;
  };
  std::map<std::int64_t, std::vector<std::size_t>> by_w;
  std::vector<Info> info(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (t.w < 0 || t.w >= d) throw std::invalid_argument("td_sum residue out of range");
    if (!t.b.is_monomial() || t.b.lead() <= 0)
      throw std::invalid_argument("td_sum needs positive monomial coefficients");
    Info& in = info[i];
    in.poly = t.a.empty();
    in.l = t.l;
    in.g = 0;
    for (std::size_t j = 0; j < t.a.size(); ++j) {
      if (!t.a[j].is_monomial()) throw std::invalid_argument("td_sum needs monomial factors");
      if (j > 0 && t.a[j].max_degree() != t.a[0].max_degree())
        throw std::invalid_argument("td_sum term has factors of unequal degree");
      in.g = t.a[j].max_degree();
    }
    in.lambda = t.b.max_degree() - t.l * in.g;
    by_w[t.w].push_back(i);
  }
  TdSum out;
  for (const auto& [w, idx] : by_w) {
    std::optional<std::int64_t> gs, ls;
    for (auto i : idx)
      if (!info[i].poly && (!gs || info[i].g > *gs)) gs = info[i].g;
    std::int64_t K = 0;
    if (!gs) {
      for (auto i : idx) K = std::max(K, info[i].l + 1);
      out.exact_from_k[w] = K;
      continue;
    }
    for (auto i : idx)
      if (!info[i].poly && info[i].g == *gs && (!ls || info[i].lambda > *ls)) ls = info[i].lambda;
    std::optional<std::int64_t> first;
    for (auto i : idx) {
      const Info& in = info[i];
      if (!in.poly && in.g == *gs && in.lambda == *ls) {
        out.survivors.push_back(i);
        if (!first || in.l < *first) first = in.l;
      }
    }
    K = *first;
    for (auto i : idx) {
      const Info& in = info[i];
      if (in.poly) K = std::max(K, in.l + 1);
      else if (in.g < *gs) K = std::max(K, floor_div(in.lambda - *ls, *gs - in.g) + 1);
    }
    out.exact_from_k[w] = K;
  }
  std::sort(out.survivors.begin(), out.survivors.end());
  return out;
}

StandardExpr TdResult::combined() const {
  StandardExpr r = rational;
  if (!W.is_zero()) r.num += W * denominator_poly(rational);
  return r;
}

// Sum over groups of survivors sharing (g, multiplicity), put over a common denominator.
StandardExpr assemble_tails(std::vector<Tail>& tails, std::int64_t N, char tag) {
  std::map<std::int64_t, int> E;
  for (const auto& t : tails) E[t.c] = std::max(E[t.c], t.e);
  TPoly num(tag);
  for (auto& t : tails) {
    TPoly part = std::move(t.num);
    for (const auto& [c, m] : E) {
      const int k = m - (c == t.c ? t.e : 0);
      const LaurentPoly a = LaurentPoly::monomial(tag, -c);
      for (int r = 0; r < k; ++r) part.mul_binomial(a, N);
    }
    num += part;
  }
  std::vector<DenFactor> den;
  for (const auto& [c, m] : E) den.push_back({c, N, m});
  return {num, den};
}

TdResult td_expr(const std::vector<BasicTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("td_expr of an empty sum");
  const char tag = terms.front().B.tag();
  std::vector<TdBasic> basics;
  std::vector<const BasicTerm*> polys;
  for (const auto& t : terms) {
    if (t.B.tag() != tag && !t.B.is_zero()) throw std::invalid_argument("mixing variables in td_expr");
    for (const auto& f : t.factors)
      if (f.m != 1) throw std::invalid_argument("td_expr needs factors (1 - X^g T^d)");
    if (t.factors.empty()) polys.push_back(&t);
    else basics.push_back(td_basic(t));
  }
  std::int64_t d = 1;
  for (const auto& b : basics) d = lcm64(d, b.d);

  std::vector<MonoTerm> mts;
  std::int64_t bound = 0;
  for (const auto& b : basics) {
    bound = std::max(bound, b.exact_from);
    const std::int64_t rho = d / b.d;
    TPoly num = b.P;
    std::vector<LaurentPoly> as;
    for (const auto& f : b.den) {
      if (rho > 1) {
        num.mul_binomial(LaurentPoly::monomial(tag, f.g * rho), d);
        num.div_binomial(LaurentPoly::monomial(tag, f.g), b.d);
      }
      as.push_back(LaurentPoly::monomial(tag, f.g * rho));
    }
    for (std::size_t e = 0; e < num.size(); ++e) {
      if (num[e].is_zero()) continue;
      if (!num[e].is_monomial()) throw std::logic_error("td numerator lost homogeneity");
      mts.push_back({num[e], static_cast<std::int64_t>(e) % d, static_cast<std::int64_t>(e) / d, as});
    }
  }
  for (const auto* t : polys) {
    TPoly p = td_coeffs(t->B);
    for (std::size_t e = 0; e < p.size(); ++e)
      if (!p[e].is_zero())
        mts.push_back({p[e], static_cast<std::int64_t>(e) % d, static_cast<std::int64_t>(e) / d, {}});
  }
  const TdSum ts = td_sum(mts, d);
  for (const auto& [w, K] : ts.exact_from_k) bound = std::max(bound, w + K * d);

  // Survivors grouped by (degree of a, multiplicity).
  std::map<std::pair<std::int64_t, int>, TPoly> groups;
  for (auto i : ts.survivors) {
    const auto& m = mts[i];
    auto key = std::make_pair(m.a.front().max_degree(), static_cast<int>(m.a.size()));
    auto it = groups.try_emplace(key, TPoly(tag)).first;
    it->second.add(m.w + m.l * d, m.b);
  }

  TdResult res;
  res.W = TPoly(tag);
  if (bound > 0) {
    TPoly full = td_expand(terms, bound - 1);
    std::vector<LaurentPoly> surv(bound, LaurentPoly(tag));
    for (const auto& [key, g] : groups) {
      std::vector<LaurentPoly> c(bound, LaurentPoly(tag));
      for (std::int64_t k = 0; k < bound; ++k) c[k] = g.at(k);
      const LaurentPoly a = LaurentPoly::monomial(tag, key.first);
      for (int r = 0; r < key.second; ++r) geometric(c, a, d);
      for (std::int64_t k = 0; k < bound; ++k) surv[k] += c[k];
    }
    for (std::int64_t k = 0; k < bound; ++k) res.W.add(k, full.at(k) - surv[k]);
    res.W.trim();
  }

  std::vector<Tail> tails;
  for (auto& [key, g] : groups) tails.push_back({-key.first, key.second, std::move(g)});
  res.rational = assemble_tails(tails, d, tag);
  return res;
}

// ---------------------------------------------------------------- general path

namespace {

using ZPoly = IntPoly;  // polynomial in u

// Divides p by (1 - u) if possible.
bool div_one_minus_u(ZPoly& p) {
  trim(p);
  if (p.empty()) return true;
  ZPoly q(p.size() - 1);
  Int acc = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    acc += p[k];
    q[k] = acc;
  }
  if (acc + p.back() != 0) return false;
  p = std::move(q);
  trim(p);
  return true;
}

Int binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Divides P(S) by (1 - a S) if possible.
bool div_linear(std::vector<LaurentPoly>& p, const LaurentPoly& a) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.empty()) return true;
  std::vector<LaurentPoly> q(p.size(), LaurentPoly(a.tag()));
  q[0] = p[0];
  for (std::size_t k = 1; k < p.size(); ++k) q[k] = p[k] + a * q[k - 1];
  if (!q.back().is_zero()) return false;
  q.pop_back();
  p = std::move(q);
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return true;
}

// Integer bound beyond which sum_i r_i binom(k - i + t - 1, t - 1) has no roots.
std::int64_t root_bound(const ZPoly& R, int t) {
  std::vector<Rat> poly{Rat(0)};
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (R[i] == 0) continue;
    std::vector<Rat> b{Rat(1)};
    for (int s = 1; s <= t - 1; ++s) {
      // multiply by (k - i + s) / s
      std::vector<Rat> nb(b.size() + 1, Rat(0));
      for (std::size_t j = 0; j < b.size(); ++j) {
        nb[j + 1] += b[j] / s;
        nb[j] += b[j] * Rat(s - static_cast<std::int64_t>(i)) / s;
      }
      b = std::move(nb);
    }
    if (poly.size() < b.size()) poly.resize(b.size(), Rat(0));
    for (std::size_t j = 0; j < b.size(); ++j) poly[j] += Rat(R[i]) * b[j];
  }
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  if (poly.size() <= 1) return 0;
  Rat m = 0;
  for (std::size_t j = 0; j + 1 < poly.size(); ++j) m = std::max(m, Rat(abs(poly[j] / poly.back())));
  Int fl = m.get_num() / m.get_den();
  return to_i64(fl) + 2;
}

}  // namespace

TdResult td_expr(const StandardExpr& e0) {
  if (normalized_term_estimate(e0) > static_cast<double>(kNormalizeCap)) return td_expr_by_slopes(e0);
  const char tag = e0.tag();
  const StandardExpr e = normalize_common(e0);
  TdResult res;
  res.W = TPoly(tag);
  if (e.den.empty()) {
    res.rational = StandardExpr(TPoly(tag), {});
    res.W = td_coeffs(e.num);
    return res;
  }
  const std::int64_t N = e.den.front().N;
  std::vector<Tail> tails;

  for (std::int64_t w = 0; w < N && w < static_cast<std::int64_t>(e.num.size()); ++w) {
    std::vector<LaurentPoly> P;
    for (std::int64_t k = w; k < static_cast<std::int64_t>(e.num.size()); k += N) P.push_back(e.num[k]);
    while (!P.empty() && P.back().is_zero()) P.pop_back();
    if (P.empty()) continue;

    std::map<std::int64_t, int> fac;
    for (const auto& f : e.den) fac[f.c] = f.e;
    for (auto& [c, m] : fac)
      while (m > 0 && div_linear(P, LaurentPoly::monomial(tag, -c))) --m;
    std::erase_if(fac, [](const auto& kv) { return kv.second == 0; });

    if (fac.empty()) {
      for (std::size_t l = 0; l < P.size(); ++l) res.W.add(w + l * N, P[l].top());
      continue;
    }
    const std::int64_t c1 = fac.begin()->first;
    const int e1 = fac.begin()->second;

    // P(S) with S = X^{c1} u, split into layers X^E P_E(u).
    std::map<std::int64_t, ZPoly, std::greater<>> layer;
    for (std::size_t l = 0; l < P.size(); ++l)
      for (const auto& [dg, cf] : P[l].terms()) {
        ZPoly& z = layer[dg + c1 * static_cast<std::int64_t>(l)];
        if (z.size() <= l) z.resize(l + 1);
        z[l] += cf;
      }
    std::erase_if(layer, [](auto& kv) {
      trim(kv.second);
      return kv.second.empty();
    });
    const std::int64_t Emax = layer.begin()->first;
    std::int64_t Etop = 0;
    bool found = false;
    for (const auto& [E, z] : layer) {
      Int s = std::accumulate(z.begin(), z.end(), Int(0));
      if (s != 0) {
        Etop = E;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("numerator vanishes at the dominant root");
    const std::int64_t depth = Emax - Etop;

    // H(u) = prod_{i >= 2} (1 - X^{-gap_i} u)^{-e_i} = sum_{g <= 0} X^g H_g(u), down to -depth.
    std::map<std::int64_t, ZPoly> H{{0, ZPoly{1}}};
    for (auto it = std::next(fac.begin()); it != fac.end(); ++it) {
      const std::int64_t gap = it->first - c1;
      const int ei = it->second;
      std::map<std::int64_t, ZPoly> nh;
      for (const auto& [g, h] : H)
        for (std::int64_t k = 0; g - gap * k >= -depth; ++k) {
          ZPoly& z = nh[g - gap * k];
          if (z.size() < h.size() + k) z.resize(h.size() + k);
          const Int b = binom(k + ei - 1, ei - 1);
          for (std::size_t j = 0; j < h.size(); ++j) z[j + k] += b * h[j];
        }
      H = std::move(nh);
    }

    std::int64_t K0 = 0;
    std::int64_t Fstar = 0;
    ZPoly R;
    int t = 0;
    for (std::int64_t F = Emax; F >= Etop; --F) {
      ZPoly NF;
      for (const auto& [E, z] : layer) {
        auto h = H.find(F - E);
        if (h == H.end()) continue;
        ZPoly prod = poly_mul(z, h->second);
        if (NF.size() < prod.size()) NF.resize(prod.size());
        for (std::size_t j = 0; j < prod.size(); ++j) NF[j] += prod[j];
      }
      trim(NF);
      if (NF.empty()) continue;
      int mu = 0;
      ZPoly Np = NF;
      while (mu < e1) {
        ZPoly tmp = Np;
        if (!div_one_minus_u(tmp)) break;
        Np = std::move(tmp);
        ++mu;
      }
      if (mu == e1) {
        K0 = std::max<std::int64_t>(K0, static_cast<std::int64_t>(NF.size()) - 1 - e1 + 1);
        continue;
      }
      Fstar = F;
      t = e1 - mu;
      // R = Np mod (u - 1)^t
      ZPoly m{1};
      for (int s = 0; s < t; ++s) m = poly_mul(m, ZPoly{-1, 1});
      R = poly_rem_monic(Np, m);
      K0 = std::max<std::int64_t>(K0, static_cast<std::int64_t>(Np.size()) - 1 - t + 1);
      K0 = std::max<std::int64_t>(K0, static_cast<std::int64_t>(R.size()));
      K0 = std::max(K0, root_bound(R, t));
      break;
    }
    if (t == 0) throw std::logic_error("no dominant layer found");

    // Tail x^{F*} R(u) / (1 - u)^t with u = X^{-c1} T^N.
    TPoly tn(tag);
    for (std::size_t i = 0; i < R.size(); ++i)
      if (R[i] != 0) tn.add_term(w + i * N, Fstar - c1 * static_cast<std::int64_t>(i), R[i]);
    tails.push_back({c1, t, std::move(tn)});

    // Exact coefficients below K0.
    TPoly Pw(tag);
    for (std::size_t l = 0; l < P.size(); ++l) Pw.set(l, P[l]);
    std::vector<DenFactor> dw;
    for (const auto& [c, m] : fac) dw.push_back({c, 1, m});
    const TPoly ex = expand(StandardExpr(Pw, dw), K0);
    ZPoly tail(K0 + 1);
    for (std::size_t i = 0; i < R.size() && i < tail.size(); ++i) tail[i] = R[i];
    for (int s = 0; s < t; ++s)
      for (std::int64_t k = 1; k <= K0; ++k) tail[k] += tail[k - 1];
    for (std::int64_t k = 0; k < K0; ++k) {
      LaurentPoly diff = ex.at(k).top();
      diff.add_term(Fstar - c1 * k, -tail[k]);
      res.W.add(w + k * N, diff);
    }
  }
  res.W.trim();
  res.rational = assemble_tails(tails, N, tag);
  return res;
}

}  // namespace tdz
