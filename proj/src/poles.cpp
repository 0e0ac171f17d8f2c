// Pole orders of rational series at T = L^{q}.
#include <algorithm>

#include "tdz/series.hpp"

namespace tdz {

namespace {

int linear_multiplicity(std::vector<LaurentPoly> p, const LaurentPoly& a, int cap) {
  int m = 0;
  while (m < cap) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    if (p.empty()) return cap;
    std::vector<LaurentPoly> q(p.size(), LaurentPoly(a.tag()));
    q[0] = p[0];
    for (std::size_t k = 1; k < p.size(); ++k) q[k] = p[k] + a * q[k - 1];
    if (!q.back().is_zero()) break;
    q.pop_back();
    p = std::move(q);
    ++m;
  }
  return m;
}

// Multiplicity of T = Lambda^c (Lambda^N = L) in Q, via Hasse derivatives, capped.
int multiplicity_at_one(const TPoly& Q, std::int64_t c, std::int64_t N, int cap) {
  for (int r = 0; r < cap; ++r) {
    std::map<std::int64_t, Int> acc;
    Int b;
    for (std::size_t k = r; k < Q.size(); ++k) {
      if (Q[k].is_zero()) continue;
      mpz_bin_uiui(b.get_mpz_t(), k, r);
      for (const auto& [dg, cf] : Q[k].terms()) acc[N * dg + c * static_cast<std::int64_t>(k)] += b * cf;
    }
    if (std::any_of(acc.begin(), acc.end(), [](const auto& kv) { return kv.second != 0; })) return r;
  }
  return cap;
}

}  // namespace

PoleReport poles(const StandardExpr& e0, PoleMode mode) {
  const StandardExpr e = normalize_common(e0);
  PoleReport out;
  TPoly num = e.num;
  num.trim();
  if (num.is_zero() || e.den.empty()) return out;
  const std::int64_t N = e.den.front().N;

  if (mode == PoleMode::RootOfUnityOne) {
    for (const auto& f : e.den) {
      const int order = f.e - multiplicity_at_one(num, f.c, N, f.e);
      if (order > 0) out[make_rat(-f.c, N)] = order;
    }
    return out;
  }

  // Q(T) = sum_w T^w P_w(T^N); the order at zeta^j Lambda^c is e - mult_{zeta^j}(Q), and
  // min over j of that multiplicity equals the min over nonzero P_w of mult of (1 - X^{-c} S).
  std::vector<std::vector<LaurentPoly>> parts;
  for (std::int64_t w = 0; w < N && w < static_cast<std::int64_t>(num.size()); ++w) {
    std::vector<LaurentPoly> P;
    for (std::int64_t k = w; k < static_cast<std::int64_t>(num.size()); k += N) P.push_back(num[k]);
    while (!P.empty() && P.back().is_zero()) P.pop_back();
    if (!P.empty()) parts.push_back(std::move(P));
  }
  for (const auto& f : e.den) {
    const LaurentPoly a = LaurentPoly::monomial(e.tag(), -f.c);
    int mn = f.e;
    for (const auto& P : parts) {
      mn = std::min(mn, linear_multiplicity(P, a, mn));
      if (mn == 0) break;
    }
    if (f.e - mn > 0) out[make_rat(-f.c, N)] = f.e - mn;
  }
  return out;
}

PoleReport poles_by_roots(const StandardExpr& e0, PoleMode mode) {
  const StandardExpr e = normalize_common(e0);
  PoleReport out;
  TPoly num = e.num;
  num.trim();
  if (num.is_zero() || e.den.empty()) return out;
  const std::int64_t N = e.den.front().N;
  for (const auto& f : e.den) {
    int order = 0;
    const std::int64_t jmax = mode == PoleMode::RootOfUnityOne ? 1 : N;
    for (std::int64_t j = 0; j < jmax; ++j) {
      const int m = cyclo_root_multiplicity(num.coeffs(), f.c, N, j);
      order = std::max(order, f.e - std::min(m, f.e));
    }
    if (order > 0) out[make_rat(-f.c, N)] = order;
  }
  return out;
}

}  // namespace tdz
