// Independent reference computations used by the tests.
#pragma once

#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "tdz/series.hpp"
#include "tdz/strata.hpp"

namespace oracle {

using namespace tdz;

inline Int binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Power series of an expression via explicit binomial series and plain convolution.
inline std::vector<LaurentPoly> expand_naive(const StandardExpr& e, long order) {
  const char tag = e.tag();
  std::vector<LaurentPoly> s(order + 1, LaurentPoly(tag));
  for (long k = 0; k <= order; ++k) s[k] = e.num.at(k);
  for (const auto& f : e.den) {
    std::vector<LaurentPoly> g(order + 1, LaurentPoly(tag));
    for (long k = 0; k * f.N <= order; ++k)
      g[k * f.N] = LaurentPoly::monomial(tag, -f.c * k, binom(k + f.e - 1, f.e - 1));
    std::vector<LaurentPoly> r(order + 1, LaurentPoly(tag));
    for (long i = 0; i <= order; ++i) {
      if (s[i].is_zero()) continue;
      for (long j = 0; i + j <= order; ++j)
        if (!g[j].is_zero()) r[i + j] += s[i] * g[j];
    }
    s = std::move(r);
  }
  return s;
}

// Leading term of each coefficient of the expansion.
inline std::vector<LaurentPoly> td_naive(const StandardExpr& e, long order) {
  auto s = expand_naive(e, order);
  for (auto& p : s) p = p.top();
  return s;
}

inline bool same_prefix(const std::vector<LaurentPoly>& a, const TPoly& b, long order) {
  for (long k = 0; k <= order; ++k)
    if (!(a[k] == b.at(k)) && !(a[k].is_zero() && b.at(k).is_zero())) return false;
  return true;
}

// Sum of basic terms as one standard expression over the product of all factors.
inline StandardExpr to_standard(const std::vector<BasicTerm>& terms) {
  const char tag = terms.front().B.tag();
  std::vector<DenFactor> den;
  for (const auto& t : terms)
    for (const auto& f : t.factors) den.push_back({-f.g, f.d, 1});
  TPoly num(tag);
  std::size_t pos = 0;
  for (const auto& t : terms) {
    TPoly part = t.B;
    std::size_t own_lo = pos, own_hi = pos + t.factors.size();
    for (std::size_t i = 0; i < den.size(); ++i) {
      if (i >= own_lo && i < own_hi) continue;
      part.mul_binomial(LaurentPoly::monomial(tag, -den[i].c), den[i].N);
    }
    num += part;
    pos = own_hi;
  }
  return {num, den};
}

inline LaurentPoly random_laurent(std::mt19937_64& rng, char tag, int terms, int lo, int hi,
                                  int cmax, bool positive) {
  std::uniform_int_distribution<int> deg(lo, hi), co(positive ? 1 : -cmax, cmax);
  LaurentPoly p(tag);
  for (int i = 0; i < terms; ++i) p.add_term(deg(rng), co(rng));
  return p;
}

inline StandardExpr random_expr(std::mt19937_64& rng, char tag = 'x') {
  std::uniform_int_distribution<int> nt(1, 4), nd(1, 3), per(1, 3), cc(-2, 4), ee(1, 2), k(0, 1);
  TPoly num(tag);
  const int len = nt(rng) + 1;
  for (int i = 0; i < len; ++i)
    if (k(rng) || i == 0) num.add(i, random_laurent(rng, tag, 2, -3, 2, 3, false));
  std::vector<DenFactor> den;
  const int m = nd(rng);
  for (int i = 0; i < m; ++i) den.push_back({cc(rng), per(rng), ee(rng)});
  return {num, den};
}

inline std::vector<BasicTerm> random_basic_sum(std::mt19937_64& rng, char tag = 'L') {
  std::uniform_int_distribution<int> nterms(1, 4), nf(0, 2), g(-4, 1), d(1, 3), deg(0, 3),
      bdeg(-3, 3), bc(1, 3);
  std::vector<BasicTerm> out;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    BasicTerm t{TPoly(tag), {}};
    const int nb = 1 + deg(rng) % 2;
    for (int j = 0; j < nb; ++j) t.B.add_term(deg(rng), bdeg(rng), bc(rng));
    const int m = (i == 0) ? 1 + nf(rng) % 2 : nf(rng);
    for (int j = 0; j < m; ++j) t.factors.push_back({1, g(rng), d(rng)});
    out.push_back(t);
  }
  return out;
}

}  // namespace oracle

namespace oracle {

// Remarkable numbers straight from the definition: alpha_I is remarkable when
// no stratum with smaller alpha has N_J dividing N_I.
inline std::set<tdz::Rat> remarkable_brute(const tdz::StratumComplex& c) {
  struct S {
    long N;
    tdz::Rat a;
  };
  std::vector<S> all;
  for (const auto& [I, comp] : c.strata) {
    long N = 0;
    tdz::Rat a;
    bool first = true;
    for (int i : I) {
      const auto& d = c.divisors[i];
      N = std::gcd(N, static_cast<long>(d.N));
      const tdz::Rat r = tdz::make_rat(d.nu, d.N);
      if (first || r < a) a = r;
      first = false;
    }
    all.push_back({N, a});
  }
  std::set<tdz::Rat> out;
  for (const auto& s : all) {
    bool ok = true;
    for (const auto& t : all)
      if (t.a < s.a && s.N % t.N == 0) ok = false;
    if (ok) out.insert(s.a);
  }
  return out;
}

// Exhaustive minimum over strata I and a with all a_i >= 1.
inline std::optional<std::int64_t> codim_bruteforce(const tdz::StratumComplex& c, std::int64_t m) {
  std::optional<std::int64_t> best;
  for (const auto& [I, comp] : c.strata) {
    std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t left,
                                                                            std::int64_t cost) {
      if (k == I.size()) {
        if (left == 0 && (!best || cost < *best)) best = cost;
        return;
      }
      const auto& e = c.divisors[I[k]];
      for (std::int64_t a = 1; a * e.N <= left; ++a) rec(k + 1, left - a * e.N, cost + a * e.nu);
    };
    rec(0, m, 0);
  }
  return best;
}

}  // namespace oracle
