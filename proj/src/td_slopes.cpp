// Top-degree transform through the poles of one slope at a time.
//
// Factors (1 - X^{-c}T^N) with equal c/N = p/q form a group G with period n.
// With u = X^{-p/q}T the group is prod (1 - u^N)^e, whose series has
// quasi-polynomial coefficients qt(k).  The rest of the expression, E_G, is
// expanded in decreasing weight W = q*deg_X + p*deg_T; a term k X^a T^b
// contributes k qt(m - b) X^{(W - p m)/q} to the coefficient of T^m.  Terms
// are kept per class of b mod n with moments sum k b^i, which is all qt needs.
// In each class of m the group of smallest slope with a nonzero contribution
// has the top degree for large m.
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "td_internal.hpp"
#include "tdz/series.hpp"

namespace tdz {

namespace {

constexpr std::uint64_t kSlopeCap = 60'000'000;

struct Group {
  Rat s;
  std::int64_t p = 0, q = 1, n = 1;
  std::vector<DenFactor> fac;
  int tm = 0;  // degree bound of the quasi-polynomial
  // per class of m mod n: level index and polynomial in m, empty when the class is zero
  std::vector<std::int64_t> top_level;
  std::vector<std::vector<Rat>> top_poly;
  std::int64_t array_top = 0;  // weight of level index 0
};

void cap_check(double size, const std::string& what) {
  if (size > static_cast<double>(kSlopeCap)) {
    std::ostringstream msg;
    msg << what << " needs about " << std::scientific << size << " entries (cap " << kSlopeCap << ")";
    throw EnumCapError(msg.str(), static_cast<std::uint64_t>(std::min(size, 1.8e19)), kSlopeCap);
  }
}

Int ipow(const Int& b, std::int64_t e) {
  Int r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= b;
  return r;
}

Int binom(std::int64_t n, std::int64_t k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Per class rho mod n, coefficients of Q_rho(k) with qt(k) = Q_{k mod n}(k).
std::vector<std::vector<Rat>> quasi_polynomial(const Group& g) {
  const std::int64_t n = g.n, D = g.tm;
  const std::int64_t K = n * (D + 1);
  std::vector<Int> c(K, 0);
  c[0] = 1;
  for (const auto& f : g.fac)
    for (int r = 0; r < f.e; ++r)
      for (std::int64_t k = f.N; k < K; ++k) c[k] += c[k - f.N];
  std::vector<std::vector<Rat>> Q(n);
  for (std::int64_t rho = 0; rho < n; ++rho) {
    // Newton interpolation through k = rho + n l, l = 0..D
    std::vector<Rat> xs, dd;
    for (std::int64_t l = 0; l <= D; ++l) {
      xs.emplace_back(rho + n * l);
      dd.emplace_back(c[rho + n * l]);
    }
    for (std::int64_t j = 1; j <= D; ++j)
      for (std::int64_t i = D; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<Rat> poly{dd[D]};
    for (std::int64_t i = D - 1; i >= 0; --i) {
      std::vector<Rat> next(poly.size() + 1, Rat(0));
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] += poly[j];
        next[j] -= poly[j] * xs[i];
      }
      next[0] += dd[i];
      poly = std::move(next);
    }
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    Q[rho] = std::move(poly);
  }
  return Q;
}

// Moment vector of a class shifted by b -> b + N.
void shift_moments(const Int* in, Int* out, std::int64_t N, int tm, bool subtract) {
  if (tm == 0) {
    if (in[0] == 0) return;
    if (subtract) out[0] -= in[0];
    else out[0] += in[0];
    return;
  }
  for (int i = 0; i <= tm; ++i) {
    Int acc = 0;
    for (int h = 0; h <= i; ++h) acc += binom(i, h) * ipow(Int(N), i - h) * in[h];
    if (subtract) out[i] -= acc;
    else out[i] += acc;
  }
}

// Expansion of E_G by weight, then the top level of every class of m.
void analyse_group(Group& g, const StandardExpr& e, const std::vector<DenFactor>& others) {
  const std::int64_t n = g.n, p = g.p, q = g.q;
  const int M = g.tm + 1;
  const std::int64_t width = n * M;

  std::int64_t wmax = 0, wmin = 0;
  bool first = true;
  for (std::size_t b = 0; b < e.num.size(); ++b)
    for (const auto& [a, k] : e.num[b].terms()) {
      const std::int64_t w = q * a + p * static_cast<std::int64_t>(b);
      wmax = first ? w : std::max(wmax, w);
      wmin = first ? w : std::min(wmin, w);
      first = false;
    }
  // depth after which a class sum that is still zero vanishes identically
  std::int64_t depth = wmax - wmin + 1, drop = 0;
  for (const auto& f : others) {
    const std::int64_t delta = p * f.N - q * f.c;
    const std::int64_t gj = std::gcd(n, f.N);
    depth += std::abs(delta) * ((n / gj + 1) * (f.e + g.tm) + g.tm);
    if (delta > 0) drop += delta * f.e;
  }
  const std::int64_t levels = depth + drop + 1;
  cap_check(static_cast<double>(levels) * static_cast<double>(width), "slope expansion");

  std::vector<Int> S(levels * width, 0);
  auto at = [&](std::int64_t d, std::int64_t beta) { return &S[d * width + beta * M]; };
  g.array_top = wmax;
  for (std::size_t b = 0; b < e.num.size(); ++b)
    for (const auto& [a, k] : e.num[b].terms()) {
      const std::int64_t d = wmax - (q * a + p * static_cast<std::int64_t>(b));
      Int* m = at(d, static_cast<std::int64_t>(b) % n);
      Int bp = 1;
      for (int i = 0; i < M; ++i, bp *= static_cast<long>(b)) m[i] += k * bp;
    }

  std::vector<Int> prev;
  for (const auto& f : others) {
    const std::int64_t delta = p * f.N - q * f.c;
    const std::int64_t step = std::abs(delta);
    const std::int64_t shift = mod_floor(delta < 0 ? f.N : -f.N, n);
    const std::int64_t Nshift = delta < 0 ? f.N : -f.N;
    for (int rep = 0; rep < f.e; ++rep) {
      if (delta < 0) {
        // S' = S + y S', y lowering the weight by step
        for (std::int64_t d = step; d < levels; ++d)
          for (std::int64_t beta = 0; beta < n; ++beta)
            shift_moments(at(d - step, beta), at(d, (beta + shift) % n), Nshift, g.tm, false);
      } else {
        // S' = y^{-1} (S' - S)
        prev = S;
        std::fill(S.begin(), S.end(), Int(0));
        for (std::int64_t d = step; d < levels; ++d)
          for (std::int64_t beta = 0; beta < n; ++beta) {
            std::vector<Int> diff(M);
            const Int* a = at(d - step, beta);
            const Int* b = &prev[(d - step) * width + beta * M];
            for (int i = 0; i < M; ++i) diff[i] = a[i] - b[i];
            shift_moments(diff.data(), at(d, (beta + shift) % n), Nshift, g.tm, false);
          }
      }
    }
  }

  const auto Q = quasi_polynomial(g);
  g.top_level.assign(n, -1);
  g.top_poly.assign(n, {});
  std::int64_t open = n;
  std::vector<std::int64_t> live;
  for (std::int64_t d = 0; d < levels && open > 0; ++d) {
    live.clear();
    for (std::int64_t beta = 0; beta < n; ++beta) {
      const Int* m = at(d, beta);
      for (int i = 0; i < M; ++i)
        if (m[i] != 0) {
          live.push_back(beta);
          break;
        }
    }
    if (live.empty()) continue;
    for (std::int64_t r = 0; r < n; ++r) {
      if (g.top_level[r] >= 0) continue;
      std::vector<Rat> P(M, Rat(0));
      for (std::int64_t beta : live) {
        const auto& Qr = Q[mod_floor(r - beta, n)];
        const Int* mom = at(d, beta);
        for (std::size_t t = 0; t < Qr.size(); ++t) {
          if (Qr[t] == 0) continue;
          for (std::size_t i = 0; i <= t; ++i) {
            const Rat term = Qr[t] * Rat(binom(t, i) * mom[i]);
            if (i % 2) P[t - i] -= term;
            else P[t - i] += term;
          }
        }
      }
      while (!P.empty() && P.back() == 0) P.pop_back();
      if (P.empty()) continue;
      g.top_level[r] = d;
      g.top_poly[r] = std::move(P);
      --open;
    }
  }
}

Rat eval(const std::vector<Rat>& P, const Rat& m) {
  Rat v = 0;
  for (auto it = P.rbegin(); it != P.rend(); ++it) v = v * m + *it;
  return v;
}

// Upper bound for the positive roots of P (Fujiwara): 2 max |a_{D-i}/a_D|^{1/i},
// the constant term counted at half weight.
std::int64_t root_bound(const std::vector<Rat>& P) {
  if (P.size() <= 1) return 0;
  const std::size_t D = P.size() - 1;
  double best = 0;
  for (std::size_t i = 1; i <= D; ++i) {
    Rat r = abs(P[D - i] / P[D]);
    if (r == 0) continue;
    if (i == D) r /= 2;
    // log of a rational without overflowing a double
    const double lg = (static_cast<double>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) -
                       static_cast<double>(mpz_sizeinbase(r.get_den_mpz_t(), 2)) + 1) * std::log(2.0);
    best = std::max(best, std::exp(lg / static_cast<double>(i)));
  }
  return static_cast<std::int64_t>(std::ceil(2 * best)) + 2;
}

std::int64_t ceil_rat(const Rat& x) {
  Int f = x.get_num() / x.get_den();
  if (Rat(f) < x) f += 1;
  return to_i64(f);
}

}  // namespace

TdResult td_expr_by_slopes(const StandardExpr& e) {
  const char tag = e.tag();
  TdResult res;
  res.W = TPoly(tag);
  TPoly num = e.num;
  num.trim();
  std::vector<DenFactor> den;
  for (const auto& f : e.den) {
    if (f.N <= 0 || f.e < 0) throw ValidationError("denominator factor needs N > 0 and e >= 0");
    if (f.e > 0) den.push_back(f);
  }
  if (den.empty() || num.is_zero()) {
    res.rational = StandardExpr(TPoly(tag), {});
    res.W = td_coeffs(num);
    return res;
  }
  const StandardExpr ex(num, den);

  std::map<Rat, Group> by_slope;
  for (const auto& f : den) {
    Group& g = by_slope[make_rat(f.c, f.N)];
    g.fac.push_back(f);
  }
  std::vector<Group> groups;
  for (auto& [s, g] : by_slope) {
    g.s = s;
    g.p = to_i64(s.get_num());
    g.q = to_i64(s.get_den());
    for (const auto& f : g.fac) {
      g.n = lcm64(g.n, f.N);
      g.tm += f.e;
    }
    g.tm -= 1;
    groups.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::vector<DenFactor> others;
    for (std::size_t j = 0; j < groups.size(); ++j)
      if (j != i) others.insert(others.end(), groups[j].fac.begin(), groups[j].fac.end());
    analyse_group(groups[i], ex, others);
  }

  // period of the answer: groups in slope order until one covers every class
  std::int64_t L = 1;
  std::size_t used = 0;
  for (; used < groups.size(); ++used) {
    L = lcm64(L, groups[used].n);
    const auto& tl = groups[used].top_level;
    if (std::all_of(tl.begin(), tl.end(), [](std::int64_t d) { return d >= 0; })) {
      ++used;
      break;
    }
  }
  cap_check(static_cast<double>(L) * static_cast<double>(groups.size()), "slope classes");

  auto weight = [](const Group& g, std::int64_t d) { return make_rat(g.array_top - d, g.q); };  // X-degree + s m

  // highest level of each group over the classes meeting a class of m mod L
  std::vector<std::vector<std::int64_t>> best_top(groups.size());
  for (std::size_t h = 0; h < groups.size(); ++h) {
    const std::int64_t gl = std::gcd(groups[h].n, L);
    best_top[h].assign(gl, -1);
    for (std::int64_t rho = 0; rho < groups[h].n; ++rho) {
      const std::int64_t d = groups[h].top_level[rho];
      std::int64_t& b = best_top[h][rho % gl];
      if (d >= 0 && (b < 0 || d < b)) b = d;
    }
  }

  std::map<std::pair<std::int64_t, int>, TPoly> pieces;
  std::int64_t B = static_cast<std::int64_t>(num.size()) - 1;
  std::int64_t degD = 0;
  for (const auto& f : den) degD += f.N * f.e;
  B -= degD;
  for (std::int64_t r = 0; r < L; ++r) {
    std::size_t gi = used;
    for (std::size_t i = 0; i < used; ++i)
      if (groups[i].top_level[r % groups[i].n] >= 0) {
        gi = i;
        break;
      }
    if (gi == used) continue;
    const Group& g = groups[gi];
    const std::int64_t d = g.top_level[r % g.n];
    const auto& P = g.top_poly[r % g.n];
    const Rat w = weight(g, d);
    // X-degree at m = r + l L is w - s r - s L l
    const Rat base = w - g.s * Rat(r);
    const Rat cL = g.s * Rat(L);
    if (base.get_den() != 1 || cL.get_den() != 1) throw std::logic_error("fractional exponent in a top-degree tail");
    const std::int64_t x0 = to_i64(base.get_num()), c = to_i64(cL.get_num());
    const int D = static_cast<int>(P.size()) - 1;
    std::vector<Int> v(D + 1);
    for (int l = 0; l <= D; ++l) {
      const Rat val = eval(P, Rat(r + l * L));
      if (val.get_den() != 1) throw std::logic_error("non-integral top-degree coefficient");
      v[l] = val.get_num();
    }
    // (sum v_l Y^l)(1 - Y)^{D+1}, degrees <= D
    std::vector<Int> numY(D + 1, 0);
    for (int l = 0; l <= D; ++l)
      for (int j = 0; l + j <= D; ++j) numY[l + j] += v[l] * binom(D + 1, j) * (j % 2 ? -1 : 1);
    TPoly& piece = pieces.try_emplace({c, D + 1}, tag).first->second;
    for (int l = 0; l <= D; ++l)
      if (numY[l] != 0) piece.add_term(r + l * L, x0 - c * l, numY[l]);

    // below this bound the top term may come from elsewhere
    B = std::max(B, root_bound(P));
    for (std::size_t h = 0; h < groups.size(); ++h) {
      if (h == gi || groups[h].s <= g.s) continue;
      const auto& bt = best_top[h];
      const std::int64_t lh = bt[r % static_cast<std::int64_t>(bt.size())];
      if (lh < 0) continue;
      B = std::max(B, ceil_rat((weight(groups[h], lh) - w) / (groups[h].s - g.s)));
    }
  }
  std::vector<Tail> tails;
  for (auto& [ce, t] : pieces) tails.push_back({ce.first, ce.second, std::move(t)});
  res.rational = tails.empty() ? StandardExpr(TPoly(tag), {}) : assemble_tails(tails, L, tag);

  if (B >= 0) {
    double span = 0;
    for (const auto& f : den) span += std::abs(static_cast<double>(f.c)) / f.N * f.e;
    cap_check(static_cast<double>(B + 1) * (span * (B + 1) + static_cast<double>(num.term_count()) + 1),
              "exact coefficients below the crossover");
    const TPoly exact = expand(ex, B);
    const TPoly formula = expand(res.rational, B);
    for (std::int64_t k = 0; k <= B; ++k) {
      LaurentPoly diff = exact.at(k).top() - formula.at(k);
      if (!diff.is_zero()) res.W.add(k, diff);
    }
    res.W.trim();
  }
  return res;
}

}  // namespace tdz
