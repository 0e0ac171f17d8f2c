#include "tdz/contact.hpp"

#include <algorithm>

namespace tdz {

namespace {

// Strata not contained in a larger one.
std::vector<Stratum> maximal_strata(const StratumComplex& c) {
  std::vector<Stratum> out;
  for (const auto& [I, comp] : c.strata) {
    bool covered = false;
    for (const auto& [J, cj] : c.strata)
      if (J.size() > I.size() && std::includes(J.begin(), J.end(), I.begin(), I.end())) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(I);
  }
  return out;
}

}  // namespace

std::vector<std::optional<std::int64_t>> codim_table(const StratumComplex& c, std::int64_t m_max) {
  require_valid(c);
  if (m_max < 0) throw std::invalid_argument("m_max must be non-negative");
  std::vector<std::optional<std::int64_t>> best(m_max + 1);
  std::vector<std::optional<std::int64_t>> dp(m_max + 1);
  for (const auto& I : maximal_strata(c)) {
    std::fill(dp.begin(), dp.end(), std::nullopt);
    dp[0] = 0;
    // unbounded knapsack: supports are subsets of I, hence strata
    for (std::int64_t m = 1; m <= m_max; ++m)
      for (int i : I) {
        const auto& e = c.divisors[i];
        if (e.N > m || !dp[m - e.N]) continue;
        const std::int64_t v = *dp[m - e.N] + e.nu;
        if (!dp[m] || v < *dp[m]) dp[m] = v;
      }
    for (std::int64_t m = 1; m <= m_max; ++m)
      if (dp[m] && (!best[m] || *dp[m] < *best[m])) best[m] = dp[m];
  }
  return best;
}

std::optional<std::int64_t> codim(const StratumComplex& c, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("m must be positive");
  return codim_table(c, m)[m];
}

namespace {

ContactProfile profile_from(const std::vector<std::optional<std::int64_t>>& table, std::int64_t N,
                            std::int64_t d, std::int64_t l_max, std::optional<Rat> limit, const Rat& floor_ratio) {
  ContactProfile p;
  p.N = N;
  p.d = d;
  p.limit = std::move(limit);
  std::optional<Rat> prev;
  for (std::int64_t l = 0; l <= l_max; ++l) {
    ContactSample s{l * N + d, table[l * N + d], std::nullopt};
    if (s.C) {
      s.ratio = make_rat(*s.C, s.m);
      if (prev && *s.ratio > *prev) p.monotone = false;
      if (*s.ratio < floor_ratio || (p.limit && *s.ratio < *p.limit)) p.bounded = false;
      prev = s.ratio;
    }
    p.samples.push_back(s);
  }
  if (p.limit && p.samples.size() >= 2) {
    const auto& a = p.samples[p.samples.size() - 2];
    const auto& b = p.samples.back();
    p.stabilized = a.C && b.C && Rat(*b.C - *a.C) == *p.limit * Rat(N);
  }
  return p;
}

}  // namespace

ContactProfile profile(const StratumComplex& c, std::int64_t d, std::int64_t l_max) {
  const std::int64_t N = period(c);
  if (d < 1 || d > N) throw ValidationError("d must lie in 1..N = " + std::to_string(N));
  if (l_max < 0) throw ValidationError("l_max must be non-negative");
  return profile_from(codim_table(c, l_max * N + d), N, d, l_max, d_lct(c, d), lct(c));
}

std::vector<ContactProfile> profiles(const StratumComplex& c, std::int64_t l_max) {
  const std::int64_t N = period(c);
  if (l_max < 0) throw ValidationError("l_max must be non-negative");
  const auto table = codim_table(c, l_max * N + N);
  const DlctTable dl(c);
  const Rat floor_ratio = lct(c);
  std::vector<ContactProfile> out;
  out.reserve(N);
  for (std::int64_t d = 1; d <= N; ++d) out.push_back(profile_from(table, N, d, l_max, dl.at(d), floor_ratio));
  return out;
}

}  // namespace tdz
