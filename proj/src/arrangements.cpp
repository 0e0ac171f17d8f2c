#include "tdz/arrangements.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_map>

namespace tdz {

void validate_arrangement(const Arrangement& a) {
  if (a.ambient_dim < 1) throw ValidationError("ambient_dim must be positive");
  if (a.hyperplanes.empty()) throw ValidationError("the arrangement has no hyperplanes");
  if (a.hyperplanes.size() > kMaxHyperplanes)
    throw ValidationError("at most " + std::to_string(kMaxHyperplanes) + " hyperplanes are supported");
  for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
    const auto& h = a.hyperplanes[i];
    const std::string at = "hyperplane " + std::to_string(i + 1);
    if (static_cast<int>(h.size()) != a.ambient_dim)
      throw ValidationError(at + " has " + std::to_string(h.size()) + " coefficients, expected " +
                            std::to_string(a.ambient_dim));
    if (std::all_of(h.begin(), h.end(), [](const Rat& x) { return x == 0; }))
      throw ValidationError(at + " is the zero form");
    for (std::size_t j = 0; j < i; ++j)
      if (rank({a.hyperplanes[j], h}) < 2)
        throw ValidationError(at + " is proportional to hyperplane " + std::to_string(j + 1));
  }
}

int rank(const std::vector<std::vector<Rat>>& rows0) {
  auto rows = rows0;
  int r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t col = 0; col < cols && r < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const Rat f = rows[i][col] / rows[r][col];
      for (std::size_t k = col; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

namespace {

using Mask = std::uint32_t;

struct Lattice {
  const Arrangement& a;
  std::unordered_map<Mask, int> ranks;

  int rank_of(Mask m) {
    auto it = ranks.find(m);
    if (it != ranks.end()) return it->second;
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i)
      if (m >> i & 1) rows.push_back(a.hyperplanes[i]);
    return ranks[m] = rank(rows);
  }

  Mask closure(Mask m) {
    const int r = rank_of(m);
    for (std::size_t j = 0; j < a.hyperplanes.size(); ++j)
      if (!(m >> j & 1) && rank_of(m | Mask{1} << j) == r) m |= Mask{1} << j;
    return m;
  }
};

std::vector<int> members(Mask m) {
  std::vector<int> v;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) v.push_back(i);
  return v;
}

}  // namespace

std::vector<Edge> intersection_lattice(const Arrangement& a) {
  validate_arrangement(a);
  Lattice L{a, {}};
  std::set<Mask> flats;
  std::vector<Mask> todo;
  for (std::size_t i = 0; i < a.hyperplanes.size(); ++i)
    if (flats.insert(Mask{1} << i).second) todo.push_back(Mask{1} << i);
  while (!todo.empty()) {
    const Mask f = todo.back();
    todo.pop_back();
    for (std::size_t h = 0; h < a.hyperplanes.size(); ++h) {
      if (f >> h & 1) continue;
      const Mask g = L.closure(f | Mask{1} << h);
      if (flats.insert(g).second) todo.push_back(g);
    }
  }
  std::vector<Edge> out;
  for (Mask f : flats) {
    Edge e;
    e.hyperplanes = members(f);
    e.codim = L.rank_of(f);
    if (e.hyperplanes.size() == 1) {
      e.id = "H" + std::to_string(e.hyperplanes[0] + 1);
    } else {
      e.id = "W";
      for (std::size_t i = 0; i < e.hyperplanes.size(); ++i)
        e.id += (i ? "." : "") + std::to_string(e.hyperplanes[i] + 1);
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.codim, x.hyperplanes) < std::tie(y.codim, y.hyperplanes);
  });
  return out;
}

StratumComplex build_complex(const Arrangement& a) {
  const auto edges = intersection_lattice(a);
  StratumComplex c;
  c.ambient_dim = a.ambient_dim;
  std::vector<Mask> mask;
  for (const auto& e : edges) {
    c.add_divisor(e.id, static_cast<std::int64_t>(e.hyperplanes.size()), e.codim,
                  {e.hyperplanes.size() == 1 ? "hyperplane" : "edge"});
    Mask m = 0;
    for (int h : e.hyperplanes) m |= Mask{1} << h;
    mask.push_back(m);
  }
  // flags W_1 < ... < W_k, i.e. strictly decreasing hyperplane sets
  const int n = static_cast<int>(edges.size());
  std::vector<int> chain;
  std::function<void(int)> extend = [&](int last) {
    c.add_stratum(Stratum(chain.begin(), chain.end()));
    for (int j = 0; j < n; ++j)
      if (mask[j] != mask[last] && (mask[j] & mask[last]) == mask[j]) {
        chain.push_back(j);
        extend(j);
        chain.pop_back();
      }
  };
  for (int i = 0; i < n; ++i) {
    chain = {i};
    extend(i);
  }
  return c;
}

OnlyLctReport check_only_lct(const Arrangement& a) {
  const auto edges = intersection_lattice(a);
  const auto c = build_complex(a);
  OnlyLctReport rep;
  const Edge* best = nullptr;
  for (const auto& e : edges) {
    const Rat al = make_rat(e.codim, static_cast<std::int64_t>(e.hyperplanes.size()));
    if (!best || al < rep.lct) {
      rep.lct = al;
      best = &e;
    }
  }
  rep.remarkable = remarkable(c);
  rep.witness = {best->id};
  if (best->hyperplanes.size() > 1) rep.witness.push_back("H" + std::to_string(best->hyperplanes[0] + 1));
  Stratum w;
  for (const auto& id : rep.witness) w.push_back(c.index_of(id));
  std::sort(w.begin(), w.end());
  const auto st = stats(c, w);
  rep.pass = rep.remarkable == std::set<Rat>{rep.lct} && lct(c) == rep.lct && st.N == 1 && st.alpha == rep.lct;
  if (!rep.pass) {
    rep.message = "only-lct check failed: lct " + to_string(rep.lct) + ", remarkable {";
    bool first = true;
    for (const auto& r : rep.remarkable) {
      if (r == rep.lct) continue;
      rep.message += (first ? "" : ", ") + to_string(r);
      first = false;
    }
    rep.message += "} beyond it";
  }
  return rep;
}

}  // namespace tdz
