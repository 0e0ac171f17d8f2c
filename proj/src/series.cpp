#include "tdz/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tdz {

namespace {
LaurentPoly retag(const LaurentPoly& p, char tag, std::int64_t scale) {
  LaurentPoly r(tag);
  for (const auto& [d, c] : p.terms()) r.add_term(d * scale, c);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- TPoly

LaurentPoly TPoly::at(std::int64_t k) const {
  if (k < 0 || k >= static_cast<std::int64_t>(c_.size())) return LaurentPoly(tag_);
  return c_[k];
}

void TPoly::add(std::int64_t k, const LaurentPoly& p) {
  if (k < 0) throw std::invalid_argument("negative T-degree");
  if (p.is_zero()) return;
  if (k >= static_cast<std::int64_t>(c_.size())) c_.resize(k + 1, LaurentPoly(tag_));
  c_[k] += p;
}

void TPoly::add_term(std::int64_t k, std::int64_t deg, const Int& c) {
  if (k < 0) throw std::invalid_argument("negative T-degree");
  if (c == 0) return;
  if (k >= static_cast<std::int64_t>(c_.size())) c_.resize(k + 1, LaurentPoly(tag_));
  c_[k].add_term(deg, c);
}

void TPoly::set(std::int64_t k, LaurentPoly p) {
  if (k >= static_cast<std::int64_t>(c_.size())) c_.resize(k + 1, LaurentPoly(tag_));
  c_[k] = std::move(p);
}

void TPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::size_t TPoly::term_count() const {
  std::size_t n = 0;
  for (const auto& p : c_) n += p.size();
  return n;
}

TPoly TPoly::shifted(std::int64_t k) const {
  TPoly r(tag_);
  if (c_.empty()) return r;
  r.c_.assign(k, LaurentPoly(tag_));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

void TPoly::mul_binomial(const LaurentPoly& a, std::int64_t s) {
  if (c_.empty() || a.is_zero()) return;
  const std::size_t n = c_.size();
  c_.resize(n + s, LaurentPoly(tag_));
  for (std::size_t k = n; k-- > 0;)
    if (!c_[k].is_zero()) c_[k + s] -= a * c_[k];
  trim();
}

void TPoly::div_binomial(const LaurentPoly& a, std::int64_t s) {
  trim();
  if (c_.empty()) return;
  const std::int64_t n = c_.size();
  for (std::int64_t k = s; k < n; ++k)
    if (!c_[k - s].is_zero()) c_[k] += a * c_[k - s];
  for (std::int64_t k = std::max<std::int64_t>(0, n - s); k < n; ++k)
    if (!c_[k].is_zero()) throw std::domain_error("inexact division by binomial");
  c_.resize(std::max<std::int64_t>(0, n - s), LaurentPoly(tag_));
  trim();
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (o.tag_ != tag_ && !o.c_.empty()) throw std::invalid_argument("mixing T-polynomial variables");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), LaurentPoly(tag_));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  if (o.tag_ != tag_ && !o.c_.empty()) throw std::invalid_argument("mixing T-polynomial variables");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), LaurentPoly(tag_));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  TPoly r(a.tag_);
  if (a.c_.empty() || b.c_.empty()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, LaurentPoly(a.tag_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

bool operator==(const TPoly& a, const TPoly& b) {
  TPoly x = a, y = b;
  x.trim();
  y.trim();
  if (x.c_.empty() && y.c_.empty()) return true;
  return x.tag_ == y.tag_ && x.c_ == y.c_;
}

std::string TPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].str() << ")";
    if (k > 0) os << "*T" << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------- expressions

TPoly expand(const StandardExpr& e, std::int64_t order) {
  std::vector<LaurentPoly> c(order + 1, LaurentPoly(e.tag()));
  for (std::int64_t k = 0; k <= order; ++k) c[k] = e.num.at(k);
  for (const auto& f : e.den) {
    const LaurentPoly a = LaurentPoly::monomial(e.tag(), -f.c);
    for (int rep = 0; rep < f.e; ++rep)
      for (std::int64_t k = f.N; k <= order; ++k)
        if (!c[k - f.N].is_zero()) c[k] += a * c[k - f.N];
  }
  TPoly out(e.tag());
  for (std::int64_t k = 0; k <= order; ++k)
    if (!c[k].is_zero()) out.set(k, std::move(c[k]));
  return out;
}

double normalized_term_estimate(const StandardExpr& e) {
  if (e.num.is_zero() || e.den.empty()) return static_cast<double>(e.num.term_count());
  std::int64_t P = 1;
  for (const auto& f : e.den) P = lcm64(P, f.N);
  // the T-span times the X-span, and the product of the cofactor lengths
  double tspan = static_cast<double>(e.num.size());
  std::int64_t lo = 0, hi = 0;
  bool first = true;
  for (const auto& p : e.num.coeffs())
    for (const auto& [d, c] : p.terms()) {
      lo = first ? d : std::min(lo, d);
      hi = first ? d : std::max(hi, d);
      first = false;
    }
  double xspan = static_cast<double>(hi - lo + 1);
  double prod = static_cast<double>(e.num.term_count());
  for (const auto& f : e.den) {
    const double rho = static_cast<double>(P / f.N);
    tspan += f.e * static_cast<double>(P - f.N);
    xspan += f.e * std::abs(static_cast<double>(f.c)) * (rho - 1);
    prod *= std::pow(rho, f.e);
  }
  return std::min(tspan * xspan, prod);
}

StandardExpr normalize_common(const StandardExpr& e) {
  for (const auto& f : e.den)
    if (f.N <= 0 || f.e < 0) throw ValidationError("denominator factor needs N > 0 and e >= 0");
  if (e.den.empty()) return e;
  std::int64_t P = 1;
  for (const auto& f : e.den) P = lcm64(P, f.N);
  if (const double est = normalized_term_estimate(e); est > static_cast<double>(kNormalizeCap)) {
    std::ostringstream msg;
    msg << "rewriting " << e.den.size() << " denominator factors with common period " << P << " needs about "
        << std::scientific << est << " numerator terms (cap " << kNormalizeCap << ")";
    throw EnumCapError(msg.str(), static_cast<std::uint64_t>(std::min(est, 1.8e19)), kNormalizeCap);
  }
  TPoly num = e.num;
  std::map<std::int64_t, int> merged;
  for (const auto& f : e.den) {
    if (f.e == 0) continue;
    const std::int64_t rho = P / f.N;
    if (rho > 1) {
      const LaurentPoly a = LaurentPoly::monomial(e.tag(), -f.c);
      const LaurentPoly aP = LaurentPoly::monomial(e.tag(), -f.c * rho);
      for (int rep = 0; rep < f.e; ++rep) {
        num.mul_binomial(aP, P);
        num.div_binomial(a, f.N);
      }
    }
    merged[f.c * rho] += f.e;
  }
  std::vector<DenFactor> den;
  for (const auto& [c, mult] : merged) den.push_back({c, P, mult});
  return {num, den};
}

TPoly denominator_poly(const StandardExpr& e) {
  TPoly d(e.tag());
  d.add_term(0, 0, 1);
  for (const auto& f : e.den) {
    const LaurentPoly a = LaurentPoly::monomial(e.tag(), -f.c);
    for (int rep = 0; rep < f.e; ++rep) d.mul_binomial(a, f.N);
  }
  return d;
}

bool series_equal(const StandardExpr& a, const StandardExpr& b) {
  if (a.num.is_zero() && b.num.is_zero()) return true;
  if (a.tag() != b.tag() && !a.num.is_zero() && !b.num.is_zero()) return false;
  return a.num * denominator_poly(b) == b.num * denominator_poly(a);
}

StandardExpr substitute_square(const StandardExpr& e, char new_tag) {
  TPoly num(new_tag);
  for (std::size_t k = 0; k < e.num.size(); ++k) num.add(k, retag(e.num[k], new_tag, 2));
  std::vector<DenFactor> den = e.den;
  for (auto& f : den) f.c *= 2;
  return {num, den};
}

// ---------------------------------------------------------------- td_Q

TPoly td_coeffs(const TPoly& p) {
  TPoly r(p.tag());
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!p[k].is_zero()) r.set(k, p[k].top());
  return r;
}

namespace {
TPoly td_layer(const TPoly& Q, std::int64_t c, std::int64_t d) {
  std::vector<std::optional<std::int64_t>> best(d);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (Q[i].is_zero()) continue;
    const std::int64_t adj = Q[i].max_degree() - c * static_cast<std::int64_t>(i / d);
    auto& b = best[i % d];
    if (!b || adj > *b) b = adj;
  }
  TPoly r(Q.tag());
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (Q[i].is_zero()) continue;
    const std::int64_t adj = Q[i].max_degree() - c * static_cast<std::int64_t>(i / d);
    if (adj == *best[i % d]) r.set(i, Q[i].top());
  }
  return r;
}
}  // namespace

TPoly td_Q(const TPoly& Q, std::int64_t c, std::int64_t d, int j) {
  if (d <= 0 || j < 1) throw std::invalid_argument("td_Q needs d > 0 and j >= 1");
  TPoly rest = Q;
  rest.trim();
  TPoly layer(Q.tag());
  for (int s = 1; s <= j; ++s) {
    layer = td_layer(rest, c, d);
    rest -= layer;
  }
  return layer;
}

std::string to_string(const PoleReport& r) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [q, n] : r) {
    os << (first ? "" : ", ") << to_string(q) << ": " << n;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace tdz
