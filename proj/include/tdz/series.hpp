// Rational power series in T over Z[X^{±1}]: expansion, normalization,
// top-degree transforms and pole reports.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdz/exact.hpp"

namespace tdz {

// Dense polynomial in T whose coefficients are Laurent polynomials in one variable.
class TPoly {
 public:
  explicit TPoly(char tag = 'L') : tag_(tag) {}

  char tag() const { return tag_; }
  std::size_t size() const { return c_.size(); }  // one past the highest T-degree
  bool is_zero() const { return c_.empty(); }
  const LaurentPoly& operator[](std::size_t k) const { return c_[k]; }
  LaurentPoly at(std::int64_t k) const;
  const std::vector<LaurentPoly>& coeffs() const { return c_; }

  void add(std::int64_t k, const LaurentPoly& p);
  void add_term(std::int64_t k, std::int64_t deg, const Int& c);
  void set(std::int64_t k, LaurentPoly p);
  void trim();
  std::size_t term_count() const;

  TPoly shifted(std::int64_t k) const;  // multiply by T^k
  // Multiply by (1 - a T^s), in place.
  void mul_binomial(const LaurentPoly& a, std::int64_t s);
  // Divide by (1 - a T^s) exactly; throws std::domain_error if inexact.
  void div_binomial(const LaurentPoly& a, std::int64_t s);

  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend bool operator==(const TPoly& a, const TPoly& b);

  std::string str() const;

 private:
  char tag_;
  std::vector<LaurentPoly> c_;
};

// (1 - X^{-c} T^N)^e
struct DenFactor {
  std::int64_t c = 0;
  std::int64_t N = 1;
  int e = 1;
  friend bool operator==(const DenFactor&, const DenFactor&) = default;
};

struct StandardExpr {
  TPoly num;
  std::vector<DenFactor> den;

  StandardExpr() = default;
  StandardExpr(TPoly n, std::vector<DenFactor> d) : num(std::move(n)), den(std::move(d)) {}
  char tag() const { return num.tag(); }
};

// Coefficients of T^0..T^order.
TPoly expand(const StandardExpr& e, std::int64_t order);
// Rewrites every factor with the common period lcm(N_i); equal factors merged, sorted by c.
// Throws EnumCapError when the rewritten numerator would exceed kNormalizeCap terms.
inline constexpr std::uint64_t kNormalizeCap = 50'000'000;
StandardExpr normalize_common(const StandardExpr& e);
// Upper estimate of the term count normalize_common would produce.
double normalized_term_estimate(const StandardExpr& e);
// Equality as power series, by cross-multiplication.
bool series_equal(const StandardExpr& a, const StandardExpr& b);
// X -> Y^2 with a new variable tag.
StandardExpr substitute_square(const StandardExpr& e, char new_tag);
// The full denominator as a polynomial.
TPoly denominator_poly(const StandardExpr& e);

// Keeps, in each residue class mod d, the coefficients maximizing deg q_i - c*floor(i/d),
// replaced by their leading terms.  j-th iterate removes the earlier layers first.
TPoly td_Q(const TPoly& Q, std::int64_t c, std::int64_t d, int j = 1);

// td of every coefficient.
TPoly td_coeffs(const TPoly& p);

// (1 - m X^g T^d)
struct Factor {
  Int m = 1;
  std::int64_t g = 0;
  std::int64_t d = 1;
};

// B / prod (1 - m_i X^{g_i} T^{d_i}) with B having positive coefficients.
struct BasicTerm {
  TPoly B;
  std::vector<Factor> factors;
};

struct TdBasic {
  TPoly P;                     // numerator over the maximizing factors
  std::vector<Factor> den;     // maximizing factors rewritten with period d
  std::int64_t d = 1;
  std::int64_t exact_from = 0; // td agrees with P/den from this T-degree on
};

TdBasic td_basic(const BasicTerm& t);

// b T^{w + l d} / prod_j (1 - a_j T^d)
struct MonoTerm {
  LaurentPoly b;
  std::int64_t w = 0;
  std::int64_t l = 0;
  std::vector<LaurentPoly> a;
};

struct TdSum {
  std::vector<std::size_t> survivors;
  std::map<std::int64_t, std::int64_t> exact_from_k;  // per residue w
};

// Terms whose top degrees dominate their residue class for large k.
TdSum td_sum(const std::vector<MonoTerm>& terms, std::int64_t d);

struct TdResult {
  StandardExpr rational;
  TPoly W;  // finitely many corrections
  StandardExpr combined() const;
};

// Positive sums of basic terms; all factors must have m = 1.
TdResult td_expr(const std::vector<BasicTerm>& terms);
// Any standard expression.  Residue classes modulo the common period when the
// normalized numerator stays under kNormalizeCap, td_expr_by_slopes otherwise.
TdResult td_expr(const StandardExpr& e);
// Through the poles of each slope separately; no common period is formed.
TdResult td_expr_by_slopes(const StandardExpr& e);

// Top-degree expansion of a positive basic term sum, coefficients T^0..T^order.
TPoly td_expand(const std::vector<BasicTerm>& terms, std::int64_t order);

enum class PoleMode { PerRoot, RootOfUnityOne };

// pole q = -c/N mapped to its order; poles of order 0 are omitted.
using PoleReport = std::map<Rat, int>;

PoleReport poles(const StandardExpr& e, PoleMode mode = PoleMode::PerRoot);
// Same report through cyclo_root_multiplicity on every root; small periods only.
PoleReport poles_by_roots(const StandardExpr& e, PoleMode mode = PoleMode::PerRoot);

std::string to_string(const PoleReport& r);

}  // namespace tdz
