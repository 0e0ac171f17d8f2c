// Exact arithmetic: rationals, Laurent polynomials, integer polynomials and
// cyclotomic elements.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdz {

using Int = mpz_class;
using Rat = mpq_class;

// Raised for malformed input; the CLI maps it to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computation would exceed a size cap; exit code 3.
struct EnumCapError : std::runtime_error {
  EnumCapError(const std::string& what, std::uint64_t size, std::uint64_t cap)
      : std::runtime_error(what), size(size), cap(cap) {}
  std::uint64_t size, cap;
};

Rat make_rat(const Int& num, const Int& den);
std::string to_string(const Rat& q);   // "p/q", or "p" when q == 1
Rat parse_rat(std::string_view s);     // accepts "p", "p/q", "-p/q"
std::string to_string(const Int& z);

std::int64_t to_i64(const Int& z);     // throws std::overflow_error
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);  // throws on overflow

// Sum of c_i X^{d_i} over Z, X a named formal variable.
class LaurentPoly {
 public:
  using Term = std::pair<std::int64_t, Int>;

  explicit LaurentPoly(char tag = 'L') : tag_(tag) {}
  static LaurentPoly monomial(char tag, std::int64_t deg, Int coeff = 1);
  static LaurentPoly constant(char tag, Int c) { return monomial(tag, 0, std::move(c)); }

  char tag() const { return tag_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }

  std::int64_t max_degree() const;   // requires nonzero
  std::int64_t min_degree() const;
  const Int& lead() const { return terms_.back().second; }
  Int coeff(std::int64_t deg) const;
  bool is_positive() const;          // nonzero, all coefficients > 0
  bool is_homogeneous() const { return terms_.size() == 1; }

  // Leading term as a one-term polynomial; zero for zero.
  LaurentPoly top() const;
  LaurentPoly shifted(std::int64_t k) const;  // multiply by X^k
  // X -> X^k for k > 0.
  LaurentPoly dilated(std::int64_t k) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Int& s);
  LaurentPoly& add_term(std::int64_t deg, const Int& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.tag_ == b.tag_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  void check_tag(const LaurentPoly& o) const;
  char tag_;
  std::vector<Term> terms_;  // ascending degree, nonzero coefficients
};

// Top-degree part of a polynomial with positive coefficients.
inline LaurentPoly laurent_top(const LaurentPoly& p) { return p.top(); }

// Dense polynomial over Z, coefficient i of t^i.
using IntPoly = std::vector<Int>;

void trim(IntPoly& p);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
// Exact division; throws std::domain_error when b does not divide a.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& b);
IntPoly poly_rem_monic(IntPoly a, const IntPoly& b);
std::string poly_str(const IntPoly& p, char var = 't');

int moebius(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
// Phi_m via prod_{d|m} (x^d - 1)^{mu(m/d)}.
IntPoly cyclotomic(std::int64_t m);

// Element of Z[L^{±1/N}][zeta_M] stored as coefficients of zeta^0..zeta^{phi(M)-1},
// each a Laurent polynomial in Lambda = L^{1/N}.
class CycloElem {
 public:
  CycloElem(std::int64_t M, std::int64_t N);
  static CycloElem lift(std::int64_t M, std::int64_t N, const LaurentPoly& p);  // p in L
  static CycloElem root(std::int64_t M, std::int64_t N, std::int64_t j, std::int64_t c);  // zeta^j Lambda^c

  bool is_zero() const;
  CycloElem& operator+=(const CycloElem& o);
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
  friend bool operator==(const CycloElem& a, const CycloElem& b);

  std::int64_t conductor() const { return M_; }

 private:
  void reduce(std::vector<LaurentPoly>& full);
  std::int64_t M_, N_;
  std::shared_ptr<const IntPoly> phi_;
  std::vector<LaurentPoly> c_;
};

// Multiplicity of (T - zeta_N^j L^{c/N}) in Q, by repeated synthetic division.
int cyclo_root_multiplicity(const std::vector<LaurentPoly>& Q, std::int64_t c, std::int64_t N,
                            std::int64_t j);

}  // namespace tdz
