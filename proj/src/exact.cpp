#include "tdz/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace tdz {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(std::string_view s) {
  auto bad = [&] { return ValidationError("malformed rational '" + std::string(s) + "'"); };
  auto parse_int = [&](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) throw bad();
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') throw bad();
    std::string str(t[0] == '+' ? t.substr(1) : t);
    return Int(str, 10);
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  Int n = parse_int(s.substr(0, slash));
  Int d = parse_int(s.substr(slash + 1));
  if (d == 0) throw bad();
  return make_rat(n, d);
}

std::int64_t to_i64(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds 64 bits");
  return z.get_si();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  std::int64_t g = std::gcd(a, b);
  std::int64_t r;
  if (__builtin_mul_overflow(a / g, b, &r)) throw std::overflow_error("lcm overflow");
  return r < 0 ? -r : r;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(char tag, std::int64_t deg, Int coeff) {
  LaurentPoly p(tag);
  if (coeff != 0) p.terms_.emplace_back(deg, std::move(coeff));
  return p;
}

void LaurentPoly::check_tag(const LaurentPoly& o) const {
  if (tag_ != o.tag_)
    throw std::invalid_argument(std::string("mixing Laurent variables '") + tag_ + "' and '" +
                                o.tag_ + "'");
}

std::int64_t LaurentPoly::max_degree() const {
  if (terms_.empty()) throw std::domain_error("degree of zero");
  return terms_.back().first;
}

std::int64_t LaurentPoly::min_degree() const {
  if (terms_.empty()) throw std::domain_error("degree of zero");
  return terms_.front().first;
}

Int LaurentPoly::coeff(std::int64_t deg) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), deg,
                             [](const Term& t, std::int64_t d) { return t.first < d; });
  if (it != terms_.end() && it->first == deg) return it->second;
  return 0;
}

bool LaurentPoly::is_positive() const {
  if (terms_.empty()) return false;
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second > 0; });
}

LaurentPoly LaurentPoly::top() const {
  LaurentPoly r(tag_);
  if (!terms_.empty()) r.terms_.push_back(terms_.back());
  return r;
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.first += k;
  return r;
}

LaurentPoly LaurentPoly::dilated(std::int64_t k) const {
  if (k <= 0) throw std::invalid_argument("dilation factor must be positive");
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.first *= k;
  return r;
}

LaurentPoly& LaurentPoly::add_term(std::int64_t deg, const Int& c) {
  if (c == 0) return *this;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), deg,
                             [](const Term& t, std::int64_t d) { return t.first < d; });
  if (it != terms_.end() && it->first == deg) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term(deg, c));
  }
  return *this;
}

namespace {
template <class Op>
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& a,
                                           const std::vector<LaurentPoly::Term>& b, Op op) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, op(Int(0), b[j].second));
      ++j;
    } else {
      Int c = op(a[i].second, b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return out;
}
}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_tag(o);
  if (o.terms_.empty()) return *this;
  if (o.terms_.size() == 1) return add_term(o.terms_[0].first, o.terms_[0].second);
  terms_ = merge_terms(terms_, o.terms_, [](const Int& x, const Int& y) { return Int(x + y); });
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_tag(o);
  if (o.terms_.size() == 1) return add_term(o.terms_[0].first, -o.terms_[0].second);
  terms_ = merge_terms(terms_, o.terms_, [](const Int& x, const Int& y) { return Int(x - y); });
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Int& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= s;
  }
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_tag(b);
  LaurentPoly r(a.tag_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (b.terms_.size() == 1) {
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) {
      t.first += b.terms_[0].first;
      t.second *= b.terms_[0].second;
    }
    return r;
  }
  if (a.terms_.size() == 1) return b * a;
  std::map<std::int64_t, Int> acc;
  for (const auto& [da, ca] : a.terms_)
    for (const auto& [db, cb] : b.terms_) acc[da + db] += ca * cb;
  for (auto& [d, c] : acc)
    if (c != 0) r.terms_.emplace_back(d, std::move(c));
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [d, c] = *it;
    Int ac = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (d == 0) {
      os << ac.get_str();
      continue;
    }
    if (ac != 1) os << ac.get_str() << "*";
    os << tag_;
    if (d != 1) os << "^" << (d < 0 ? "(" + std::to_string(d) + ")" : std::to_string(d));
  }
  return os.str();
}

// ---------------------------------------------------------------- IntPoly

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

IntPoly poly_divexact(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = a0, b = b0;
  trim(a);
  trim(b);
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::domain_error("inexact polynomial division");
  IntPoly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Int& top = a[k + b.size() - 1];
    if (top % b.back() != 0) throw std::domain_error("inexact polynomial division");
    q[k] = top / b.back();
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  trim(a);
  if (!a.empty()) throw std::domain_error("inexact polynomial division");
  return q;
}

IntPoly poly_rem_monic(IntPoly a, const IntPoly& b) {
  trim(a);
  const std::size_t n = b.size() - 1;
  for (std::size_t k = a.size(); k-- > n;) {
    if (a[k] == 0) continue;
    Int c = a[k];
    for (std::size_t j = 0; j <= n; ++j) a[k - n + j] -= c * b[j];
  }
  trim(a);
  return a;
}

std::string poly_str(const IntPoly& p, char var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (p[k] == 0) continue;
    Int ac = abs(p[k]);
    if (!first) os << (p[k] < 0 ? " - " : " + ");
    else if (p[k] < 0) os << "-";
    first = false;
    if (k == 0 || ac != 1) os << ac.get_str();
    if (k > 0) {
      if (ac != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return first ? "0" : os.str();
}

int moebius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

IntPoly cyclotomic(std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("cyclotomic index must be positive");
  IntPoly num{1}, den{1};
  for (std::int64_t d : divisors(m)) {
    int mu = moebius(m / d);
    if (mu == 0) continue;
    IntPoly f(d + 1);
    f[0] = -1;
    f[d] = 1;
    if (mu > 0) num = poly_mul(num, f);
    else den = poly_mul(den, f);
  }
  return poly_divexact(num, den);
}

// ---------------------------------------------------------------- CycloElem

namespace {
constexpr char kLambda = 'l';

std::shared_ptr<const IntPoly> cached_cyclotomic(std::int64_t m) {
  static std::map<std::int64_t, std::shared_ptr<const IntPoly>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const IntPoly>(cyclotomic(m));
  cache.emplace(m, p);
  return p;
}
}  // namespace

CycloElem::CycloElem(std::int64_t M, std::int64_t N)
    : M_(M), N_(N), phi_(cached_cyclotomic(M)) {
  c_.assign(phi_->size() - 1, LaurentPoly(kLambda));
}

CycloElem CycloElem::lift(std::int64_t M, std::int64_t N, const LaurentPoly& p) {
  CycloElem r(M, N);
  for (const auto& [d, c] : p.terms()) r.c_[0].add_term(d * N, c);
  return r;
}

CycloElem CycloElem::root(std::int64_t M, std::int64_t N, std::int64_t j, std::int64_t c) {
  CycloElem r(M, N);
  std::vector<LaurentPoly> full(M, LaurentPoly(kLambda));
  full[mod_floor(j, M)] = LaurentPoly::monomial(kLambda, c, 1);
  r.reduce(full);
  return r;
}

void CycloElem::reduce(std::vector<LaurentPoly>& full) {
  const IntPoly& phi = *phi_;  // monic
  const std::size_t n = phi.size() - 1;
  for (std::size_t k = full.size(); k-- > n;) {
    if (full[k].is_zero()) continue;
    LaurentPoly top = full[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (phi[j] == 0) continue;
      LaurentPoly t = top;
      t *= Int(-phi[j]);
      full[k - n + j] += t;
    }
    full[k] = LaurentPoly(kLambda);
  }
  full.resize(n, LaurentPoly(kLambda));
  c_ = std::move(full);
}

bool CycloElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  CycloElem r(a.M_, a.N_);
  std::vector<LaurentPoly> full(a.c_.size() + b.c_.size(), LaurentPoly(kLambda));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) full[i + j] += a.c_[i] * b.c_[j];
  }
  r.reduce(full);
  return r;
}

bool operator==(const CycloElem& a, const CycloElem& b) {
  return a.M_ == b.M_ && a.N_ == b.N_ && a.c_ == b.c_;
}

int cyclo_root_multiplicity(const std::vector<LaurentPoly>& Q, std::int64_t c, std::int64_t N,
                            std::int64_t j) {
  std::vector<CycloElem> a;
  a.reserve(Q.size());
  for (const auto& q : Q) a.push_back(CycloElem::lift(N, N, q));
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  if (a.empty()) throw std::domain_error("root multiplicity of the zero polynomial");
  const CycloElem r = CycloElem::root(N, N, j, c);
  int mult = 0;
  while (a.size() > 1) {
    // a(T) = (T - r) q(T) + rem
    std::vector<CycloElem> q(a.size() - 1, CycloElem(N, N));
    q.back() = a.back();
    for (std::size_t k = a.size() - 2; k > 0; --k) {
      q[k - 1] = a[k];
      q[k - 1] += r * q[k];
    }
    CycloElem rem = a[0];
    rem += r * q[0];
    if (!rem.is_zero()) break;
    ++mult;
    a = std::move(q);
  }
  return mult;
}

}  // namespace tdz
