#pragma once

// Exact arithmetic in the rational-function field Q(q): integer-coefficient
// Laurent polynomials in a formal variable q, and reduced fractions of them.
// All scalars appearing in module matrices and operator entries live here.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgl {

/// Bad user-facing input (non-dominant weight, malformed scalar, pole, ...).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A violated internal invariant; never expected on valid input.
class internal_error : public std::runtime_error {
 public:
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

/// Laurent polynomial in q with arbitrary-precision integer coefficients.
/// Invariant: no zero coefficients are stored, so equality is map equality.
class LaurentPoly {
 public:
  using Map = std::map<long, mpz_class>;

  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return monomial(1, 0); }

  static LaurentPoly monomial(mpz_class c, long e) {
    LaurentPoly p;
    if (c != 0) p.c_[e] = std::move(c);
    return p;
  }

  static LaurentPoly integer(mpz_class c) { return monomial(std::move(c), 0); }

  bool isZero() const { return c_.empty(); }
  const Map& terms() const { return c_; }

  long lowExp() const {
    if (isZero()) throw internal_error("lowExp of zero polynomial");
    return c_.begin()->first;
  }
  long highExp() const {
    if (isZero()) throw internal_error("highExp of zero polynomial");
    return c_.rbegin()->first;
  }

  const mpz_class* coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? nullptr : &it->second;
  }

  void addTerm(long e, const mpz_class& c) {
    if (c == 0) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.c_) addTerm(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.c_) addTerm(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.c_)
      for (const auto& [eb, cb] : b.c_) r.addTerm(ea + eb, ca * cb);
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[e] = -c;
    return r;
  }

  /// Multiply by q^d.
  LaurentPoly shifted(long d) const {
    LaurentPoly r;
    for (const auto& [e, c] : c_) r.c_[e + d] = c;
    return r;
  }

  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  bool operator<(const LaurentPoly& o) const { return c_ < o.c_; }

  /// gcd of the coefficients, positive; 0 for the zero polynomial.
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : c_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  LaurentPoly divExactInt(const mpz_class& d) const {
    if (d == 0) throw internal_error("division by zero integer");
    LaurentPoly r;
    for (const auto& [e, c] : c_) {
      mpz_class qt, rem;
      mpz_tdiv_qr(qt.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      if (rem != 0) throw internal_error("inexact integer division of polynomial");
      r.c_[e] = qt;
    }
    return r;
  }

  /// Exact division; throws internal_error when the division is not exact.
  LaurentPoly divExact(const LaurentPoly& d) const;

  /// gcd in Z[q,q^-1], normalized: lowest exponent 0, positive lowest coefficient.
  static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

  /// Exact evaluation at a nonzero rational point.
  mpq_class evalAt(const mpq_class& q0) const {
    if (q0 == 0) throw domain_error("evaluation at q=0 is undefined for Laurent polynomials");
    mpq_class acc = 0, pw;
    for (const auto& [e, c] : c_) {
      pw = 1;
      mpq_class base = e >= 0 ? q0 : mpq_class(1) / q0;
      for (long i = 0; i < (e >= 0 ? e : -e); ++i) pw *= base;
      acc += mpq_class(c) * pw;
    }
    return acc;
  }

  /// Canonical text form: `c*q^e` terms, ascending exponent, joined by `+`.
  std::string str() const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
      if (!first) os << "+";
      os << c.get_str() << "*q^" << e;
      first = false;
    }
    return os.str();
  }

  static std::optional<LaurentPoly> parse(const std::string& s);

 private:
  Map c_;

  // Dense representation over Z[q] (lowest exponent shifted to zero).
  struct Dense {
    std::vector<mpz_class> c;  // c[i] multiplies q^i
    long shift = 0;            // original lowest exponent
  };
  Dense dense() const {
    Dense d;
    if (isZero()) return d;
    d.shift = lowExp();
    d.c.assign(static_cast<size_t>(highExp() - lowExp() + 1), mpz_class(0));
    for (const auto& [e, c] : c_) d.c[static_cast<size_t>(e - d.shift)] = c;
    return d;
  }
  static LaurentPoly fromDense(const std::vector<mpz_class>& v, long shift) {
    LaurentPoly p;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) p.c_[static_cast<long>(i) + shift] = v[i];
    return p;
  }
  static void trim(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }
  // Strip q^k | p and divide by the integer content; requires p nonzero.
  static void makePrimitive(std::vector<mpz_class>& v) {
    size_t k = 0;
    while (k < v.size() && v[k] == 0) ++k;
    if (k > 0) v.erase(v.begin(), v.begin() + static_cast<long>(k));
    mpz_class g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
      for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  // Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
  static std::vector<mpz_class> prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    const mpz_class& lb = b.back();
    while (a.size() >= b.size()) {
      mpz_class la = a.back();
      size_t off = a.size() - b.size();
      for (auto& c : a) c *= lb;
      for (size_t i = 0; i < b.size(); ++i) a[off + i] -= la * b[i];
      trim(a);
      if (a.empty()) break;
    }
    return a;
  }
};

inline LaurentPoly LaurentPoly::divExact(const LaurentPoly& d) const {
  if (d.isZero()) throw internal_error("division by zero polynomial");
  if (isZero()) return LaurentPoly();
  Dense nu = dense(), de = d.dense();
  trim(nu.c);
  trim(de.c);
  if (nu.c.size() < de.c.size()) throw internal_error("inexact polynomial division");
  std::vector<mpz_class> qt(nu.c.size() - de.c.size() + 1, mpz_class(0));
  std::vector<mpz_class> rem = nu.c;
  for (long i = static_cast<long>(qt.size()) - 1; i >= 0; --i) {
    size_t top = de.c.size() - 1 + static_cast<size_t>(i);
    if (rem.size() <= top || rem[top] == 0) continue;
    mpz_class c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), rem[top].get_mpz_t(), de.c.back().get_mpz_t());
    if (r != 0) throw internal_error("inexact polynomial division");
    qt[static_cast<size_t>(i)] = c;
    for (size_t j = 0; j < de.c.size(); ++j) rem[static_cast<size_t>(i) + j] -= c * de.c[j];
  }
  for (const auto& c : rem)
    if (c != 0) throw internal_error("inexact polynomial division");
  return fromDense(qt, nu.shift - de.shift);
}

inline LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.isZero() && b.isZero()) return LaurentPoly();
  auto canon = [](const LaurentPoly& p) {
    LaurentPoly r = p.shifted(-p.lowExp());
    if (r.c_.begin()->second < 0) r = -r;
    mpz_class ct = r.content();
    if (ct > 1) r = r.divExactInt(ct);
    return r;
  };
  if (a.isZero()) return canon(b);
  if (b.isZero()) return canon(a);

  mpz_class gc;
  mpz_gcd(gc.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());

  Dense da = a.dense(), db = b.dense();
  std::vector<mpz_class> r0 = da.c, r1 = db.c;
  makePrimitive(r0);
  makePrimitive(r1);
  if (r1.size() > r0.size()) std::swap(r0, r1);
  while (!r1.empty()) {
    std::vector<mpz_class> r2 = prem(r0, r1);
    if (!r2.empty()) makePrimitive(r2);
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  LaurentPoly g = fromDense(r0, 0);
  if (gc > 1) {
    LaurentPoly gi = integer(gc);
    g = g * gi;
  }
  if (g.c_.begin()->second < 0) g = -g;
  return g;
}

inline std::optional<LaurentPoly> LaurentPoly::parse(const std::string& s) {
  if (s == "0") return LaurentPoly();
  LaurentPoly p;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = s.find('+', i);
    if (j == std::string::npos) j = s.size();
    std::string term = s.substr(i, j - i);
    size_t star = term.find("*q^");
    if (star == std::string::npos) return std::nullopt;
    try {
      mpz_class c(term.substr(0, star));
      long e = std::stol(term.substr(star + 3));
      if (c == 0) return std::nullopt;
      p.addTerm(e, c);
    } catch (...) {
      return std::nullopt;
    }
    i = j + 1;
  }
  return p;
}

/// Element of Q(q): reduced fraction of Laurent polynomials.
/// Canonical form: gcd(num,den) is a unit, the denominator's lowest exponent
/// is 0 and its lowest coefficient is positive.  Equality is then structural.
class QScalar {
 public:
  QScalar() : num_(), den_(LaurentPoly::one()) {}
  QScalar(long v) : num_(LaurentPoly::integer(v)), den_(LaurentPoly::one()) {}  // NOLINT
  QScalar(int v) : QScalar(static_cast<long>(v)) {}                             // NOLINT
  explicit QScalar(const mpz_class& v) : num_(LaurentPoly::integer(v)), den_(LaurentPoly::one()) {}
  explicit QScalar(const mpq_class& v)
      : num_(LaurentPoly::integer(v.get_num())), den_(LaurentPoly::integer(v.get_den())) {
    reduce();
  }

  /// num/den with normalization; den == 0 is a domain_error.
  static QScalar fraction(LaurentPoly num, LaurentPoly den) {
    if (den.isZero()) throw domain_error("QScalar with zero denominator");
    QScalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.reduce();
    return s;
  }

  static QScalar q(long e = 1) {
    return fraction(LaurentPoly::monomial(1, e), LaurentPoly::one());
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_ == LaurentPoly::one() && den_ == LaurentPoly::one(); }

  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }
  bool operator<(const QScalar& o) const {
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
  }

  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend QScalar operator+(const QScalar& a, const QScalar& b) {
    if (a.isZero()) return b;
    if (b.isZero()) return a;
    return fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }
  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.isZero() || b.isZero()) return QScalar();
    return fraction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend QScalar operator/(const QScalar& a, const QScalar& b) {
    if (b.isZero()) throw domain_error("division by zero QScalar");
    if (a.isZero()) return QScalar();
    return fraction(a.num_ * b.den_, a.den_ * b.num_);
  }
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar& operator/=(const QScalar& o) { return *this = *this / o; }

  QScalar inverse() const {
    if (isZero()) throw domain_error("inverse of zero QScalar");
    return fraction(den_, num_);
  }

  QScalar pow(long e) const {
    if (e == 0) return QScalar(1);
    QScalar base = e > 0 ? *this : inverse();
    long n = e > 0 ? e : -e;
    QScalar r(1);
    while (n > 0) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  /// Exact evaluation at q = q0 (nonzero rational); pole -> domain_error.
  mpq_class evalAt(const mpq_class& q0) const {
    if (q0 == 0) throw domain_error("q0 = 0 rejected: q^-1 undefined");
    mpq_class d = den_.evalAt(q0);
    if (d == 0) throw domain_error("pole of QScalar at q0");
    mpq_class n = num_.evalAt(q0);
    n /= d;
    n.canonicalize();
    return n;
  }

  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

  static std::optional<QScalar> parse(const std::string& s) {
    if (s.size() < 5 || s.front() != '(') return std::nullopt;
    size_t mid = s.find(")/(");
    if (mid == std::string::npos || s.back() != ')') return std::nullopt;
    auto n = LaurentPoly::parse(s.substr(1, mid - 1));
    auto d = LaurentPoly::parse(s.substr(mid + 3, s.size() - mid - 4));
    if (!n || !d || d->isZero()) return std::nullopt;
    return fraction(*n, *d);
  }

 private:
  LaurentPoly num_, den_;

  void reduce() {
    if (num_.isZero()) {
      den_ = LaurentPoly::one();
      return;
    }
    LaurentPoly g = LaurentPoly::gcd(num_, den_);
    if (!(g == LaurentPoly::one())) {
      num_ = num_.divExact(g);
      den_ = den_.divExact(g);
    }
    long sh = den_.lowExp();
    num_ = num_.shifted(-sh);
    den_ = den_.shifted(-sh);
    if (den_.terms().begin()->second < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }
};

/// Idempotent canonicalization; the class keeps values canonical already.
inline QScalar normalize(const QScalar& s) { return QScalar::fraction(s.num(), s.den()); }

/// q-integer [k] = (q^k - q^-k)/(q - q^-1); qInt(-k) = -qInt(k).
inline QScalar qInt(long k) {
  if (k == 0) return QScalar(0);
  LaurentPoly num = LaurentPoly::monomial(1, k) - LaurentPoly::monomial(1, -k);
  LaurentPoly den = LaurentPoly::monomial(1, 1) - LaurentPoly::monomial(1, -1);
  return QScalar::fraction(num, den);
}

/// [k]! = [1][2]...[k]; k < 0 rejected.
inline QScalar qFactorial(long k) {
  if (k < 0) throw domain_error("qFactorial of negative integer");
  QScalar r(1);
  for (long j = 2; j <= k; ++j) r *= qInt(j);
  return r;
}

/// Gaussian binomial [n]!/([k]![n-k]!).
inline QScalar qBinomial(long n, long k) {
  if (k < 0 || k > n) return QScalar(0);
  return qFactorial(n) / (qFactorial(k) * qFactorial(n - k));
}

}  // namespace qgl
