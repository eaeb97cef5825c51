#pragma once

// Parity-graded sparse linear maps with QScalar entries, the operator
// builders on a SuperSpace (derivatives, q-difference and q-scaling
// operators), graded commutators, and truncated exponentials.

#include "qgl/superspace.hpp"

#include <functional>
#include <utility>

namespace qgl {

constexpr int kParityMixed = -1;

/// Column-major sparse matrix.  parity 0/1 when homogeneous, -1 when mixed
/// (e.g. a sum of an even and an odd operator, as in q-exponentials).
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(int rows, int cols, int parity = 0)
      : rows_(rows), cols_(cols), parity_(parity), col_(static_cast<size_t>(cols)) {}

  static SuperOperator identity(int n) {
    SuperOperator I(n, n, 0);
    for (int j = 0; j < n; ++j) I.col_[static_cast<size_t>(j)][j] = QScalar(1);
    return I;
  }
  static SuperOperator zero(int rows, int cols) { return SuperOperator(rows, cols, 0); }

  static SuperOperator diagonal(std::vector<QScalar> d) {
    SuperOperator r(static_cast<int>(d.size()), static_cast<int>(d.size()), 0);
    for (size_t j = 0; j < d.size(); ++j)
      if (!d[j].isZero()) r.col_[j][static_cast<int>(j)] = std::move(d[j]);
    return r;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int parity() const { return parity_; }
  void setParity(int p) { parity_ = p; }

  const std::map<int, QScalar>& column(int j) const { return col_[static_cast<size_t>(j)]; }

  void add(int i, int j, const QScalar& v) {
    if (v.isZero()) return;
    auto& c = col_[static_cast<size_t>(j)];
    auto it = c.find(i);
    if (it == c.end()) {
      c[i] = v;
    } else {
      it->second += v;
      if (it->second.isZero()) c.erase(it);
    }
  }

  QScalar entry(int i, int j) const {
    const auto& c = col_[static_cast<size_t>(j)];
    auto it = c.find(i);
    return it == c.end() ? QScalar(0) : it->second;
  }

  bool isZero() const {
    for (const auto& c : col_)
      if (!c.empty()) return false;
    return true;
  }

  int nonzeros() const {
    int n = 0;
    for (const auto& c : col_) n += static_cast<int>(c.size());
    return n;
  }

  bool operator==(const SuperOperator& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && col_ == o.col_;
  }
  bool operator!=(const SuperOperator& o) const { return !(*this == o); }

  std::map<int, QScalar> apply(const std::map<int, QScalar>& v) const {
    std::map<int, QScalar> r;
    for (const auto& [j, c] : v) {
      for (const auto& [i, a] : col_[static_cast<size_t>(j)]) {
        QScalar t = a * c;
        if (t.isZero()) continue;
        auto it = r.find(i);
        if (it == r.end()) {
          r[i] = t;
        } else {
          it->second += t;
          if (it->second.isZero()) r.erase(it);
        }
      }
    }
    return r;
  }

  friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
    if (a.cols_ != b.rows_) throw internal_error("operator shape mismatch in composition");
    int p = (a.parity_ < 0 || b.parity_ < 0) ? kParityMixed : (a.parity_ ^ b.parity_);
    SuperOperator r(a.rows_, b.cols_, p);
    for (int j = 0; j < b.cols_; ++j) {
      auto img = a.apply(b.col_[static_cast<size_t>(j)]);
      r.col_[static_cast<size_t>(j)] = std::move(img);
    }
    return r;
  }

  friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw internal_error("operator shape mismatch in sum");
    if (a.parity_ != b.parity_) {
      if (a.isZero())
        a.parity_ = b.parity_;
      else if (!b.isZero())
        a.parity_ = kParityMixed;
    }
    for (int j = 0; j < b.cols_; ++j)
      for (const auto& [i, v] : b.col_[static_cast<size_t>(j)]) a.add(i, j, v);
    return a;
  }

  friend SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
    return a + (b * QScalar(-1));
  }

  friend SuperOperator operator*(const SuperOperator& a, const QScalar& s) {
    SuperOperator r = a;
    if (s.isZero()) {
      for (auto& c : r.col_) c.clear();
      return r;
    }
    for (auto& c : r.col_)
      for (auto& [i, v] : c) v *= s;
    return r;
  }
  friend SuperOperator operator*(const QScalar& s, const SuperOperator& a) { return a * s; }

  SuperOperator pow(int k) const {
    if (rows_ != cols_) throw internal_error("power of non-square operator");
    SuperOperator r = identity(rows_);
    for (int i = 0; i < k; ++i) r = *this * r;
    return r;
  }

  /// Plain transpose (no signs); used by contravariant-form machinery.
  SuperOperator transpose() const {
    SuperOperator r(cols_, rows_, parity_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : col_[static_cast<size_t>(j)]) r.col_[static_cast<size_t>(i)][j] = v;
    return r;
  }

  /// Export as deterministic (row, col, value) triplets, column-major.
  std::vector<std::tuple<int, int, std::string>> triplets() const {
    std::vector<std::tuple<int, int, std::string>> t;
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : col_[static_cast<size_t>(j)]) t.emplace_back(i, j, v.str());
    return t;
  }

 private:
  int rows_ = 0, cols_ = 0;
  int parity_ = 0;
  std::vector<std::map<int, QScalar>> col_;
};

/// AB - (-1)^{[A][B]} BA; both operands must have definite parity.
inline SuperOperator superCommutator(const SuperOperator& a, const SuperOperator& b) {
  if (a.parity() < 0 || b.parity() < 0)
    throw internal_error("superCommutator of mixed-parity operator");
  SuperOperator ab = a * b;
  SuperOperator ba = b * a;
  SuperOperator r = (a.parity() && b.parity()) ? ab + ba : ab - ba;
  r.setParity(a.parity() ^ b.parity());
  return r;
}

inline SuperOperator commutator(const SuperOperator& a, const SuperOperator& b) {
  return a * b - b * a;
}

namespace detail {
inline SuperOperator expSeries(const SuperOperator& op,
                               const std::function<QScalar(long)>& factorial) {
  if (op.rows() != op.cols()) throw internal_error("exponential of non-square operator");
  int n = op.rows();
  SuperOperator sum = SuperOperator::identity(n);
  SuperOperator power = SuperOperator::identity(n);
  for (int j = 1; j <= n + 1; ++j) {
    power = op * power;
    if (power.isZero()) return sum;
    sum = sum + power * factorial(j).inverse();
  }
  throw domain_error("operator is not nilpotent within dim+1 powers");
}
}  // namespace detail

/// exp_q(O) = sum O^j/[j]_q!; O must be nilpotent on its domain.
inline SuperOperator qExpOperator(const SuperOperator& op) {
  return detail::expSeries(op, [](long j) { return qFactorial(j); });
}

/// Classical exp with ordinary factorials; same nilpotency contract.
inline SuperOperator expOperator(const SuperOperator& op) {
  return detail::expSeries(op, [](long j) {
    mpz_class f = 1;
    for (long i = 2; i <= j; ++i) f *= i;
    return QScalar(f);
  });
}

// ---- Operator builders on a SuperSpace ----

/// Left multiplication by generator g (image beyond the truncation degree is
/// projected to zero; the projection is the space's, not the algebra's).
inline SuperOperator leftMultiplyOperator(const SuperSpace& sp, int gen) {
  SuperOperator r(sp.dim(), sp.dim(), sp.gens().isOdd(gen) ? 1 : 0);
  for (int j = 0; j < sp.dim(); ++j) {
    auto res = generatorTimes(sp.gens(), gen, sp.monomial(j));
    if (!res) continue;
    int idx = sp.indexOf(res->second);
    if (idx >= 0) r.add(idx, j, QScalar(res->first));
  }
  return r;
}

/// Graded Leibniz derivative d/dZ_g acting from the left.
inline SuperOperator derivativeOperator(const SuperSpace& sp, int gen) {
  const GeneratorSet& g = sp.gens();
  SuperOperator r(sp.dim(), sp.dim(), g.isOdd(gen) ? 1 : 0);
  for (int j = 0; j < sp.dim(); ++j) {
    const SuperMonomial& m = sp.monomial(j);
    if (g.isOdd(gen)) {
      if (!((m.odd >> gen) & 1)) continue;
      // Move theta_gen to the front: one sign per odd factor before it.
      int before = std::popcount(m.odd & ((uint64_t{1} << gen) - 1));
      SuperMonomial m2 = m;
      m2.odd &= ~(uint64_t{1} << gen);
      r.add(sp.indexOf(m2), j, QScalar(before % 2 == 0 ? 1 : -1));
    } else {
      int k = m.even[static_cast<size_t>(gen - g.oddCount)];
      if (k == 0) continue;
      SuperMonomial m2 = m;
      m2.even[static_cast<size_t>(gen - g.oddCount)] = k - 1;
      r.add(sp.indexOf(m2), j, QScalar(k));
    }
  }
  return r;
}

/// Difference operator: z^k -> [k]_q z^{k-1} on even generators, the graded
/// derivative on odd ones.
inline SuperOperator differenceOperator(const SuperSpace& sp, int gen) {
  const GeneratorSet& g = sp.gens();
  if (g.isOdd(gen)) return derivativeOperator(sp, gen);
  SuperOperator r(sp.dim(), sp.dim(), 0);
  for (int j = 0; j < sp.dim(); ++j) {
    const SuperMonomial& m = sp.monomial(j);
    int k = m.even[static_cast<size_t>(gen - g.oddCount)];
    if (k == 0) continue;
    SuperMonomial m2 = m;
    m2.even[static_cast<size_t>(gen - g.oddCount)] = k - 1;
    r.add(sp.indexOf(m2), j, qInt(k));
  }
  return r;
}

/// Diagonal base^{sign * deg_g(monomial)}; base q gives q^{+-d_g}, base
/// q^{-1} gives the q_a variants for odd a.
inline SuperOperator scalingOperator(const SuperSpace& sp, int gen, const QScalar& base,
                                     int sign = 1) {
  std::vector<QScalar> d;
  d.reserve(static_cast<size_t>(sp.dim()));
  for (int j = 0; j < sp.dim(); ++j)
    d.push_back(base.pow(sign * sp.monomial(j).expOf(sp.gens(), gen)));
  return SuperOperator::diagonal(std::move(d));
}

/// Diagonal functor of the whole monomial (exact scalars supplied per basis
/// element); parity 0.
inline SuperOperator diagonalOperator(const SuperSpace& sp,
                                      const std::function<QScalar(const SuperMonomial&)>& f) {
  std::vector<QScalar> d;
  d.reserve(static_cast<size_t>(sp.dim()));
  for (int j = 0; j < sp.dim(); ++j) d.push_back(f(sp.monomial(j)));
  return SuperOperator::diagonal(std::move(d));
}

/// Structural parity-grading check: a parity-p operator may only connect
/// basis vectors whose parities differ by p.
inline bool respectsParity(const SuperOperator& op, const std::vector<int>& rowParity,
                           const std::vector<int>& colParity) {
  if (op.parity() < 0) return false;
  for (int j = 0; j < op.cols(); ++j)
    for (const auto& [i, v] : op.column(j))
      if ((rowParity[static_cast<size_t>(i)] ^ colParity[static_cast<size_t>(j)]) != op.parity())
        return false;
  return true;
}

// ---- Tensor space Lambda[Z]_L (x) V ----

/// Basis pairs (monomial, module vector), monomial-major; module-side basis
/// parities supplied explicitly.
struct TensorSpace {
  SuperSpace z;
  int mdim = 0;
  std::vector<int> mparity;

  TensorSpace() = default;
  TensorSpace(SuperSpace zs, int moduleDim, std::vector<int> moduleParity)
      : z(std::move(zs)), mdim(moduleDim), mparity(std::move(moduleParity)) {}

  int dim() const { return z.dim() * mdim; }
  int index(int zi, int vj) const { return zi * mdim + vj; }
  std::pair<int, int> split(int idx) const { return {idx / mdim, idx % mdim}; }
  int parityOf(int idx) const {
    auto [zi, vj] = split(idx);
    return z.parityOf(zi) ^ mparity[static_cast<size_t>(vj)];
  }
  std::vector<int> parities() const {
    std::vector<int> p(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i) p[static_cast<size_t>(i)] = parityOf(i);
    return p;
  }
};

/// A (x) 1.
inline SuperOperator tensorZ(const TensorSpace& ts, const SuperOperator& a) {
  SuperOperator r(ts.dim(), ts.dim(), a.parity());
  for (int j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.column(j))
      for (int k = 0; k < ts.mdim; ++k) r.add(ts.index(i, k), ts.index(j, k), v);
  return r;
}

/// 1 (x) B: picks up (-1)^{[B][monomial]}.
inline SuperOperator tensorV(const TensorSpace& ts, const SuperOperator& b) {
  if (b.parity() < 0) throw internal_error("tensorV needs homogeneous parity");
  SuperOperator r(ts.dim(), ts.dim(), b.parity());
  for (int zi = 0; zi < ts.z.dim(); ++zi) {
    int sgn = (b.parity() && ts.z.parityOf(zi)) ? -1 : 1;
    for (int j = 0; j < b.cols(); ++j)
      for (const auto& [i, v] : b.column(j))
        r.add(ts.index(zi, i), ts.index(zi, j), sgn == 1 ? v : -v);
  }
  return r;
}

/// A (x) B = (A (x) 1)(1 (x) B).
inline SuperOperator tensorOp(const TensorSpace& ts, const SuperOperator& a,
                              const SuperOperator& b) {
  return tensorZ(ts, a) * tensorV(ts, b);
}

/// Sparse lhs-rhs difference in text form (for check reports).
inline std::string diffString(const SuperOperator& lhs, const SuperOperator& rhs, int maxTerms = 6) {
  std::string s;
  int shown = 0;
  for (int j = 0; j < lhs.cols() && shown < maxTerms; ++j) {
    for (int i = 0; i < lhs.rows() && shown < maxTerms; ++i) {
      QScalar d = lhs.entry(i, j) - rhs.entry(i, j);
      if (d.isZero()) continue;
      s += "(" + std::to_string(i) + "," + std::to_string(j) + ")=" + d.str() + " ";
      ++shown;
    }
  }
  return s;
}

}  // namespace qgl
