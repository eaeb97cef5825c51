#pragma once

// Highest-weight closure with contravariant-form reduction: builds the
// irreducible module generated by v_+ under a chosen set of simple lowering
// operators, entirely from words in the simple generators.
//
// Vectors are formal linear combinations of lowering words f_{a1}...f_{ak} v+;
// the contravariant form <f_a u, v> = <u, e_a v> (anti-involution
// omega(e_{ab}) = e_{ba} without extra signs) decides linear independence in
// the irreducible quotient, so no straightening of the negative part is ever
// needed.  One engine serves gl(m|n) and U_q(gl(m|n)) via a scalar policy.

#include "qgl/glmn.hpp"

#include <set>

namespace qgl {

struct ClassicalPolicy {
  using WVec = Weight;
  static WVec lowered(const AlgebraSpec&, WVec mu, int a) {
    mu[a] -= 1;
    mu[a + 1] += 1;
    return mu;
  }
  /// Eigenvalue of [e_a, f_a} = e_{aa} - (-1)^{[a]+[a+1]} e_{a+1,a+1} at mu.
  static QScalar efScalar(const AlgebraSpec& s, int a, const WVec& mu) {
    mpq_class v = s.genParity(a, a + 1) ? mpq_class(mu[a] + mu[a + 1])
                                        : mpq_class(mu[a] - mu[a + 1]);
    return QScalar(v);
  }
};

struct QuantumPolicy {
  using WVec = std::vector<long>;
  static WVec lowered(const AlgebraSpec&, WVec mu, int a) {
    mu[static_cast<size_t>(a)] -= 1;
    mu[static_cast<size_t>(a) + 1] += 1;
    return mu;
  }
  /// Eigenvalue of [E_a, F_a} = (K_a K_{a+1}^{-1} - K_a^{-1} K_{a+1}) /
  /// (q_a - q_a^{-1}) on the mu weight space, with q_a = q^{(-1)^{[a]}}.
  static QScalar efScalar(const AlgebraSpec& s, int a, const WVec& mu) {
    long sa = s.parity(a) ? -1 : 1;
    long sb = s.parity(a + 1) ? -1 : 1;
    long t = sa * mu[static_cast<size_t>(a)] - sb * mu[static_cast<size_t>(a) + 1];
    QScalar v = qInt(t);
    return sa < 0 ? -v : v;
  }
};

template <class Policy>
class ClosureEngine {
 public:
  using WVec = typename Policy::WVec;
  using Word = std::vector<uint8_t>;  // simple lowering indices, leftmost acts last

  ClosureEngine(AlgebraSpec spec, WVec lambda, std::vector<int> allowed)
      : spec_(spec), lambda_(std::move(lambda)), allowed_(std::move(allowed)) {}

  void run() {
    Word empty;
    Block& top = blocks_[lambda_];
    top.words.push_back(empty);
    top.globalIdx.push_back(0);
    top.gram = {{QScalar(1)}};
    basis_.push_back(empty);
    std::vector<Word> current{empty};
    int level = 0;
    while (!current.empty()) {
      if (++level > 300 || static_cast<int>(basis_.size()) > 20000)
        throw internal_error("highest-weight closure did not stabilize");
      std::vector<Word> next;
      for (const Word& w : current) {
        for (int a : allowed_) {
          Word cand;
          cand.reserve(w.size() + 1);
          cand.push_back(static_cast<uint8_t>(a));
          cand.insert(cand.end(), w.begin(), w.end());
          WVec mu = weightOf(cand);
          Block& blk = blocks_[mu];
          QVec p;
          Combo cc;
          cc[cand] = QScalar(1);
          p.reserve(blk.words.size());
          for (const Word& wi : blk.words) p.push_back(form(wi, cc));
          QScalar self = form(cand, cc);
          QScalar schur = self;
          if (!blk.words.empty()) {
            QVec x = solveSquare(blk.gram, p);
            for (size_t i = 0; i < p.size(); ++i) schur -= p[i] * x[i];
          }
          if (schur.isZero()) continue;
          size_t r = blk.words.size();
          blk.gram.resize(r + 1);
          for (size_t i = 0; i < r; ++i) blk.gram[i].push_back(p[i]);
          blk.gram[r] = p;
          blk.gram[r].push_back(self);
          blk.words.push_back(cand);
          blk.globalIdx.push_back(static_cast<int>(basis_.size()));
          basis_.push_back(cand);
          next.push_back(cand);
        }
      }
      current = std::move(next);
    }
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Word>& basis() const { return basis_; }

  WVec weightOf(const Word& w) const {
    WVec mu = lambda_;
    for (uint8_t a : w) mu = Policy::lowered(spec_, mu, a);
    return mu;
  }

  int parityOf(const Word& w) const {
    int p = 0;
    for (uint8_t a : w)
      if (a == spec_.m - 1) p ^= 1;
    return p;
  }

  std::string labelOf(const Word& w) const {
    if (w.empty()) return "v+";
    std::string s;
    for (uint8_t a : w) s += "f" + std::to_string(a + 1) + ".";
    s += "v+";
    return s;
  }

  /// Matrix of the simple lowering f_a on the closure basis.
  SuperOperator lowerMatrix(int a) {
    SuperOperator op(dim(), dim(), spec_.genParity(a, a + 1));
    for (int j = 0; j < dim(); ++j) {
      Word cand;
      cand.push_back(static_cast<uint8_t>(a));
      cand.insert(cand.end(), basis_[static_cast<size_t>(j)].begin(),
                  basis_[static_cast<size_t>(j)].end());
      Combo c;
      c[cand] = QScalar(1);
      for (const auto& [i, v] : expand(c)) op.add(i, j, v);
    }
    return op;
  }

  /// Matrix of the simple raising e_a.
  SuperOperator raiseMatrix(int a) {
    SuperOperator op(dim(), dim(), spec_.genParity(a, a + 1));
    for (int j = 0; j < dim(); ++j) {
      Combo c = applyRaise(a, basis_[static_cast<size_t>(j)]);
      for (const auto& [i, v] : expand(c)) op.add(i, j, v);
    }
    return op;
  }

 private:
  struct Block {
    std::vector<Word> words;
    std::vector<int> globalIdx;
    QMat gram;
  };
  using Combo = std::map<Word, QScalar>;

  AlgebraSpec spec_;
  WVec lambda_;
  std::vector<int> allowed_;
  std::map<WVec, Block> blocks_;
  std::vector<Word> basis_;
  std::map<std::pair<int, Word>, Combo> raiseMemo_;

  static void addTo(Combo& c, const Word& w, const QScalar& v) {
    if (v.isZero()) return;
    auto it = c.find(w);
    if (it == c.end())
      c[w] = v;
    else {
      it->second += v;
      if (it->second.isZero()) c.erase(it);
    }
  }

  /// e_a applied to a lowering word: commute past the leading f_b; the
  /// delta_{ab} term contributes the Cartan scalar at the tail's weight.
  const Combo& applyRaise(int a, const Word& w) {
    auto key = std::make_pair(a, w);
    auto it = raiseMemo_.find(key);
    if (it != raiseMemo_.end()) return it->second;
    Combo out;
    if (!w.empty()) {
      int b = w[0];
      Word rest(w.begin() + 1, w.end());
      if (a == b) {
        QScalar s = Policy::efScalar(spec_, a, weightOf(rest));
        addTo(out, rest, s);
      }
      int sgn = (a == spec_.m - 1 && b == spec_.m - 1) ? -1 : 1;
      const Combo& inner = applyRaise(a, rest);
      for (const auto& [iw, ic] : inner) {
        Word nw;
        nw.reserve(iw.size() + 1);
        nw.push_back(static_cast<uint8_t>(b));
        nw.insert(nw.end(), iw.begin(), iw.end());
        addTo(out, nw, sgn == 1 ? ic : -ic);
      }
    }
    return raiseMemo_.emplace(std::move(key), std::move(out)).first->second;
  }

  Combo applyRaiseLinear(int a, const Combo& c) {
    Combo out;
    for (const auto& [w, v] : c)
      for (const auto& [w2, v2] : applyRaise(a, w)) addTo(out, w2, v * v2);
    return out;
  }

  /// Contravariant form <x v+, y v+>.
  QScalar form(const Word& x, const Combo& y) {
    if (x.empty()) {
      auto it = y.find(Word{});
      return it == y.end() ? QScalar(0) : it->second;
    }
    Word rest(x.begin() + 1, x.end());
    return form(rest, applyRaiseLinear(x[0], y));
  }

 public:
  /// Coordinates of a (weight-homogeneous) combo in the closure basis.
  std::map<int, QScalar> expand(const Combo& c) {
    std::map<int, QScalar> out;
    if (c.empty()) return out;
    WVec mu = weightOf(c.begin()->first);
    auto bit = blocks_.find(mu);
    if (bit == blocks_.end() || bit->second.words.empty()) {
      // Weight space is zero in the irreducible quotient.
      return out;
    }
    Block& blk = bit->second;
    QVec b;
    b.reserve(blk.words.size());
    for (const Word& wi : blk.words) b.push_back(form(wi, c));
    QVec x = solveSquare(blk.gram, b);
    for (size_t i = 0; i < x.size(); ++i)
      if (!x[i].isZero()) out[blk.globalIdx[i]] = x[i];
    return out;
  }
};

/// Irreducible gl(m|n) (or Levi) module by closure; `allowed` lists the
/// usable simple lowering indices (0-based); action matrices are produced
/// for every e_{ab} whose simple-root path lies in `allowed`, plus all
/// Cartan elements.
inline WeightModule classicalClosureModule(const AlgebraSpec& spec, const Weight& lambda,
                                           const std::vector<int>& allowed) {
  ClosureEngine<ClassicalPolicy> eng(spec, lambda, allowed);
  eng.run();

  WeightModule mod;
  mod.spec = spec;
  mod.lambda = lambda;
  mod.highest = 0;
  for (const auto& w : eng.basis()) {
    mod.weights.push_back(eng.weightOf(w));
    mod.parity.push_back(eng.parityOf(w));
    mod.labels.push_back(eng.labelOf(w));
  }

  std::set<int> allowedSet(allowed.begin(), allowed.end());
  int N = spec.N();
  for (int a = 0; a < N; ++a) {
    std::vector<QScalar> d;
    for (const auto& w : mod.weights) d.push_back(QScalar(w[a]));
    mod.action[{a, a}] = SuperOperator::diagonal(std::move(d));
  }
  for (int a : allowed) {
    mod.action[{a, a + 1}] = eng.raiseMatrix(a);
    mod.action[{a + 1, a}] = eng.lowerMatrix(a);
  }
  // Longer root vectors by bracket recursion along covered paths.
  for (int len = 2; len < N; ++len) {
    for (int a = 0; a + len < N; ++a) {
      int b = a + len;
      bool covered = true;
      for (int c = a; c < b; ++c)
        if (!allowedSet.count(c)) covered = false;
      if (!covered) continue;
      mod.action[{a, b}] = superCommutator(mod.e(a, a + 1), mod.e(a + 1, b));
      mod.action[{b, a}] = superCommutator(mod.e(b, a + 1), mod.e(a + 1, a));
    }
  }
  return mod;
}

/// Quantum module container: K-eigenvalues are stored as integer exponent
/// vectors (K_a acts by q_a^{mu_a}); matrices for the simple E_a/F_a.
struct QModule {
  AlgebraSpec spec;
  std::vector<long> lambdaExp;
  std::vector<std::vector<long>> weightExp;
  std::vector<int> parity;
  std::vector<std::string> labels;
  int highest = 0;
  std::map<int, SuperOperator> Emat, Fmat;

  int dim() const { return static_cast<int>(weightExp.size()); }

  const SuperOperator& E(int a) const {
    auto it = Emat.find(a);
    if (it == Emat.end()) throw internal_error("missing E matrix");
    return it->second;
  }
  const SuperOperator& F(int a) const {
    auto it = Fmat.find(a);
    if (it == Fmat.end()) throw internal_error("missing F matrix");
    return it->second;
  }

  /// Diagonal K_a^{sgn} with entries q_a^{sgn * mu_a}.
  SuperOperator K(int a, int sgn = 1) const {
    std::vector<QScalar> d;
    long s = spec.parity(a) ? -1 : 1;
    for (const auto& mu : weightExp)
      d.push_back(QScalar::q(s * sgn * mu[static_cast<size_t>(a)]));
    return SuperOperator::diagonal(std::move(d));
  }

  /// Classical weight view of the q-exponents (for character comparisons).
  Weight weightAt(int i) const {
    Weight w(spec.N());
    for (int a = 0; a < spec.N(); ++a)
      w[a] = static_cast<long>(weightExp[static_cast<size_t>(i)][static_cast<size_t>(a)]);
    return w;
  }

  /// Root vector E_{ab} (a != b) by the definitional recursion through an
  /// intermediate index c (default a+1 side); exact matrix on this module.
  SuperOperator rootVector(int a, int b, int c = -1) const {
    if (a == b) throw internal_error("rootVector needs a != b");
    if (a < b) {
      if (b - a == 1) return E(a);
      if (c < 0) c = a + 1;
      SuperOperator X = rootVector(a, c), Y = rootVector(c, b);
      long qc = spec.parity(c) ? -1 : 1;
      SuperOperator r = X * Y - QScalar::q(-qc) * (Y * X);
      r.setParity(spec.genParity(a, b));
      return r;
    }
    if (a - b == 1) return F(b);
    if (c < 0) c = b + 1;
    SuperOperator X = rootVector(a, c), Y = rootVector(c, b);
    long qc = spec.parity(c) ? -1 : 1;
    SuperOperator r = X * Y - QScalar::q(qc) * (Y * X);
    r.setParity(spec.genParity(a, b));
    return r;
  }
};

inline QModule quantumClosureModule(const AlgebraSpec& spec, const std::vector<long>& lambdaExp,
                                    const std::vector<int>& allowed) {
  ClosureEngine<QuantumPolicy> eng(spec, lambdaExp, allowed);
  eng.run();
  QModule mod;
  mod.spec = spec;
  mod.lambdaExp = lambdaExp;
  mod.highest = 0;
  for (const auto& w : eng.basis()) {
    mod.weightExp.push_back(eng.weightOf(w));
    mod.parity.push_back(eng.parityOf(w));
    mod.labels.push_back(eng.labelOf(w));
  }
  for (int a : allowed) {
    mod.Emat[a] = eng.raiseMatrix(a);
    mod.Fmat[a] = eng.lowerMatrix(a);
  }
  return mod;
}

}  // namespace qgl
