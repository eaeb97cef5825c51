#pragma once

// The classical Lie superalgebra gl(m|n): index bookkeeping, the graded
// bracket's structure constants, dominance, and based weight modules with
// explicit action matrices.
//
// Indices are 0-based internally (0..m+n-1); printed labels are 1-based.

#include "qgl/qlinalg.hpp"
#include "qgl/superop.hpp"

#include <set>
#include <sstream>

namespace qgl {

struct AlgebraSpec {
  int m = 1, n = 1;

  AlgebraSpec() = default;
  AlgebraSpec(int mm, int nn) : m(mm), n(nn) {
    if (m < 1 || n < 1 || m + n > 12) throw domain_error("unsupported gl(m|n) size");
  }

  int N() const { return m + n; }
  int parity(int a) const { return a >= m ? 1 : 0; }
  /// Parity of e_{ab}.
  int genParity(int a, int b) const { return parity(a) ^ parity(b); }
  std::string name() const { return "gl(" + std::to_string(m) + "|" + std::to_string(n) + ")"; }
};

struct Weight {
  std::vector<mpq_class> c;

  Weight() = default;
  explicit Weight(int len) : c(static_cast<size_t>(len), mpq_class(0)) {}
  explicit Weight(std::vector<mpq_class> v) : c(std::move(v)) {}

  int size() const { return static_cast<int>(c.size()); }
  mpq_class& operator[](int i) { return c[static_cast<size_t>(i)]; }
  const mpq_class& operator[](int i) const { return c[static_cast<size_t>(i)]; }

  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const {
    return std::lexicographical_compare(c.begin(), c.end(), o.c.begin(), o.c.end());
  }

  Weight& operator+=(const Weight& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) {
    for (size_t i = 0; i < a.c.size(); ++i) a.c[i] -= b.c[i];
    return a;
  }

  /// "a1,..,am|b1,..,bn" with the bar after the m-th entry.
  std::string str(const AlgebraSpec& spec) const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) {
      if (i == spec.m) os << "|";
      else if (i > 0) os << ",";
      os << c[static_cast<size_t>(i)].get_str();
    }
    return os.str();
  }

  static Weight parse(const AlgebraSpec& spec, const std::string& s) {
    std::vector<mpq_class> v;
    std::string cur;
    for (char ch : s + ",") {
      if (ch == ',' || ch == '|') {
        if (cur.empty()) throw domain_error("malformed weight string: " + s);
        try {
          mpq_class x(cur);
          x.canonicalize();
          v.push_back(x);
        } catch (...) {
          throw domain_error("malformed weight component: " + cur);
        }
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (static_cast<int>(v.size()) != spec.N())
      throw domain_error("weight arity " + std::to_string(v.size()) + " does not match m+n");
    return Weight(std::move(v));
  }
};

/// Weight of the operator e_{ab} under the adjoint Cartan action:
/// epsilon_a - epsilon_b.
inline Weight rootWeight(const AlgebraSpec& spec, int a, int b) {
  Weight w(spec.N());
  w[a] += 1;
  w[b] -= 1;
  return w;
}

struct BracketTerm {
  int a, b;
  int coeff;  // +1 or -1
};

/// Structure constants of [e_{ab}, e_{cd}} =
///   delta_{bc} e_{ad} - (-1)^{([a]+[b])([c]+[d])} delta_{da} e_{cb}.
inline std::vector<BracketTerm> bracket(const AlgebraSpec& spec, int a, int b, int c, int d) {
  std::vector<BracketTerm> out;
  if (b == c) out.push_back({a, d, 1});
  if (d == a) {
    int sgn = (spec.genParity(a, b) && spec.genParity(c, d)) ? -1 : 1;
    out.push_back({c, b, -sgn});
  }
  // Merge the two terms when they coincide (a=b=c=d).
  if (out.size() == 2 && out[0].a == out[1].a && out[0].b == out[1].b) {
    int cf = out[0].coeff + out[1].coeff;
    out.clear();
    if (cf != 0) out.push_back({a, d, cf});
  }
  return out;
}

/// Kac finite-dimensionality condition: lambda_a - lambda_{a+1} in Z_{>=0}
/// for every a != m (1-based), i.e. every non-odd simple root.
inline bool isDominant(const AlgebraSpec& spec, const Weight& lam) {
  if (lam.size() != spec.N()) return false;
  for (int a = 0; a + 1 < spec.N(); ++a) {
    if (a == spec.m - 1) continue;
    mpq_class d = lam[a] - lam[a + 1];
    if (d < 0 || d.get_den() != 1) return false;
  }
  return true;
}

inline void requireDominant(const AlgebraSpec& spec, const Weight& lam, const std::string& who) {
  if (lam.size() != spec.N())
    throw domain_error(who + ": weight arity does not match " + spec.name());
  if (!isDominant(spec, lam))
    throw domain_error(who + ": non-dominant highest weight " + lam.str(spec) +
                       " (lambda_a - lambda_{a+1} must be a nonnegative integer for a != m);"
                       " the induced module would be infinite dimensional");
}

/// Based module with a weight, parity and label per basis vector and one
/// sparse action matrix per e_{ab}.
struct WeightModule {
  AlgebraSpec spec;
  Weight lambda;
  std::vector<Weight> weights;
  std::vector<int> parity;
  std::vector<std::string> labels;
  int highest = 0;
  std::map<std::pair<int, int>, SuperOperator> action;
  bool truncated = false;

  int dim() const { return static_cast<int>(weights.size()); }

  const SuperOperator& e(int a, int b) const {
    auto it = action.find({a, b});
    if (it == action.end()) throw internal_error("missing action matrix");
    return it->second;
  }
  bool has(int a, int b) const { return action.count({a, b}) > 0; }
};

/// Weight multiplicity table, descending lexicographic order (a refinement
/// of the paper's partial order on comparable weights).
inline std::vector<std::pair<Weight, int>> character(const WeightModule& mod) {
  std::map<Weight, int> tab;
  for (const auto& w : mod.weights) tab[w]++;
  std::vector<std::pair<Weight, int>> out(tab.begin(), tab.end());
  std::reverse(out.begin(), out.end());
  return out;
}

/// All [pi(e_ab), pi(e_cd)} = pi([e_ab, e_cd}) checks; returns the violated
/// index quadruples.  Columns whose degree filtration could be clipped by a
/// truncation can be excluded with colOk.
inline std::vector<std::array<int, 4>> verifyModuleRelations(
    const WeightModule& mod, const std::function<bool(int)>& colOk = nullptr) {
  std::vector<std::array<int, 4>> bad;
  int N = mod.spec.N();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int d = 0; d < N; ++d) {
          if (!mod.has(a, b) || !mod.has(c, d)) continue;
          bool rhsAvailable = true;
          for (const auto& t : bracket(mod.spec, a, b, c, d))
            if (!mod.has(t.a, t.b)) rhsAvailable = false;
          if (!rhsAvailable) continue;
          const SuperOperator& X = mod.e(a, b);
          const SuperOperator& Y = mod.e(c, d);
          SuperOperator lhs = superCommutator(X, Y);
          SuperOperator rhs = SuperOperator::zero(mod.dim(), mod.dim());
          for (const auto& t : bracket(mod.spec, a, b, c, d))
            rhs = rhs + mod.e(t.a, t.b) * QScalar(t.coeff);
          bool ok = true;
          for (int j = 0; j < mod.dim() && ok; ++j) {
            if (colOk && !colOk(j)) continue;
            for (int i = 0; i < mod.dim() && ok; ++i)
              if (lhs.entry(i, j) != rhs.entry(i, j)) ok = false;
          }
          if (!ok) bad.push_back({a, b, c, d});
        }
  return bad;
}

namespace detail {

/// Spanning family pi(word) v_+ obtained by BFS with simple lowerings, with
/// the contravariant-form row of each word.  Rows are against the
/// anti-involution omega(e_ab) = e_ba.
struct SpanningRows {
  QMat rows;            // dim x dim; row k = v+ row of pi(omega(word_k))
  QMat cols;            // spanning vectors as columns (coordinates)
  std::vector<std::vector<int>> words;
};

inline SpanningRows cyclicSpanningRows(const WeightModule& mod) {
  int dim = mod.dim();
  SpanningRows out;
  QMat seen;  // row echelon of found vectors, to pick an independent span
  std::vector<int> pivotOfRow;

  auto tryAdd = [&](const QVec& v, const QVec& row, const std::vector<int>& word) -> bool {
    QVec red = v;
    for (size_t r = 0; r < seen.size(); ++r) {
      int p = pivotOfRow[r];
      if (red[static_cast<size_t>(p)].isZero()) continue;
      QScalar f = red[static_cast<size_t>(p)];
      for (int j = 0; j < dim; ++j) red[static_cast<size_t>(j)] -= f * seen[r][static_cast<size_t>(j)];
    }
    int piv = -1;
    for (int j = 0; j < dim; ++j)
      if (!red[static_cast<size_t>(j)].isZero()) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    QScalar inv = red[static_cast<size_t>(piv)].inverse();
    for (int j = 0; j < dim; ++j) red[static_cast<size_t>(j)] *= inv;
    seen.push_back(red);
    pivotOfRow.push_back(piv);
    out.cols.push_back(v);
    out.rows.push_back(row);
    out.words.push_back(word);
    return true;
  };

  QVec v0(static_cast<size_t>(dim), QScalar(0)), r0(static_cast<size_t>(dim), QScalar(0));
  v0[static_cast<size_t>(mod.highest)] = QScalar(1);
  r0[static_cast<size_t>(mod.highest)] = QScalar(1);
  tryAdd(v0, r0, {});

  // Simple lowerings f_a = e_{a+1,a} generate the negative part.
  size_t head = 0;
  while (head < out.cols.size() && static_cast<int>(out.cols.size()) < dim) {
    QVec v = out.cols[head];
    QVec row = out.rows[head];
    std::vector<int> word = out.words[head];
    ++head;
    for (int a = 0; a + 1 < mod.spec.N(); ++a) {
      if (!mod.has(a + 1, a) || !mod.has(a, a + 1)) continue;
      const SuperOperator& f = mod.e(a + 1, a);
      const SuperOperator& e = mod.e(a, a + 1);
      std::map<int, QScalar> vm;
      for (int i = 0; i < dim; ++i)
        if (!v[static_cast<size_t>(i)].isZero()) vm[i] = v[static_cast<size_t>(i)];
      auto img = f.apply(vm);
      if (img.empty()) continue;
      QVec nv(static_cast<size_t>(dim), QScalar(0));
      for (auto& [i, val] : img) nv[static_cast<size_t>(i)] = val;
      // row of f_a . v under omega: row * pi(e_{a,a+1}).
      QVec nrow(static_cast<size_t>(dim), QScalar(0));
      for (int j = 0; j < dim; ++j)
        for (const auto& [i, val] : e.column(j)) {
          if (row[static_cast<size_t>(i)].isZero()) continue;
          nrow[static_cast<size_t>(j)] += row[static_cast<size_t>(i)] * val;
        }
      std::vector<int> nword = word;
      nword.push_back(a);
      tryAdd(nv, nrow, nword);
    }
  }
  return out;
}

}  // namespace detail

/// Radical of the contravariant form on a cyclic highest-weight module
/// (basis vectors of the radical, as coordinate vectors).
inline std::vector<QVec> contravariantRadical(const WeightModule& mod) {
  auto span = detail::cyclicSpanningRows(mod);
  if (static_cast<int>(span.cols.size()) != mod.dim())
    throw domain_error("module is not cyclic on its highest weight vector");
  return nullspace(span.rows);
}

/// Quotient by the radical of the contravariant form.  The result has no
/// proper submodule; basis = original basis vectors at non-pivot coordinates.
inline WeightModule irreducibleQuotient(const WeightModule& mod) {
  std::vector<QVec> rad = contravariantRadical(mod);
  if (rad.empty()) return mod;
  int dim = mod.dim();
  QMat radm = rad;
  std::vector<int> piv = rref(radm);
  std::vector<bool> isPiv(static_cast<size_t>(dim), false);
  for (int p : piv) isPiv[static_cast<size_t>(p)] = true;

  std::vector<int> keep;
  for (int i = 0; i < dim; ++i)
    if (!isPiv[static_cast<size_t>(i)]) keep.push_back(i);
  std::vector<int> pos(static_cast<size_t>(dim), -1);
  for (size_t k = 0; k < keep.size(); ++k) pos[static_cast<size_t>(keep[k])] = static_cast<int>(k);

  // Reduce a coordinate vector modulo the radical: eliminate pivot coords.
  auto project = [&](std::map<int, QScalar> v) {
    for (size_t r = 0; r < radm.size(); ++r) {
      int p = piv[r];
      auto it = v.find(p);
      if (it == v.end()) continue;
      QScalar f = it->second;
      for (int j = 0; j < dim; ++j) {
        if (radm[r][static_cast<size_t>(j)].isZero()) continue;
        QScalar t = f * radm[r][static_cast<size_t>(j)];
        auto jt = v.find(j);
        if (jt == v.end())
          v[j] = -t;
        else {
          jt->second -= t;
          if (jt->second.isZero()) v.erase(jt);
        }
      }
    }
    return v;
  };

  WeightModule out;
  out.spec = mod.spec;
  out.lambda = mod.lambda;
  out.truncated = mod.truncated;
  for (int i : keep) {
    out.weights.push_back(mod.weights[static_cast<size_t>(i)]);
    out.parity.push_back(mod.parity[static_cast<size_t>(i)]);
    out.labels.push_back(mod.labels[static_cast<size_t>(i)]);
  }
  if (pos[static_cast<size_t>(mod.highest)] < 0)
    throw internal_error("highest weight vector fell into the form radical");
  out.highest = pos[static_cast<size_t>(mod.highest)];

  for (const auto& [key, op] : mod.action) {
    SuperOperator q(static_cast<int>(keep.size()), static_cast<int>(keep.size()), op.parity());
    for (size_t k = 0; k < keep.size(); ++k) {
      auto img = project(op.apply({{keep[k], QScalar(1)}}));
      for (const auto& [i, val] : img) {
        if (pos[static_cast<size_t>(i)] < 0) throw internal_error("projection left a radical coordinate");
        q.add(pos[static_cast<size_t>(i)], static_cast<int>(k), val);
      }
    }
    out.action[key] = std::move(q);
  }
  return out;
}

/// Irreducibility witness: the module is cyclic from every basis vector.
inline bool cyclicFromEveryVector(const WeightModule& mod) {
  int dim = mod.dim();
  for (int s = 0; s < dim; ++s) {
    QMat seen;
    std::vector<int> pivotOfRow;
    std::vector<QVec> queue;
    auto add = [&](QVec v) -> bool {
      for (size_t r = 0; r < seen.size(); ++r) {
        int p = pivotOfRow[r];
        if (v[static_cast<size_t>(p)].isZero()) continue;
        QScalar f = v[static_cast<size_t>(p)];
        for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] -= f * seen[r][static_cast<size_t>(j)];
      }
      int piv = -1;
      for (int j = 0; j < dim; ++j)
        if (!v[static_cast<size_t>(j)].isZero()) {
          piv = j;
          break;
        }
      if (piv < 0) return false;
      QScalar inv = v[static_cast<size_t>(piv)].inverse();
      for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] *= inv;
      seen.push_back(v);
      pivotOfRow.push_back(piv);
      queue.push_back(seen.back());
      return true;
    };
    QVec v0(static_cast<size_t>(dim), QScalar(0));
    v0[static_cast<size_t>(s)] = QScalar(1);
    add(v0);
    size_t head = 0;
    while (head < queue.size() && static_cast<int>(seen.size()) < dim) {
      QVec v = queue[head++];
      for (const auto& [key, op] : mod.action) {
        std::map<int, QScalar> vm;
        for (int i = 0; i < dim; ++i)
          if (!v[static_cast<size_t>(i)].isZero()) vm[i] = v[static_cast<size_t>(i)];
        auto img = op.apply(vm);
        if (img.empty()) continue;
        QVec nv(static_cast<size_t>(dim), QScalar(0));
        for (auto& [i, val] : img) nv[static_cast<size_t>(i)] = val;
        add(std::move(nv));
      }
    }
    if (static_cast<int>(seen.size()) < dim) return false;
  }
  return true;
}

}  // namespace qgl
