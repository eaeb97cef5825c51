#pragma once

// Parabolically induced modules U(gl) (x)_{U(p)} V0 with explicit PBW bases:
// basis = ordered monomials in the complementary lowering set ubar_- tensored
// with the irreducible Levi module V0.  The action of any e_{ab} is computed
// by commuting it through the PBW word with Eq.(1) structure constants.

#include "qgl/closure.hpp"

namespace qgl {

struct ParabolicSpec {
  std::set<int> theta;  // 0-based simple-root indices, proper subset of I'

  static ParabolicSpec evenSimples(const AlgebraSpec& spec) {
    ParabolicSpec p;
    for (int a = 0; a + 1 < spec.N(); ++a)
      if (a != spec.m - 1) p.theta.insert(a);
    return p;
  }

  void validate(const AlgebraSpec& spec) const {
    for (int a : theta)
      if (a < 0 || a + 1 >= spec.N()) throw domain_error("parabolic set out of range");
    if (static_cast<int>(theta.size()) >= spec.N() - 1 && spec.N() > 1)
      throw domain_error("parabolic set must be a proper subset of the simple roots");
  }

  bool pathInTheta(int lo, int hi) const {
    for (int c = lo; c < hi; ++c)
      if (!theta.count(c)) return false;
    return true;
  }
};

class InducedBuilder {
 public:
  InducedBuilder(AlgebraSpec spec, ParabolicSpec par, Weight lambda, int degreeCap)
      : spec_(spec), par_(std::move(par)), lambda_(std::move(lambda)), cap_(degreeCap) {
    par_.validate(spec_);
    requireDominant(spec_, lambda_, "induced module");
    // Complementary lowering generators, ordered by (row, col) lex.
    for (int r = 0; r < spec_.N(); ++r)
      for (int c = 0; c < r; ++c)
        if (!par_.pathInTheta(c, r)) gens_.push_back({r, c});
    v0_ = classicalClosureModule(spec_, lambda_,
                                 std::vector<int>(par_.theta.begin(), par_.theta.end()));
  }

  WeightModule build() {
    enumerateBasis();
    WeightModule mod;
    mod.spec = spec_;
    mod.lambda = lambda_;
    for (const auto& [w, v] : basis_) {
      Weight wt = v0_.weights[static_cast<size_t>(v)];
      int par = v0_.parity[static_cast<size_t>(v)];
      for (uint8_t g : w) {
        wt += rootWeight(spec_, gens_[g].first, gens_[g].second);
        par ^= spec_.genParity(gens_[g].first, gens_[g].second);
      }
      mod.weights.push_back(wt);
      mod.parity.push_back(par);
      mod.labels.push_back(label(w, v));
    }
    mod.highest = index_.at({Word{}, v0_.highest});
    for (int a = 0; a < spec_.N(); ++a)
      for (int b = 0; b < spec_.N(); ++b) {
        SuperOperator op(static_cast<int>(basis_.size()), static_cast<int>(basis_.size()),
                         spec_.genParity(a, b));
        for (size_t j = 0; j < basis_.size(); ++j)
          for (const auto& [st, val] : applyGen(a, b, basis_[j].first, basis_[j].second))
            op.add(index_.at(st), static_cast<int>(j), val);
        mod.action[{a, b}] = std::move(op);
      }
    mod.truncated = truncated_;
    return mod;
  }

  const WeightModule& leviModule() const { return v0_; }

 private:
  using Word = std::vector<uint8_t>;           // sorted gens_ indices
  using State = std::pair<Word, int>;          // (PBW word, V0 basis index)
  using Combo = std::map<Word, QScalar>;       // word-space combination
  using Elem = std::map<State, QScalar>;       // module element

  AlgebraSpec spec_;
  ParabolicSpec par_;
  Weight lambda_;
  int cap_;
  std::vector<std::pair<int, int>> gens_;      // ubar_- as (row, col), row > col
  WeightModule v0_;
  std::vector<State> basis_;
  std::map<State, int> index_;
  bool truncated_ = false;
  std::map<std::pair<uint8_t, Word>, Combo> insertMemo_;
  std::map<std::tuple<int, int, Word, int>, Elem> applyMemo_;

  bool isOddGen(uint8_t g) const {
    return spec_.genParity(gens_[g].first, gens_[g].second) == 1;
  }

  std::string label(const Word& w, int v) const {
    std::string s;
    for (uint8_t g : w)
      s += "e[" + std::to_string(gens_[g].first + 1) + "," +
           std::to_string(gens_[g].second + 1) + "] ";
    s += "(x) " + v0_.labels[static_cast<size_t>(v)];
    return s;
  }

  void enumerateBasis() {
    std::vector<Word> words;
    Word cur;
    enumerateWords(0, 0, cur, words);
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (const Word& w : words)
      for (int v = 0; v < v0_.dim(); ++v) {
        index_[{w, v}] = static_cast<int>(basis_.size());
        basis_.push_back({w, v});
      }
  }

  void enumerateWords(size_t g, int deg, Word& cur, std::vector<Word>& out) {
    if (g == gens_.size()) {
      out.push_back(cur);
      return;
    }
    enumerateWords(g + 1, deg, cur, out);
    int maxRep = isOddGen(static_cast<uint8_t>(g)) ? 1 : cap_ - deg;
    for (int rep = 1; rep <= maxRep && deg + rep <= cap_; ++rep) {
      for (int i = 0; i < rep; ++i) cur.push_back(static_cast<uint8_t>(g));
      enumerateWords(g + 1, deg + rep, cur, out);
      for (int i = 0; i < rep; ++i) cur.pop_back();
    }
  }

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
  static void addTo(Elem& c, const State& s, const QScalar& v) {
    if (v.isZero()) return;
    auto it = c.find(s);
    if (it == c.end())
      c[s] = v;
    else {
      it->second += v;
      if (it->second.isZero()) c.erase(it);
    }
  }

  /// Straightened left multiplication by ubar_- generator g.
  const Combo& insertGen(uint8_t g, const Word& w) {
    auto key = std::make_pair(g, w);
    auto it = insertMemo_.find(key);
    if (it != insertMemo_.end()) return it->second;
    Combo out;
    if (w.empty() || g <= w[0]) {
      bool vanish = (!w.empty() && g == w[0] && isOddGen(g));
      if (!vanish) {
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(g);
        nw.insert(nw.end(), w.begin(), w.end());
        if (static_cast<int>(nw.size()) <= cap_)
          out[nw] = QScalar(1);
        else
          truncated_ = true;
      }
    } else {
      uint8_t h = w[0];
      Word rest(w.begin() + 1, w.end());
      int sgn = (isOddGen(g) && isOddGen(h)) ? -1 : 1;
      for (const auto& [iw, ic] : insertGen(g, rest)) {
        // h is minimal in w and the inserted words start at >= min(g, rest),
        // so prepending h keeps the word sorted.
        Word nw;
        nw.reserve(iw.size() + 1);
        nw.push_back(h);
        nw.insert(nw.end(), iw.begin(), iw.end());
        if (static_cast<int>(nw.size()) <= cap_)
          addTo(out, nw, sgn == 1 ? ic : -ic);
        else
          truncated_ = true;
      }
      auto [gr, gc] = gens_[g];
      auto [hr, hc] = gens_[h];
      for (const BracketTerm& t : bracket(spec_, gr, gc, hr, hc)) {
        uint8_t tid = genId(t.a, t.b);
        for (const auto& [iw, ic] : insertGen(tid, rest)) addTo(out, iw, ic * QScalar(t.coeff));
      }
    }
    return insertMemo_.emplace(std::move(key), std::move(out)).first->second;
  }

  uint8_t genId(int r, int c) const {
    for (size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].first == r && gens_[i].second == c) return static_cast<uint8_t>(i);
    throw internal_error("generator not in the complementary lowering set");
  }

  bool inUbar(int a, int b) const { return a > b && !par_.pathInTheta(b, a); }

  /// e_{ab} applied to (word (x) v0 basis vector).
  const Elem& applyGen(int a, int b, const Word& w, int v) {
    auto key = std::make_tuple(a, b, w, v);
    auto it = applyMemo_.find(key);
    if (it != applyMemo_.end()) return it->second;
    Elem out;
    if (inUbar(a, b)) {
      for (const auto& [iw, ic] : insertGen(genId(a, b), w)) addTo(out, {iw, v}, ic);
    } else if (w.empty()) {
      if (a == b) {
        addTo(out, {w, v}, QScalar(v0_.weights[static_cast<size_t>(v)][a]));
      } else if (a > b || par_.pathInTheta(std::min(a, b), std::max(a, b))) {
        // Levi part of p acts through V0; u_- lowerings have theta-paths.
        if (v0_.has(a, b))
          for (const auto& [i, val] : v0_.e(a, b).column(v)) addTo(out, {w, i}, val);
        else
          throw internal_error("missing Levi action in V0");
      }
      // Raising elements outside the Levi span the nilradical of p: zero.
    } else {
      uint8_t h = w[0];
      Word rest(w.begin() + 1, w.end());
      auto [hr, hc] = gens_[h];
      int sgn = (spec_.genParity(a, b) && spec_.genParity(hr, hc)) ? -1 : 1;
      for (const auto& [st, val] : applyGen(a, b, rest, v)) {
        for (const auto& [iw, ic] : insertGen(h, st.first))
          addTo(out, {iw, st.second}, ic * (sgn == 1 ? val : -val));
      }
      for (const BracketTerm& t : bracket(spec_, a, b, hr, hc)) {
        for (const auto& [st, val] : applyGen(t.a, t.b, rest, v))
          addTo(out, st, val * QScalar(t.coeff));
      }
    }
    return applyMemo_.emplace(std::move(key), std::move(out)).first->second;
  }
};

/// Irreducible gl(m) + gl(n) module of highest weight lambda (or, with the
/// same machinery, any Levi closure).  Dimensions are independently checked
/// against the Weyl formula in the test suite.
inline WeightModule buildEvenIrrep(const AlgebraSpec& spec, const Weight& lambda) {
  requireDominant(spec, lambda, "even irreducible module");
  std::vector<int> evens;
  for (int a = 0; a + 1 < spec.N(); ++a)
    if (a != spec.m - 1) evens.push_back(a);
  return classicalClosureModule(spec, lambda, evens);
}

/// Kac module U(f_-) (x) V0(lambda), dimension 2^{mn} dim V0.
inline WeightModule buildKacModule(const AlgebraSpec& spec, const Weight& lambda) {
  requireDominant(spec, lambda, "Kac module");
  InducedBuilder b(spec, ParabolicSpec::evenSimples(spec), lambda, spec.m * spec.n);
  return b.build();
}

/// General parabolically induced module, truncated at PBW degree degreeCap.
inline WeightModule buildParabolicInduced(const AlgebraSpec& spec, const ParabolicSpec& par,
                                          const Weight& lambda, int degreeCap) {
  InducedBuilder b(spec, par, lambda, degreeCap);
  return b.build();
}

/// The finite dimensional irreducible module V(lambda) by the Kac route.
inline WeightModule buildIrreducible(const AlgebraSpec& spec, const Weight& lambda) {
  return irreducibleQuotient(buildKacModule(spec, lambda));
}

/// Full closure route to V(lambda): all simple lowerings at once.  Used as a
/// cross-check against the Kac route.
inline WeightModule buildIrreducibleByClosure(const AlgebraSpec& spec, const Weight& lambda) {
  requireDominant(spec, lambda, "irreducible module");
  std::vector<int> all;
  for (int a = 0; a + 1 < spec.N(); ++a) all.push_back(a);
  return classicalClosureModule(spec, lambda, all);
}

}  // namespace qgl
