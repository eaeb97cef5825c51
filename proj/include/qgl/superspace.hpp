#pragma once

// Truncated polynomial superalgebra Lambda[Z]_L on mixed odd/even generators:
// monomials with Koszul signs, and the graded-lex ordered basis of degree <= L.

#include "qgl/qfield.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qgl {

/// Ordered generator list: odd generators first, then even ones.
struct GeneratorSet {
  int oddCount = 0;
  int evenCount = 0;
  std::vector<std::string> names;  // size oddCount + evenCount

  GeneratorSet() = default;
  GeneratorSet(int odd, int even) : oddCount(odd), evenCount(even) {
    if (odd > 62) throw domain_error("too many odd generators");
    for (int i = 0; i < odd; ++i) names.push_back("th" + std::to_string(i + 1));
    for (int i = 0; i < even; ++i) names.push_back("z" + std::to_string(odd + i + 1));
  }

  int total() const { return oddCount + evenCount; }
  bool isOdd(int g) const { return g < oddCount; }
};

/// Monomial in the generators; odd part is a bitmask (theta^2 = 0 built in).
struct SuperMonomial {
  uint64_t odd = 0;
  std::vector<int> even;  // exponent per even generator

  static SuperMonomial one(const GeneratorSet& g) {
    SuperMonomial m;
    m.even.assign(static_cast<size_t>(g.evenCount), 0);
    return m;
  }

  int degree() const {
    int d = std::popcount(odd);
    for (int e : even) d += e;
    return d;
  }
  int parity() const { return std::popcount(odd) & 1; }

  int expOf(const GeneratorSet& g, int gen) const {
    if (g.isOdd(gen)) return (odd >> gen) & 1 ? 1 : 0;
    return even[static_cast<size_t>(gen - g.oddCount)];
  }

  bool operator==(const SuperMonomial& o) const { return odd == o.odd && even == o.even; }
  bool operator!=(const SuperMonomial& o) const { return !(*this == o); }
  bool operator<(const SuperMonomial& o) const {
    if (odd != o.odd) return odd < o.odd;
    return even < o.even;
  }

  std::string str(const GeneratorSet& g) const {
    std::string s;
    for (int i = 0; i < g.total(); ++i) {
      int e = expOf(g, i);
      if (e == 0) continue;
      if (!s.empty()) s += " ";
      s += g.names[static_cast<size_t>(i)] + "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }
};

/// u*v with the Koszul sign from sorting odd factors; nullopt when an odd
/// generator repeats.  No truncation here: the algebra multiplies freely.
inline std::optional<std::pair<int, SuperMonomial>> monomialProduct(const GeneratorSet& g,
                                                                    const SuperMonomial& u,
                                                                    const SuperMonomial& v) {
  if (u.odd & v.odd) return std::nullopt;
  // Sign: for each odd generator in v, count u's odd generators that must be
  // jumped over (those with larger index).
  int inversions = 0;
  for (int i = 0; i < g.oddCount; ++i) {
    if (!((v.odd >> i) & 1)) continue;
    uint64_t above = u.odd >> (i + 1);
    inversions += std::popcount(above);
  }
  SuperMonomial r;
  r.odd = u.odd | v.odd;
  r.even.resize(u.even.size());
  for (size_t k = 0; k < u.even.size(); ++k) r.even[k] = u.even[k] + v.even[k];
  return std::make_pair(inversions % 2 == 0 ? 1 : -1, r);
}

/// Single-generator multiply (degree +1).
inline std::optional<std::pair<int, SuperMonomial>> generatorTimes(const GeneratorSet& g, int gen,
                                                                   const SuperMonomial& m) {
  SuperMonomial u = SuperMonomial::one(g);
  if (g.isOdd(gen))
    u.odd = uint64_t{1} << gen;
  else
    u.even[static_cast<size_t>(gen - g.oddCount)] = 1;
  return monomialProduct(g, u, m);
}

/// Basis of all monomials of degree <= L, ordered by degree then by
/// descending exponent vector (odd generators first), so theta-monomials
/// precede even ones within a degree.  Deterministic by construction.
class SuperSpace {
 public:
  SuperSpace() = default;
  SuperSpace(GeneratorSet gens, int truncation) : gens_(std::move(gens)), L_(truncation) {
    if (L_ < 0) throw domain_error("negative truncation degree");
    std::vector<SuperMonomial> all;
    SuperMonomial seed = SuperMonomial::one(gens_);
    enumerate(seed, 0, 0, all);
    std::sort(all.begin(), all.end(), [&](const SuperMonomial& a, const SuperMonomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return expVector(a) > expVector(b);
    });
    basis_ = std::move(all);
    for (size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
  }

  const GeneratorSet& gens() const { return gens_; }
  int truncation() const { return L_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const SuperMonomial& monomial(int i) const { return basis_[static_cast<size_t>(i)]; }
  int parityOf(int i) const { return basis_[static_cast<size_t>(i)].parity(); }

  /// Index of a monomial, or -1 when its degree exceeds the truncation.
  int indexOf(const SuperMonomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  GeneratorSet gens_;
  int L_ = 0;
  std::vector<SuperMonomial> basis_;
  std::map<SuperMonomial, int> index_;

  std::vector<int> expVector(const SuperMonomial& m) const {
    std::vector<int> v;
    v.reserve(static_cast<size_t>(gens_.total()));
    for (int i = 0; i < gens_.total(); ++i) v.push_back(m.expOf(gens_, i));
    return v;
  }

  void enumerate(SuperMonomial m, int gen, int deg, std::vector<SuperMonomial>& out) {
    if (gen == gens_.total()) {
      out.push_back(m);
      return;
    }
    enumerate(m, gen + 1, deg, out);
    if (gens_.isOdd(gen)) {
      if (deg + 1 <= L_) {
        SuperMonomial m2 = m;
        m2.odd |= uint64_t{1} << gen;
        enumerate(m2, gen + 1, deg + 1, out);
      }
    } else {
      SuperMonomial m2 = m;
      for (int e = 1; deg + e <= L_; ++e) {
        m2.even[static_cast<size_t>(gen - gens_.oddCount)] = e;
        enumerate(m2, gen + 1, deg + e, out);
      }
    }
  }
};

}  // namespace qgl
