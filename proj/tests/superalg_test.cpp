#include "qgl/superop.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qgl;

namespace {

// Brute-force sign oracle: write both monomials as generator sequences,
// concatenate, and count odd-odd inversions removed by stable sorting.
int bruteSign(const GeneratorSet& g, const SuperMonomial& u, const SuperMonomial& v) {
  std::vector<int> seq;
  auto push = [&](const SuperMonomial& m) {
    for (int i = 0; i < g.total(); ++i)
      for (int e = 0; e < m.expOf(g, i); ++e) seq.push_back(i);
  };
  push(u);
  push(v);
  int inv = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      if (g.isOdd(seq[i]) && g.isOdd(seq[j]) && seq[i] > seq[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

SuperMonomial mono(const GeneratorSet& g, std::vector<int> gens) {
  SuperMonomial m = SuperMonomial::one(g);
  for (int i : gens) {
    auto r = generatorTimes(g, i, m);
    EXPECT_TRUE(r.has_value());
    m = r->second;
  }
  return m;
}

SuperMonomial randomMonomial(const GeneratorSet& g, std::mt19937& rng, int maxDeg) {
  std::uniform_int_distribution<int> pick(0, g.total() - 1);
  std::uniform_int_distribution<int> deg(0, maxDeg);
  SuperMonomial m = SuperMonomial::one(g);
  int d = deg(rng);
  for (int i = 0; i < d; ++i) {
    int gen = pick(rng);
    if (g.isOdd(gen) && ((m.odd >> gen) & 1)) continue;
    m = generatorTimes(g, gen, m)->second;
  }
  return m;
}

SuperOperator evalOperator(const SuperOperator& op, const mpq_class& q0) {
  SuperOperator r(op.rows(), op.cols(), op.parity());
  for (int j = 0; j < op.cols(); ++j)
    for (const auto& [i, v] : op.column(j)) r.add(i, j, QScalar(v.evalAt(q0)));
  return r;
}

}  // namespace

TEST(SuperMonomial, ProductSigns) {
  GeneratorSet g(2, 1);  // th1 th2 z3
  SuperMonomial th1 = mono(g, {0}), th2 = mono(g, {1});
  auto p12 = monomialProduct(g, th1, th2);
  auto p21 = monomialProduct(g, th2, th1);
  ASSERT_TRUE(p12 && p21);
  EXPECT_EQ(p12->second, p21->second);
  EXPECT_EQ(p12->first, -p21->first);
  EXPECT_FALSE(monomialProduct(g, th1, th1).has_value());
  // (th1 z)(th2 z) needs sign tracking; compare with the brute-force oracle.
  SuperMonomial a = mono(g, {0, 2}), b = mono(g, {1, 2});
  auto p = monomialProduct(g, a, b);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->first, bruteSign(g, a, b));
  EXPECT_EQ(p->second, mono(g, {0, 1, 2, 2}));
}

TEST(SuperMonomial, ProductMatchesOracleRandomized) {
  GeneratorSet g(3, 2);
  std::mt19937 rng(42);
  for (int it = 0; it < 300; ++it) {
    SuperMonomial u = randomMonomial(g, rng, 4), v = randomMonomial(g, rng, 4);
    auto p = monomialProduct(g, u, v);
    if (u.odd & v.odd) {
      EXPECT_FALSE(p.has_value());
    } else {
      ASSERT_TRUE(p.has_value());
      EXPECT_EQ(p->first, bruteSign(g, u, v));
      EXPECT_EQ(p->second.degree(), u.degree() + v.degree());
    }
  }
}

TEST(SuperMonomial, AssociativityRandomized) {
  GeneratorSet g(3, 2);
  std::mt19937 rng(7);
  for (int it = 0; it < 300; ++it) {
    SuperMonomial a = randomMonomial(g, rng, 2), b = randomMonomial(g, rng, 2),
                  c = randomMonomial(g, rng, 2);
    auto ab = monomialProduct(g, a, b);
    auto bc = monomialProduct(g, b, c);
    int lhsSign = 0, rhsSign = 0;
    SuperMonomial lhs, rhs;
    bool lz = true, rz = true;
    if (ab) {
      if (auto t = monomialProduct(g, ab->second, c)) {
        lhsSign = ab->first * t->first;
        lhs = t->second;
        lz = false;
      }
    }
    if (bc) {
      if (auto t = monomialProduct(g, a, bc->second)) {
        rhsSign = bc->first * t->first;
        rhs = t->second;
        rz = false;
      }
    }
    EXPECT_EQ(lz, rz);
    if (!lz) {
      EXPECT_EQ(lhsSign, rhsSign);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(SuperSpace, BasisOrderAndDimension) {
  GeneratorSet g(1, 1);
  SuperSpace sp(g, 2);
  // Degree <= 2 in (th; z): 1, th, z, th z, z^2.
  EXPECT_EQ(sp.dim(), 5);
  EXPECT_EQ(sp.monomial(0).degree(), 0);
  EXPECT_EQ(sp.monomial(1).str(g), "th1^1");  // odd before even within a degree
  EXPECT_EQ(sp.monomial(2).str(g), "z2^1");
  EXPECT_EQ(sp.monomial(3).str(g), "th1^1 z2^1");
  EXPECT_EQ(sp.monomial(4).str(g), "z2^2");
  EXPECT_EQ(sp.indexOf(mono(g, {1, 1, 1})), -1);  // beyond truncation
}

TEST(Operators, DerivativeExamples) {
  GeneratorSet g(2, 1);
  SuperSpace sp(g, 3);
  SuperOperator dth1 = derivativeOperator(sp, 0);
  SuperOperator dz = derivativeOperator(sp, 2);
  int one = sp.indexOf(SuperMonomial::one(g));
  EXPECT_EQ(dth1.apply({{sp.indexOf(mono(g, {0})), QScalar(1)}}),
            (std::map<int, QScalar>{{one, QScalar(1)}}));
  EXPECT_TRUE(dth1.apply({{one, QScalar(1)}}).empty());
  // d/dz z^3 = 3 z^2
  auto img = dz.apply({{sp.indexOf(mono(g, {2, 2, 2})), QScalar(1)}});
  EXPECT_EQ(img, (std::map<int, QScalar>{{sp.indexOf(mono(g, {2, 2})), QScalar(3)}}));
  // d/dth1 (th2 th1) = -th2: th2 th1 = -(th1 th2) in the canonical basis,
  // and d/dth1 (th1 th2) = th2.
  auto prod = monomialProduct(g, mono(g, {1}), mono(g, {0}));
  ASSERT_TRUE(prod.has_value());
  EXPECT_EQ(prod->first, -1);
  auto img2 = dth1.apply({{sp.indexOf(prod->second), QScalar(prod->first)}});
  EXPECT_EQ(img2, (std::map<int, QScalar>{{sp.indexOf(mono(g, {1})), QScalar(-1)}}));
}

TEST(Operators, DifferenceExamples) {
  GeneratorSet g(0, 1);
  SuperSpace sp(g, 4);
  SuperOperator nz = differenceOperator(sp, 0);
  auto z = [&](int k) {
    SuperMonomial m = SuperMonomial::one(g);
    m.even[0] = k;
    return sp.indexOf(m);
  };
  EXPECT_EQ(nz.apply({{z(1), QScalar(1)}}), (std::map<int, QScalar>{{z(0), QScalar(1)}}));
  EXPECT_TRUE(nz.apply({{z(0), QScalar(1)}}).empty());
  // nabla z^3 = [3] z^2 where [3] is computed from (f(qz)-f(q^-1 z))/(z(q-q^-1)).
  QScalar three = QScalar::fraction(
      LaurentPoly::monomial(1, 3) - LaurentPoly::monomial(1, -3),
      LaurentPoly::monomial(1, 1) - LaurentPoly::monomial(1, -1));
  EXPECT_EQ(nz.apply({{z(3), QScalar(1)}}), (std::map<int, QScalar>{{z(2), three}}));
}

TEST(Operators, ScalingAndLeibniz) {
  GeneratorSet g(1, 1);
  SuperSpace sp(g, 2);
  SuperOperator qdz = scalingOperator(sp, 1, QScalar::q(), 1);
  SuperMonomial z2 = mono(g, {1, 1});
  EXPECT_EQ(qdz.entry(sp.indexOf(z2), sp.indexOf(z2)), QScalar::q(2));
  SuperOperator qdth = scalingOperator(sp, 0, QScalar::q(), 1);
  EXPECT_EQ(qdth.entry(0, 0), QScalar(1));

  // Both Leibniz variants of nabla_z as operator identities on Lambda[z]_6,
  // with f = z: nabla(z h) = q^{d} h + q^{-d} z nabla(h) and the mirrored
  // variant.  Compared below the truncation degree, where no projection
  // interferes.
  GeneratorSet ge(0, 1);
  SuperSpace spz(ge, 6);
  SuperOperator nab = differenceOperator(spz, 0);
  SuperOperator mulz = leftMultiplyOperator(spz, 0);
  SuperOperator qd = scalingOperator(spz, 0, QScalar::q(), 1);
  SuperOperator qdm = scalingOperator(spz, 0, QScalar::q(), -1);
  SuperOperator lhs = nab * mulz;
  SuperOperator varA = qd + QScalar::q(-1) * (mulz * nab);
  SuperOperator varB = qdm + QScalar::q(1) * (mulz * nab);
  for (int j = 0; j < spz.dim(); ++j) {
    if (spz.monomial(j).degree() >= spz.truncation()) continue;
    for (int i = 0; i < spz.dim(); ++i) {
      EXPECT_EQ(lhs.entry(i, j), varA.entry(i, j));
      EXPECT_EQ(lhs.entry(i, j), varB.entry(i, j));
    }
  }
}

TEST(Operators, SuperCommutators) {
  GeneratorSet g(2, 2);
  SuperSpace sp(g, 3);
  SuperOperator dz = derivativeOperator(sp, 2);
  SuperOperator mz = leftMultiplyOperator(sp, 2);
  // [d/dz, z*] = 1 away from the truncation boundary: the top degree is
  // clipped by the space projection, so compare below it.
  SuperOperator c = superCommutator(dz, mz);
  for (int j = 0; j < sp.dim(); ++j) {
    if (sp.monomial(j).degree() >= sp.truncation()) continue;
    for (int i = 0; i < sp.dim(); ++i)
      EXPECT_EQ(c.entry(i, j), i == j ? QScalar(1) : QScalar(0));
  }
  // {d/dth1, d/dth2} = 0 and [nabla_z, nabla_th] = 0 on the whole space.
  EXPECT_TRUE(superCommutator(derivativeOperator(sp, 0), derivativeOperator(sp, 1)).isZero());
  EXPECT_TRUE(superCommutator(differenceOperator(sp, 2), differenceOperator(sp, 0)).isZero());
  EXPECT_TRUE(superCommutator(differenceOperator(sp, 2), differenceOperator(sp, 3)).isZero());
}

TEST(Operators, ParityGrading) {
  GeneratorSet g(2, 1);
  SuperSpace sp(g, 3);
  std::vector<int> par;
  for (int i = 0; i < sp.dim(); ++i) par.push_back(sp.parityOf(i));
  EXPECT_TRUE(respectsParity(derivativeOperator(sp, 0), par, par));
  EXPECT_TRUE(respectsParity(derivativeOperator(sp, 2), par, par));
  EXPECT_TRUE(respectsParity(leftMultiplyOperator(sp, 1), par, par));
  EXPECT_TRUE(respectsParity(scalingOperator(sp, 0, QScalar::q(), -1), par, par));
}

TEST(Operators, QExp) {
  GeneratorSet g(0, 1);
  SuperSpace sp(g, 3);
  EXPECT_EQ(qExpOperator(SuperOperator::zero(sp.dim(), sp.dim())),
            SuperOperator::identity(sp.dim()));
  // O with O^2 = 0 -> 1 + O.
  SuperOperator o(sp.dim(), sp.dim(), 0);
  o.add(3, 0, QScalar(5));
  EXPECT_EQ(qExpOperator(o), SuperOperator::identity(sp.dim()) + o);
  // Non-nilpotent misuse.
  EXPECT_THROW(qExpOperator(SuperOperator::identity(sp.dim())), domain_error);

  // exp_q(z (x) E) on 1 (x) v with E^3 v = 0:
  // 1 (x) v + z (x) Ev + z^2 (x) E^2 v / [2]!.
  SuperOperator e(3, 3, 0);
  e.add(1, 0, QScalar(1));
  e.add(2, 1, QScalar(1));
  TensorSpace ts(SuperSpace(g, 2), 3, {0, 0, 0});
  SuperOperator zE = tensorOp(ts, leftMultiplyOperator(ts.z, 0), e);
  auto img = qExpOperator(zE).apply({{ts.index(0, 0), QScalar(1)}});
  std::map<int, QScalar> expect{
      {ts.index(0, 0), QScalar(1)},
      {ts.index(ts.z.indexOf(mono(g, {0})), 1), QScalar(1)},
      {ts.index(ts.z.indexOf(mono(g, {0, 0})), 2), qFactorial(2).inverse()}};
  EXPECT_EQ(img, expect);
}

TEST(Operators, DifferenceSpecializesToDerivativeAtQ1) {
  GeneratorSet g(1, 2);
  SuperSpace sp(g, 4);
  for (int gen = 0; gen < g.total(); ++gen)
    EXPECT_EQ(evalOperator(differenceOperator(sp, gen), mpq_class(1)),
              derivativeOperator(sp, gen));
}

TEST(Operators, TripletExportDeterministic) {
  GeneratorSet g(1, 1);
  SuperSpace sp(g, 2);
  auto t1 = derivativeOperator(sp, 1).triplets();
  auto t2 = derivativeOperator(sp, 1).triplets();
  EXPECT_EQ(t1, t2);
  EXPECT_FALSE(t1.empty());
}
