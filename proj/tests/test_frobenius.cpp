#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tcalg/errors.hpp"
#include "tcalg/frobenius.hpp"
#include "tcalg/modules.hpp"

using namespace tcalg;
using testutil::fixture;
using testutil::fixture_names;

namespace {

const CheckResult* failing(const ValidationReport& r) {
  for (const auto& c : r.checks)
    if (!c.ok) return &c;
  return nullptr;
}

// Sum of quantum dimensions, computed from pivotal data alone.
std::complex<double> carrier_dim(const CategorySpec& C, const std::vector<int>& ls) {
  std::complex<double> s = 0;
  for (int a : ls) s += qdim(C, a).approx();
  return s;
}

// For a cyclic group generated by g of order n, the class of the restricted
// associator is trivial iff prod_k F^{g,g^k,g} (with intermediate labels the
// group products) equals 1.
CycNum cyclic_invariant(const CategorySpec& C, int g) {
  std::vector<int> pw{0};
  while (true) {
    int nx = C.fuse(pw.back(), g).at(0);
    if (nx == 0) break;
    pw.push_back(nx);
  }
  CycNum p(1);
  for (int gk : pw) {
    int gk1 = C.fuse(g, gk).at(0);
    int all = C.fuse(gk1, g).at(0);
    p *= C.Fsym(g, gk, g, all, gk1, C.fuse(gk, g).at(0));
  }
  return p;
}

// Doubles the component of m landing on the unit from part (p,p).
Mor bump(const Engine& E, const FrobAlgebra& A, int p) {
  int n = (int)A.obj.parts.size();
  Obj AA = E.tensor(A.obj, A.obj);
  Mor piece = E.compose(E.inject(A.obj, 0),
                        E.compose(E.project(A.obj, 0), E.compose(A.m, E.compose(E.inject(AA, p * n + p),
                                                                                 E.project(AA, p * n + p)))));
  return E.add(A.m, piece);
}

}  // namespace

TEST(Algebra, TrivialAlgebraEverywhere) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    auto A = trivial_algebra(E);
    EXPECT_TRUE(check_algebra(E, A.obj, A.m, A.eta).ok()) << n;
    auto F = check_frobenius(E, A);
    EXPECT_TRUE(F.ok()) << n;
    EXPECT_TRUE(F.special && F.symmetric) << n;
    EXPECT_EQ(A.gamma, CycNum(1));
    EXPECT_TRUE(is_simple(E, A));
  }
}

TEST(Algebra, IsingPsiPairAndBrokenUnit) {
  auto C = fixture("ising");
  Engine E(C);
  auto res = enumerate_frobenius(E, {0, C.label("psi")});
  ASSERT_EQ(res.algebras.size(), 1u);
  const auto& A = res.algebras[0];
  EXPECT_TRUE(check_algebra(E, A.obj, A.m, A.eta).ok());
  Mor bad = E.scale(CycNum(2), A.m);
  auto r = check_algebra(E, A.obj, bad, A.eta);
  ASSERT_NE(failing(r), nullptr);
}

TEST(Algebra, FibGaugeInvariantMutationBreaksAssociativity) {
  auto C = fixture("fib");
  Engine E(C);
  auto res = enumerate_frobenius(E, {0, C.label("tau")});
  ASSERT_EQ(res.algebras.size(), 1u);
  const auto& A = res.algebras[0];
  auto r = check_algebra(E, A.obj, bump(E, A, 1), A.eta);
  const auto* f = failing(r);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->name, "associativity");
}

TEST(Frobenius, WordAlgebraOfIsingSigma) {
  auto C = fixture("ising");
  Engine E(C);
  Obj X = Obj::word({C.label("s")});
  Obj Xv = E.dual(X);
  FrobAlgebra A;
  A.name = "sv s";
  A.obj = E.tensor(Xv, X);
  Mor iv = E.id(Xv), ix = E.id(X);
  A.m = E.tensor(E.tensor(iv, E.dt(X)), ix);
  A.eta = E.bt(X);
  A.eps = E.d(X);
  A.Delta = E.tensor(E.tensor(iv, E.b(X)), ix);
  EXPECT_TRUE(check_algebra(E, A.obj, A.m, A.eta).ok());
  auto F = check_frobenius(E, A);
  const auto* f = failing(F.report);
  EXPECT_EQ(f, nullptr) << (f ? f->name + ": " + f->witness : "");
  ASSERT_TRUE(F.gamma.has_value());
  EXPECT_EQ(*F.gamma, qdim(C, C.label("s")));
  EXPECT_NEAR(std::abs(F.gamma->approx()), std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(F.special);
}

TEST(Frobenius, XiScalesCounitAndCoproduct) {
  auto C = fixture("z4");
  Engine E(C);
  auto A = enumerate_frobenius(E, {0, 2}).algebras.at(0);
  auto F1 = frobeniusability(E, A.obj, A.m, A.eta, CycNum(1));
  auto F3 = frobeniusability(E, A.obj, A.m, A.eta, CycNum::zeta(8) * CycNum(3));
  ASSERT_TRUE(F1 && F3);
  CycNum xi = CycNum::zeta(8) * CycNum(3);
  EXPECT_EQ(F3->eps, E.scale(xi, F1->eps));
  EXPECT_EQ(F3->Delta, E.scale(CycNum(1) / xi, F1->Delta));
  EXPECT_EQ(F3->gamma, xi * F1->gamma);
  EXPECT_EQ(F3->gamma_prime, F1->gamma_prime / xi);
  EXPECT_TRUE(check_frobenius(E, *F3).ok());
  EXPECT_THROW(frobeniusability(E, A.obj, A.m, A.eta, CycNum(0)), DivByZero);
  auto N = normalize(E, *F3);
  EXPECT_EQ(N.gamma_prime, CycNum(1));
  EXPECT_EQ(N.gamma, CycNum(2));
}

TEST(Frobenius, NormalizedDimensionsMatchPivotalData) {
  struct Case {
    std::string fx;
    std::vector<std::string> ls;
  };
  for (const auto& cs : std::vector<Case>{{"fib", {"1", "tau"}}, {"ising", {"1", "psi"}}, {"z2-fermion", {"1", "f"}}}) {
    auto C = fixture(cs.fx);
    Engine E(C);
    std::vector<int> ls;
    for (const auto& s : cs.ls) ls.push_back(C.label(s));
    auto res = enumerate_frobenius(E, ls);
    ASSERT_EQ(res.algebras.size(), 1u) << cs.fx;
    const auto& A = res.algebras[0];
    EXPECT_TRUE(A.normalized && A.special && A.symmetric);
    EXPECT_EQ(A.gamma_prime, CycNum(1));
    auto want = carrier_dim(C, ls);
    EXPECT_NEAR(std::abs(A.gamma.approx() - want), 0.0, 1e-9) << cs.fx;
  }
}

TEST(Frobenius, OppositeAndProduct) {
  auto C = fixture("ising");
  Engine E(C);
  auto A = enumerate_frobenius(E, {0, C.label("psi")}).algebras.at(0);
  auto O = opposite(E, A);
  EXPECT_TRUE(check_algebra(E, O.obj, O.m, O.eta).ok());
  EXPECT_TRUE(check_frobenius(E, O).ok());
  EXPECT_EQ(O.name, A.name + "^opp");
  auto OO = opposite(E, O);
  EXPECT_TRUE(check_frobenius(E, OO).ok());

  auto C4 = fixture("z4");
  Engine E4(C4);
  auto B = enumerate_frobenius(E4, {0, 2}).algebras.at(0);
  auto P = product(E4, B, B);
  auto rep = check_frobenius(E4, P);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.special);
  EXPECT_EQ(P.obj.parts.size(), 4u);
  EXPECT_EQ(*rep.gamma * *rep.gamma_prime, B.gamma * B.gamma);
}

TEST(Cochain, CoboundaryOfCoboundaryIsTrivial) {
  auto C = fixture("z4");
  auto G = label_group(C, {0, 1, 2, 3});
  ASSERT_EQ(G.elems.size(), 4u);
  GroupCochain x = trivial_cochain(G, 1);
  x.values[{1}] = CycNum::zeta(8);
  x.values[{2}] = CycNum(-1);
  x.values[{3}] = CycNum::zeta(3);
  auto dx = coboundary(x);
  EXPECT_FALSE(cochains_equal(dx, trivial_cochain(G, 2)));
  GroupCochain w = trivial_cochain(G, 2);
  w.values[{1, 3}] = CycNum::zeta(5);
  w.values[{2, 2}] = CycNum(7);
  EXPECT_TRUE(cochains_equal(coboundary(coboundary(x)), trivial_cochain(G, 3)));
  EXPECT_TRUE(cochains_equal(coboundary(w), coboundary(w)));
  auto ddw = coboundary(w);
  EXPECT_FALSE(cochains_equal(ddw, trivial_cochain(G, 3)));
}

TEST(Cochain, NotAGroup) {
  auto C = fixture("fib");
  EXPECT_THROW(label_group(C, {0, 1}), NotAGroup);
}

TEST(Schellekens, OrderTwoExistenceMatchesIndicator) {
  struct Case {
    std::string fx, g;
  };
  for (const auto& cs : std::vector<Case>{{"z2-semion", "s1"}, {"z2-fermion", "f"}, {"ising", "psi"}, {"z4", "2"}}) {
    auto C = fixture(cs.fx);
    Engine E(C);
    int g = C.label(cs.g);
    auto G = label_group(C, {0, g});
    bool expect = cyclic_invariant(C, g).is_one();
    auto S = schellekens(E, {0, g}, trivial_cochain(G, 2));
    EXPECT_EQ(S.has_value(), expect) << cs.fx;
    auto en = enumerate_frobenius(E, {0, g});
    EXPECT_EQ(!en.algebras.empty(), expect) << cs.fx;
    if (S) {
      EXPECT_TRUE(check_frobenius(E, *S).ok());
      EXPECT_TRUE(S->special && S->normalized);
    }
  }
  EXPECT_FALSE(cyclic_invariant(fixture("z2-semion"), 1).is_one());
}

TEST(Enumerate, PointedCarriersFollowCyclicInvariant) {
  auto C = fixture("z4");
  Engine E(C);
  // subgroups: {0}, {0,2}, Z4; non-subgroup carriers never carry an algebra
  EXPECT_EQ(enumerate_frobenius(E, {0}).algebras.size(), 1u);
  EXPECT_EQ(!enumerate_frobenius(E, {0, 2}).algebras.empty(), cyclic_invariant(C, 2).is_one());
  EXPECT_EQ(!enumerate_frobenius(E, {0, 1, 2, 3}).algebras.empty(), cyclic_invariant(C, 1).is_one());
  EXPECT_TRUE(enumerate_frobenius(E, {0, 1}).algebras.empty());
  EXPECT_TRUE(enumerate_frobenius(E, {0, 1, 3}).algebras.empty());
}

TEST(Enumerate, IsingSigmaCarriersHaveNoAlgebra) {
  auto C = fixture("ising");
  Engine E(C);
  int s = C.label("s"), p = C.label("psi");
  // 1+s needs F^{sss}_s[1,1] = 1 for associativity; it is 1/sqrt2 here
  EXPECT_NEAR(std::abs(C.Fsym(s, s, s, s, 0, 0).approx()), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(enumerate_frobenius(E, {0, s}).algebras.empty());
  EXPECT_TRUE(enumerate_frobenius(E, {0, p, s}).algebras.empty());
}

TEST(Enumerate, EveryResultValidates) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    for (int a = 0; a < C.size(); ++a) {
      std::vector<int> ls{0};
      if (a) ls.push_back(a);
      for (const auto& A : enumerate_frobenius(E, ls).algebras) {
        EXPECT_TRUE(check_algebra(E, A.obj, A.m, A.eta).ok()) << A.name;
        EXPECT_TRUE(check_frobenius(E, A).ok()) << A.name;
        EXPECT_TRUE(A.special && A.symmetric && A.normalized) << A.name;
        EXPECT_EQ(A.labels, ls);
      }
    }
  }
}

TEST(Centers, SimpleAlgebrasHaveTrivialCenters) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    for (int a = 0; a < C.size(); ++a) {
      std::vector<int> ls{0};
      if (a) ls.push_back(a);
      for (const auto& A : enumerate_frobenius(E, ls).algebras) {
        auto Z = centers(E, A);
        EXPECT_EQ(E.compose(Z.Pl, Z.Pl), Z.Pl);
        EXPECT_EQ(E.compose(Z.Pr, Z.Pr), Z.Pr);
        EXPECT_EQ(E.compose(Z.left.pi, Z.left.iota), E.id(Z.left.obj));
        EXPECT_TRUE(Z.left.obj.is_unit()) << A.name;
        EXPECT_TRUE(Z.right.obj.is_unit()) << A.name;
        EXPECT_TRUE(is_simple(E, A));
      }
    }
  }
}

TEST(Centers, DirectSumIsNotSimple) {
  auto C = fixture("fib");
  Engine E(C);
  auto one = trivial_algebra(E);
  auto S = direct_sum(E, one, one);
  EXPECT_TRUE(check_frobenius(E, S).ok());
  EXPECT_FALSE(S.simple);
  EXPECT_FALSE(is_simple(E, S));
  auto Z = centers(E, S);
  EXPECT_EQ(Z.left.obj.parts.size(), 2u);
  EXPECT_EQ(Z.right.obj.parts.size(), 2u);
}

TEST(Json, StructureConstantsRoundTrip) {
  auto C = fixture("fib");
  Engine E(C);
  int t = C.label("tau");
  auto A = enumerate_frobenius(E, {0, t}).algebras.at(0);
  auto j = algebra_to_json(E, A);
  EXPECT_EQ(j["carrier"], nlohmann::json::array({"1", "tau"}));
  for (const auto& e : j["m"]) {
    auto k = e["key"];
    CycNum v = CycNum::from_json(e["value"]);
    EXPECT_EQ(v, structure_constant(E, A, C.label(k[0]), C.label(k[1]), C.label(k[2])));
  }
  // associativity on t t t -> t, evaluated on the left tree with
  // intermediate e: m(t,t,e) m(e,t,t) = sum_f F[e,f] m(t,t,f) m(t,f,t)
  auto F = [&](int e, int f) { return C.Fsym(t, t, t, t, e, f); };
  CycNum x = structure_constant(E, A, t, t, 0), y = structure_constant(E, A, t, t, t);
  EXPECT_EQ(x, F(0, 0) * x + F(0, t) * y * y);
  EXPECT_EQ(y * y, F(t, 0) * x + F(t, t) * y * y);
}
