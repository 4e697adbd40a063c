#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tcalg/errors.hpp"
#include "tcalg/mor.hpp"

using namespace tcalg;
using testutil::fixture;
using testutil::fixture_names;

namespace {

Mor random_mor(const Engine& E, const Obj& X, const Obj& Y, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<CycNum> v(E.hom_dim(X, Y));
  for (auto& x : v) x = CycNum(d(rng)) + CycNum(d(rng)) * CycNum::zeta(8);
  return E.from_coords(X, Y, v);
}

std::vector<Obj> small_words(const CategorySpec& C, int maxlen) {
  std::vector<Obj> out{Obj::unit()};
  std::vector<Word> cur{Word{}};
  for (int l = 1; l <= maxlen; ++l) {
    std::vector<Word> nxt;
    for (const auto& w : cur)
      for (int a = 1; a < C.size(); ++a) {
        Word v = w;
        v.push_back(a);
        nxt.push_back(v);
        out.push_back(Obj::word(v));
      }
    cur = nxt;
  }
  return out;
}

}  // namespace

TEST(HomDim, Examples) {
  auto T = fixture("triv");
  Engine ET(T);
  EXPECT_EQ(ET.hom_dim(Obj::unit(), Obj::unit()), 1);
  auto I = fixture("ising");
  Engine EI(I);
  int s = I.label("s");
  EXPECT_EQ(EI.hom_dim(Obj::word({s, s}), Obj::unit()), 1);
  EXPECT_EQ(EI.hom_dim(Obj::word({s, s, s, s}), Obj::unit()), 2);
}

TEST(HomDim, PairsToUnitAreDualityDeltas) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    for (int i = 0; i < C.size(); ++i)
      for (int j = 0; j < C.size(); ++j)
        EXPECT_EQ(E.hom_dim(Obj::word({i, j}), Obj::unit()), j == C.dual[i] ? 1 : 0) << n;
  }
}

TEST(HomDim, TreeCountMatchesIteratedFusion) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    for (const auto& X : small_words(C, 3)) {
      const Word& w = X.parts[0];
      std::vector<int> mult(C.size(), 0);
      mult[0] = 1;
      for (int a : w) {
        std::vector<int> nm(C.size(), 0);
        for (int x = 0; x < C.size(); ++x)
          for (int y = 0; y < C.size(); ++y) nm[y] += mult[x] * C.N(x, a, y);
        mult = nm;
      }
      for (int k = 0; k < C.size(); ++k) EXPECT_EQ(E.ntrees(X, k), mult[k]);
    }
  }
}

TEST(Compose, UnitalAssociativeAndTyped) {
  std::mt19937 rng(3);
  auto C = fixture("ising");
  Engine E(C);
  auto ws = small_words(C, 2);
  for (const auto& X : ws)
    for (const auto& Y : ws) {
      if (!E.hom_dim(X, Y)) continue;
      Mor f = random_mor(E, X, Y, rng);
      EXPECT_EQ(E.compose(E.id(Y), f), f);
      EXPECT_EQ(E.compose(f, E.id(X)), f);
      for (const auto& Z : ws) {
        if (!E.hom_dim(Y, Z)) continue;
        Mor g = random_mor(E, Y, Z, rng);
        Mor h = random_mor(E, Z, X, rng);
        EXPECT_EQ(E.compose(E.compose(h, g), f), E.compose(h, E.compose(g, f)));
      }
    }
  Mor f = E.id(Obj::word({1}));
  EXPECT_THROW(E.compose(f, E.id(Obj::word({2}))), TypeMismatch);
}

TEST(Compose, InverseGivesIdentity) {
  auto C = fixture("fib");
  Engine E(C);
  Obj X = Obj::word({1, 1, 1});
  Mor c = E.braid(Obj::word({1}), Obj::word({1, 1}));
  auto ci = E.inverse(c);
  ASSERT_TRUE(ci);
  EXPECT_EQ(E.compose(c, *ci), E.id(X));
}

TEST(Tensor, FunctorialInterchangeAssociative) {
  std::mt19937 rng(5);
  for (const auto& n : {"z4", "fib", "ising"}) {
    auto C = fixture(n);
    Engine E(C);
    auto ws = small_words(C, 1);
    EXPECT_EQ(E.tensor(E.id(Obj::word({1})), E.id(Obj::word({1}))), E.id(Obj::word({1, 1})));
    for (int t = 0; t < 30; ++t) {
      std::uniform_int_distribution<int> pick(0, (int)ws.size() - 1);
      Obj A = ws[pick(rng)], B = ws[pick(rng)], Cc = ws[pick(rng)], D = ws[pick(rng)];
      if (!E.hom_dim(A, B) || !E.hom_dim(Cc, D)) continue;
      Mor f = random_mor(E, A, B, rng), g = random_mor(E, Cc, D, rng);
      Mor f2 = random_mor(E, B, B, rng), g2 = random_mor(E, D, D, rng);
      EXPECT_EQ(E.compose(E.tensor(f2, g2), E.tensor(f, g)), E.tensor(E.compose(f2, f), E.compose(g2, g)));
      EXPECT_EQ(E.tensor(E.id(Obj::unit()), f), f);
      Mor h = random_mor(E, A, A, rng);
      EXPECT_EQ(E.tensor(E.tensor(f, g), h), E.tensor(f, E.tensor(g, h)));
    }
  }
}

TEST(Braid, InverseAndRSymbol) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    auto ws = small_words(C, 2);
    for (const auto& U : ws)
      for (const auto& V : ws) {
        if (U.parts[0].size() + V.parts[0].size() > 3) continue;
        EXPECT_EQ(E.compose(E.braid(U, V), E.braid(U, V, -1)), E.id(E.tensor(V, U))) << n;
        EXPECT_EQ(E.compose(E.braid(U, V, -1), E.braid(U, V)), E.id(E.tensor(U, V))) << n;
      }
    EXPECT_EQ(E.braid(Obj::unit(), Obj::word({1})), E.id(Obj::word({1})));
  }
  auto S = fixture("z2-semion");
  Engine E(S);
  Mor c = E.braid(Obj::word({1}), Obj::word({1}));
  ASSERT_EQ(c.blocks.size(), 1u);
  EXPECT_EQ(c.blocks.at(0)(0, 0), S.Rsym(1, 1, 0));
}

TEST(Braid, NaturalityAndHexagon) {
  std::mt19937 rng(9);
  for (const auto& n : {"fib", "ising", "z4"}) {
    auto C = fixture(n);
    Engine E(C);
    auto ws = small_words(C, 1);
    for (const auto& U : ws)
      for (const auto& V : ws)
        for (const auto& W : ws) {
          // c_{U, VW} = (id_V c_{U,W})(c_{U,V} id_W)
          Mor lhs = E.braid(U, E.tensor(V, W));
          Mor rhs = E.compose(E.tensor(E.id(V), E.braid(U, W)), E.tensor(E.braid(U, V), E.id(W)));
          EXPECT_EQ(lhs, rhs) << n;
          Mor lhs2 = E.braid(E.tensor(U, V), W);
          Mor rhs2 = E.compose(E.tensor(E.braid(U, W), E.id(V)), E.tensor(E.id(U), E.braid(V, W)));
          EXPECT_EQ(lhs2, rhs2) << n;
        }
    // naturality with a random endomorphism of a length-2 word
    Obj X = Obj::word({1, 1}), Y = Obj::word({1});
    Mor f = random_mor(E, X, X, rng);
    EXPECT_EQ(E.compose(E.braid(X, Y), E.tensor(f, E.id(Y))), E.compose(E.tensor(E.id(Y), f), E.braid(X, Y)));
  }
}

TEST(Twist, RibbonEquationAllPairs) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    EXPECT_EQ(E.twist(Obj::unit()), E.id(Obj::unit()));
    auto ws = small_words(C, 2);
    for (const auto& U : ws)
      for (const auto& V : ws) {
        if (U.parts[0].size() + V.parts[0].size() > 3) continue;
        Mor lhs = E.twist(E.tensor(U, V));
        Mor rhs = E.compose(E.compose(E.braid(V, U), E.braid(U, V)), E.tensor(E.twist(U), E.twist(V)));
        EXPECT_EQ(lhs, rhs) << n;
        EXPECT_EQ(E.compose(E.twist(U), E.twist(U, -1)), E.id(U));
      }
    for (int i = 0; i < C.size(); ++i)
      EXPECT_EQ(E.twist(Obj::word({i})), E.scale(C.twist[i], E.id(Obj::word({i}))));
  }
}

TEST(Duality, ZigZagsAndLoops) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    auto ws = small_words(C, 2);
    for (const auto& U : ws) {
      Obj Ud = E.dual(U);
      Mor idU = E.id(U), idUd = E.id(Ud);
      EXPECT_EQ(E.compose(E.tensor(idU, E.d(U)), E.tensor(E.b(U), idU)), idU) << n;
      EXPECT_EQ(E.compose(E.tensor(E.d(U), idUd), E.tensor(idUd, E.b(U))), idUd) << n;
      EXPECT_EQ(E.compose(E.tensor(E.dt(U), idU), E.tensor(idU, E.bt(U))), idU) << n;
      EXPECT_EQ(E.compose(E.tensor(idUd, E.dt(U)), E.tensor(E.bt(U), idUd)), idUd) << n;
      CycNum l1 = E.scalar(E.compose(E.dt(U), E.b(U)));
      CycNum l2 = E.scalar(E.compose(E.d(U), E.bt(U)));
      EXPECT_EQ(l1, l2) << n;
      CycNum prod(1);
      for (int a : U.parts[0]) prod *= qdim(C, a);
      EXPECT_EQ(l1, prod) << n;
    }
    Obj u = Obj::unit();
    EXPECT_EQ(E.b(u), E.id(u));
    EXPECT_EQ(E.dt(u), E.id(u));
  }
  auto F = fixture("fib");
  Engine E(F);
  EXPECT_EQ(E.scalar(E.compose(E.dt(Obj::word({1})), E.b(Obj::word({1})))), qdim(F, 1));
}

TEST(Duality, DualMorphismsContravariant) {
  std::mt19937 rng(17);
  auto C = fixture("ising");
  Engine E(C);
  auto ws = small_words(C, 2);
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<int> pick(0, (int)ws.size() - 1);
    Obj X = ws[pick(rng)], Y = ws[pick(rng)], Z = ws[pick(rng)];
    if (!E.hom_dim(X, Y) || !E.hom_dim(Y, Z)) continue;
    Mor f = random_mor(E, X, Y, rng), g = random_mor(E, Y, Z, rng);
    EXPECT_EQ(E.dual(E.compose(g, f)), E.compose(E.dual(f), E.dual(g)));
    EXPECT_EQ(E.predual(E.compose(g, f)), E.compose(E.predual(f), E.predual(g)));
  }
}

TEST(Delta, NaturalIsoMonoidal) {
  std::mt19937 rng(23);
  for (const auto& n : {"z2-semion", "fib", "ising"}) {
    auto C = fixture(n);
    Engine E(C);
    auto ws = small_words(C, 1);
    EXPECT_EQ(E.delta(Obj::unit()), E.id(Obj::unit()));
    for (const auto& U : ws) {
      Mor dU = E.delta(U);
      EXPECT_TRUE(E.inverse(dU).has_value());
      for (const auto& V : ws) {
        // delta_{U V} = delta_U (x) delta_V under strictness
        EXPECT_EQ(E.delta(E.tensor(U, V)), E.tensor(dU, E.delta(V))) << n;
      }
    }
    Obj X = Obj::word({1, 1});
    Mor f = random_mor(E, X, X, rng);
    EXPECT_EQ(E.compose(E.delta(X), f), E.compose(E.dual(E.dual(f)), E.delta(X))) << n;
  }
}

TEST(DirectSums, InjectProjectPermute) {
  auto C = fixture("ising");
  Engine E(C);
  Obj X{{Word{}, Word{1}, Word{2, 2}}};
  for (int p = 0; p < 3; ++p) EXPECT_EQ(E.compose(E.project(X, p), E.inject(X, p)), E.id(Obj{{X.parts[p]}}));
  Mor sum = E.zero(X, X);
  for (int p = 0; p < 3; ++p) sum = E.add(sum, E.compose(E.inject(X, p), E.project(X, p)));
  EXPECT_EQ(sum, E.id(X));
  Obj Y{{Word{2, 2}, Word{}, Word{1}}};
  Mor P = E.permute(X, Y, {1, 2, 0});
  EXPECT_EQ(E.compose(E.project(Y, 1), P), E.project(X, 0));
  Mor D = E.dual_of_tensor_iso(X, Y);
  EXPECT_TRUE(E.inverse(D).has_value());
}
