#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tcalg/errors.hpp"
#include "tcalg/modules.hpp"

using namespace tcalg;
using testutil::fixture;
using testutil::fixture_names;

namespace {

const std::vector<std::string>& modular_fixtures() {
  static const std::vector<std::string> n{"triv", "z2-semion", "z4", "fib", "ising"};
  return n;
}

// Hopf-link matrix from fusion rules, twists and dimensions.
std::vector<std::vector<CycNum>> hopf(const CategorySpec& C) {
  int n = C.size();
  std::vector<std::vector<CycNum>> s(n, std::vector<CycNum>(n, CycNum(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k : C.fuse(i, j)) s[i][j] += C.twist[k] * qdim(C, k) / (C.twist[i] * C.twist[j]);
  return s;
}

bool commutes_with_modular_data(const CategorySpec& C, const IntMatrix& Z) {
  auto s = hopf(C);
  int n = C.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (Z[i][j] != 0 && C.twist[i] != C.twist[j]) return false;
      CycNum zs(0), sz(0);
      for (int k = 0; k < n; ++k) {
        zs += CycNum(Z[i][k]) * s[k][j];
        sz += s[i][k] * CycNum(Z[k][j]);
      }
      if (zs != sz) return false;
    }
  return true;
}

std::vector<FrobAlgebra> label_algebras(const Engine& E) {
  std::vector<FrobAlgebra> out;
  const auto& C = E.cat();
  for (int a = 0; a < C.size(); ++a) {
    std::vector<int> ls{0};
    if (a) ls.push_back(a);
    for (auto& A : enumerate_frobenius(E, ls).algebras) out.push_back(A);
  }
  return out;
}

int invertible_labels(const CategorySpec& C) {
  int k = 0;
  for (int a = 0; a < C.size(); ++a)
    if ((qdim(C, a) * qdim(C, a)).is_one()) ++k;
  return k;
}

}  // namespace

TEST(Module, RegularAndInducedAxioms) {
  auto C = fixture("ising");
  Engine E(C);
  auto A = enumerate_frobenius(E, {0, C.label("psi")}).algebras.at(0);
  EXPECT_TRUE(check_left(E, A, regular_left(A)).ok());
  EXPECT_TRUE(check_bimodule(E, A, A, regular_bimodule(A)).ok());
  auto M = induced_left(E, A, Obj::word({C.label("s")}));
  EXPECT_TRUE(check_left(E, A, M).ok());
  LeftModule bad = M;
  bad.rho = E.scale(CycNum(2), M.rho);
  EXPECT_FALSE(check_left(E, A, bad).ok());
  auto R = dual_right_module(E, A, M);
  EXPECT_TRUE(check_right(E, A, R).ok());
}

TEST(Module, HomDimensionsAgreeWithAveraging) {
  for (const auto& n : {"z4", "fib", "ising"}) {
    auto C = fixture(n);
    Engine E(C);
    for (const auto& A : label_algebras(E)) {
      for (int i = 0; i < C.size(); ++i)
        for (int j = 0; j < C.size(); ++j) {
          auto X = sandwich(E, A, i, j);
          auto Y = alpha_induction(E, A, Obj::word(i ? Word{i} : Word{}), 1);
          EXPECT_TRUE(check_bimodule(E, A, A, X).ok());
          EXPECT_TRUE(check_bimodule(E, A, A, Y).ok());
          EXPECT_EQ((int)hom_bimod(E, A, A, X, Y).size(), hom_bimod_dim_averaged(E, A, A, X, Y)) << n;
        }
    }
  }
}

TEST(Module, SimpleModuleCountIsTwistedTraceOfZ) {
  for (const auto& n : modular_fixtures()) {
    auto C = fixture(n);
    Engine E(C);
    for (const auto& A : label_algebras(E)) {
      bool complete = false;
      auto mods = simple_left_modules(E, A, &complete);
      ASSERT_TRUE(complete) << A.name;
      auto Z = z_matrix(E, A);
      int tr = 0;
      for (int i = 0; i < C.size(); ++i) tr += Z[i][dual_label(C, i)];  // Z(1) is conjugation
      EXPECT_EQ((int)mods.size(), tr) << n << " " << A.name;
      for (const auto& M : mods) EXPECT_TRUE(check_left(E, A, M).ok());
    }
  }
}

TEST(ZMatrix, UnitAlgebraIsChargeConjugation) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    auto Z = z_matrix(E, trivial_algebra(E));
    for (int i = 0; i < C.size(); ++i)
      for (int j = 0; j < C.size(); ++j) EXPECT_EQ(Z[i][j], i == dual_label(C, j) ? 1 : 0) << n;
  }
}

TEST(ZMatrix, SandwichEqualsAlphaAndIsModularInvariant) {
  for (const auto& n : modular_fixtures()) {
    auto C = fixture(n);
    Engine E(C);
    for (const auto& A : label_algebras(E)) {
      auto Zs = z_matrix_sandwich(E, A), Za = z_matrix_alpha(E, A);
      EXPECT_EQ(Zs, Za) << A.name;
      EXPECT_EQ(Zs[0][0], 1);
      EXPECT_TRUE(commutes_with_modular_data(C, Zs)) << n << " " << A.name;
    }
  }
}

TEST(ZMatrix, OppositeTransposes) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    for (const auto& A : label_algebras(E)) EXPECT_EQ(z_matrix(E, opposite(E, A)), int_transpose(z_matrix(E, A)));
  }
}

TEST(ZMatrix, ProductFactorsThroughUnit) {
  for (const auto& n : {"z2-fermion", "z4", "ising"}) {
    auto C = fixture(n);
    Engine E(C);
    auto algs = label_algebras(E);
    auto Z1 = z_matrix(E, trivial_algebra(E));
    for (const auto& A : algs)
      for (const auto& B : algs) {
        bool pointed = true;
        for (int a : A.labels) pointed = pointed && (qdim(C, a) * qdim(C, a)).is_one();
        for (int b : B.labels) pointed = pointed && (qdim(C, b) * qdim(C, b)).is_one();
        if (!pointed) continue;
        auto P = product(E, A, B);
        EXPECT_EQ(z_matrix(E, P), int_mul(int_mul(z_matrix(E, A), Z1), z_matrix(E, B))) << A.name << " " << B.name;
      }
  }
}

TEST(Azumaya, PermutationIffTrivialCenters) {
  for (const auto& n : modular_fixtures()) {
    auto C = fixture(n);
    Engine E(C);
    auto algs = label_algebras(E);
    algs.push_back(direct_sum(E, trivial_algebra(E), trivial_algebra(E)));
    for (const auto& A : algs) {
      auto Z = z_matrix(E, A);
      auto ce = centers(E, A);
      bool trivial = ce.left.obj.is_unit() && ce.right.obj.is_unit();
      EXPECT_EQ(is_azumaya(E, A), is_permutation_matrix(Z)) << A.name;
      EXPECT_EQ(is_azumaya(E, A), trivial) << A.name;
    }
  }
  EXPECT_TRUE(is_permutation_matrix({{0, 1}, {1, 0}}));
  EXPECT_FALSE(is_permutation_matrix({{1, 1}, {0, 1}}));
  EXPECT_FALSE(is_permutation_matrix({{2, 0}, {0, 1}}));
}

TEST(Tensor, OverAlgebraUnit) {
  auto C = fixture("fib");
  Engine E(C);
  for (const auto& A : label_algebras(E)) {
    auto R = regular_bimodule(A);
    auto T = tensor_over_A(E, A, A, A, R, R);
    EXPECT_EQ(E.compose(T.r, T.e), E.id(T.obj.obj));
    EXPECT_TRUE(check_bimodule(E, A, A, T.obj).ok());
    EXPECT_TRUE(bimod_iso(E, A, A, T.obj, R).has_value()) << A.name;
  }
}

TEST(Twist, NonAutomorphismRejected) {
  auto C = fixture("z2-fermion");
  Engine E(C);
  auto A = enumerate_frobenius(E, {0, 1}).algebras.at(0);
  Mor half = E.scale(CycNum(2), E.id(A.obj));
  EXPECT_THROW(twisted_bimodule(E, A, E.id(A.obj), half), InvalidTwist);
  auto T = twisted_bimodule(E, A, E.id(A.obj), E.id(A.obj));
  EXPECT_TRUE(bimod_iso(E, A, A, T, regular_bimodule(A)).has_value());
}

TEST(Picard, UnitAlgebraGivesInvertibleLabels) {
  for (const auto& n : modular_fixtures()) {
    auto C = fixture(n);
    Engine E(C);
    auto one = trivial_algebra(E);
    auto P = picard_bimodules(E, one);
    EXPECT_TRUE(P.complete) << n << " " << P.note;
    EXPECT_EQ((int)P.elems.size(), invertible_labels(C)) << n;
    EXPECT_EQ(P.simple_count, C.size());
    EXPECT_EQ(P.find(E, one, regular_bimodule(one)), 0);
  }
}

TEST(Picard, TableIsAGroupAndCountsMatchZ) {
  for (const auto& n : modular_fixtures()) {
    auto C = fixture(n);
    Engine E(C);
    for (const auto& A : label_algebras(E)) {
      auto P = picard_bimodules(E, A);
      ASSERT_TRUE(P.complete) << A.name << " " << P.note;
      int bound = 0;
      auto Z = z_matrix(E, A);
      for (const auto& row : Z)
        for (int z : row) bound += z * z;
      EXPECT_EQ(P.simple_bound, bound);
      EXPECT_EQ(P.simple_count, bound) << A.name;
      int k = (int)P.elems.size();
      for (int i = 0; i < k; ++i) {
        EXPECT_EQ(P.mul[0][i], i);
        EXPECT_EQ(P.mul[i][0], i);
        int ones = 0;
        for (int j = 0; j < k; ++j) ones += P.mul[i][j] == 0;
        EXPECT_EQ(ones, 1);
      }
    }
  }
}
