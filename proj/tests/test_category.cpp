#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tcalg/category.hpp"
#include "tcalg/errors.hpp"

using namespace tcalg;
using testutil::fixture;
using testutil::fixture_names;

TEST(Load, LabelCounts) {
  EXPECT_EQ(fixture("triv").size(), 1);
  auto sem = fixture("z2-semion");
  EXPECT_EQ(sem.size(), 2);
  EXPECT_EQ(sem.twist[1], CycNum::zeta(4));
  auto is = fixture("ising");
  EXPECT_EQ(is.size(), 3);
}

TEST(Load, SchemaErrors) {
  auto doc = save_category(fixture("z2-semion"));
  auto broken = doc;
  broken.erase("fusion");
  EXPECT_THROW(load_category(broken), MalformedSpec);
  broken = doc;
  broken["unit"] = "s1";
  EXPECT_THROW(load_category(broken), MalformedSpec);
  broken = doc;
  broken["twist"] = nlohmann::json::array();
  EXPECT_THROW(load_category(broken), MalformedSpec);
  broken = doc;
  broken["labels"] = nlohmann::json::array();
  EXPECT_THROW(load_category(broken), MalformedSpec);
}

TEST(Load, RoundTripBitExact) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    auto j1 = save_category(C);
    auto j2 = save_category(load_category(j1));
    EXPECT_EQ(j1.dump(), j2.dump()) << n;
  }
}

TEST(Validate, AllFixturesPass) {
  for (const auto& n : fixture_names()) {
    auto rep = validate_category(fixture(n));
    for (const auto& c : rep.checks) EXPECT_TRUE(c.ok) << n << " " << c.name << ": " << c.witness;
  }
}

TEST(Validate, IsingSigmaBlockSignFlipBreaksPentagon) {
  auto C = fixture("ising");
  int s = C.label("s");
  int flipped = 0;
  for (auto& [k, v] : C.F) {
    if (!(k[0] == s && k[1] == s && k[2] == s && k[3] == s)) continue;
    auto M = C;
    M.F[k] = -v;
    M.prepare();
    auto rep = validate_category(M);
    EXPECT_FALSE(rep.ok());
    const auto* p = rep.find("pentagon");
    ASSERT_NE(p, nullptr);
    EXPECT_FALSE(p->ok);
    EXPECT_FALSE(p->witness.empty());
    ++flipped;
  }
  EXPECT_EQ(flipped, 4);
}

TEST(Validate, RSymbolMutationBreaksHexagon) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    for (auto& [k, v] : C.R) {
      if (k[0] == 0 || k[1] == 0) continue;
      auto M = C;
      M.R[k] = v * CycNum::zeta(3);
      M.prepare();
      auto rep = validate_category(M);
      EXPECT_FALSE(rep.ok()) << n;
    }
  }
}

TEST(Dual, Labels) {
  EXPECT_EQ(dual_label(fixture("triv"), 0), 0);
  EXPECT_EQ(dual_label(fixture("z2-semion"), 1), 1);
  auto is = fixture("ising");
  EXPECT_EQ(dual_label(is, is.label("s")), is.label("s"));
  auto z4 = fixture("z4");
  EXPECT_EQ(dual_label(z4, 1), 3);
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    for (int i = 0; i < C.size(); ++i) {
      EXPECT_EQ(dual_label(C, dual_label(C, i)), i);
      EXPECT_EQ(C.twist[dual_label(C, i)], C.twist[i]);
    }
  }
}

TEST(Qdim, Values) {
  EXPECT_EQ(qdim(fixture("triv"), 0), CycNum(1));
  auto fib = fixture("fib");
  CycNum d = qdim(fib, 1);
  EXPECT_EQ(d * d, d + CycNum(1));
  EXPECT_GT(d.approx().real(), 0.0);
  auto is = fixture("ising");
  CycNum ds = qdim(is, is.label("s"));
  EXPECT_EQ(ds * ds, CycNum(2));
}

TEST(Qdim, MultiplicativeOnFusion) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    std::vector<CycNum> d;
    for (int i = 0; i < C.size(); ++i) d.push_back(qdim(C, i));
    for (int i = 0; i < C.size(); ++i)
      for (int j = 0; j < C.size(); ++j) {
        CycNum s;
        for (int k : C.fuse(i, j)) s += CycNum(C.N(i, j, k)) * d[k];
        EXPECT_EQ(d[i] * d[j], s) << n;
      }
  }
}

TEST(SMatrix, Examples) {
  auto s = s_matrix(fixture("triv"));
  EXPECT_EQ(s(0, 0), CycNum(1));
  auto sem = s_matrix(fixture("z2-semion"));
  EXPECT_EQ(sem(0, 0), CycNum(1));
  EXPECT_EQ(sem(0, 1), CycNum(1));
  EXPECT_EQ(sem(1, 0), CycNum(1));
  EXPECT_EQ(sem(1, 1), CycNum(-1));
  auto fer = s_matrix(fixture("z2-fermion"));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(fer(i, j), CycNum(1));
}

TEST(SMatrix, SymmetricFirstRowIsQdim) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    auto s = s_matrix(C);
    EXPECT_EQ(s, transpose(s)) << n;
    for (int i = 0; i < C.size(); ++i) EXPECT_EQ(s(0, i), qdim(C, i)) << n;
  }
}

TEST(SMatrix, VerlindeDiagonalizesFusion) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    if (!is_modular(C)) continue;
    auto s = s_matrix(C);
    auto si = inverse(s);
    ASSERT_TRUE(si);
    int r = C.size();
    for (int i = 0; i < r; ++i) {
      Matrix Ni(r, r);
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) Ni(j, k) = CycNum(C.N(i, j, k));
      Matrix D = *si * Ni * s;
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          if (a != b) EXPECT_TRUE(D(a, b).is_zero()) << n;
    }
  }
}

TEST(Modular, Decisions) {
  EXPECT_TRUE(is_modular(fixture("triv")));
  EXPECT_TRUE(is_modular(fixture("z2-semion")));
  EXPECT_EQ(det(s_matrix(fixture("z2-semion"))), CycNum(-2));
  EXPECT_FALSE(is_modular(fixture("z2-fermion")));
  EXPECT_EQ(rank(s_matrix(fixture("z2-fermion"))), 1);
  EXPECT_TRUE(is_modular(fixture("z4")));
  EXPECT_TRUE(is_modular(fixture("fib")));
  EXPECT_TRUE(is_modular(fixture("ising")));
}
