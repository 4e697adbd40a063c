#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "diagram_env.hpp"
#include "fixtures.hpp"
#include "tcalg/dsl.hpp"
#include "tcalg/errors.hpp"

using namespace tcalg;
using testutil::fixture;
using testutil::fixture_names;

TEST(Parse, IdOnLabel) {
  auto C = fixture("ising");
  Engine E(C);
  auto e = parse_diagram(E, "id[s]");
  EXPECT_EQ(e->kind, Expr::Id);
  EXPECT_EQ(e->dom, Obj::word({C.label("s")}));
  EXPECT_EQ(eval_diagram(E, *e), E.id(Obj::word({C.label("s")})));
}

TEST(Parse, EpsilonNaturalExpression) {
  auto C = fixture("ising");
  Engine E(C);
  Obj A{{Word{}, Word{C.label("psi")}}};
  Mor m = E.zero(E.tensor(A, A), A);
  Env env{{"A", A}, {"m", m}};
  auto e = parse_diagram(E, "d[A] . (id[A] * m) . (bt[A] * id[A])", env);
  EXPECT_EQ(e->dom, A);
  EXPECT_TRUE(e->cod.is_unit());
}

TEST(Parse, InnerAutomorphismExpression) {
  auto C = fixture("z2-fermion");
  Engine E(C);
  Obj A{{Word{}, Word{1}}};
  Mor m = E.zero(E.tensor(A, A), A);
  Mor a = E.zero(Obj::unit(), A);
  Env env{{"A", A}, {"m", m}, {"a", a}, {"ainv", a}};
  auto e = parse_diagram(E, "m . (m * ainv) . (a * id[A])", env);
  EXPECT_EQ(e->dom, A);
  EXPECT_EQ(e->cod, A);
}

TEST(Parse, Errors) {
  auto C = fixture("ising");
  Engine E(C);
  EXPECT_THROW(parse_diagram(E, "id[s"), SyntaxError);
  EXPECT_THROW(parse_diagram(E, "id[s] ."), SyntaxError);
  EXPECT_THROW(parse_diagram(E, "c[s]"), SyntaxError);
  EXPECT_THROW(parse_diagram(E, "id[s] $ id[s]"), SyntaxError);
  EXPECT_THROW(parse_diagram(E, "f . id[s]"), UnboundName);
  EXPECT_THROW(parse_diagram(E, "id[q]"), UnboundName);
  EXPECT_THROW(parse_diagram(E, "id[s] . id[psi]"), TypeMismatch);
  try {
    parse_diagram(E, "id[s] . id[psi]");
  } catch (const TypeMismatch& e) {
    EXPECT_NE(std::string(e.what()).find("column 7"), std::string::npos) << e.what();
  }
}

TEST(Parse, KeywordsOnlyBeforeBracket) {
  auto C = fixture("ising");
  Engine E(C);
  Mor f = E.id(Obj::word({1}));
  Env env{{"theta", f}, {"c", f}};
  auto e = parse_diagram(E, "theta . c . theta[psi]", env);
  EXPECT_EQ(eval_diagram(E, *e, env), E.scale(C.twist[1], f));
}

TEST(Print, RoundTrip) {
  auto C = fixture("ising");
  Engine E(C);
  const char* texts[] = {
      "id[s]",
      "d[s] . (id[s] * id[s])",
      "(c[s, psi] . ci[s, psi]) * theta[s s]",
      "dt[s] . (id[s] * (theta[s] . thetai[s])) . b[s]",
      "id[s] . (id[s] . id[s])",
      "id[s] * (id[psi] * id[s])",
      "(id[s] . id[s]) * id[psi]",
      "delta[s psi] . bt[1] * id[s psi]",
  };
  for (const char* t : texts) {
    auto e = parse_diagram(E, t);
    std::string p = print_diagram(*e);
    auto e2 = parse_diagram(E, p);
    EXPECT_TRUE(same_ast(*e, *e2)) << t << " -> " << p;
    EXPECT_EQ(print_diagram(*e2), p);
  }
}

TEST(Eval, SMatrixDiagram) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    auto s = s_matrix(C);
    for (int i = 0; i < C.size(); ++i)
      for (int j = 0; j < C.size(); ++j) {
        std::string I = C.labels[i], J = C.labels[j];
        std::string t = "(d[" + J + "] * dt[" + I + "]) . (id[" + C.labels[C.dual[j]] + "] * (c[" + I + ", " + J +
                        "] . c[" + J + ", " + I + "]) * id[" + C.labels[C.dual[i]] + "]) . (bt[" + J + "] * b[" + I + "])";
        EXPECT_EQ(E.scalar(eval_text(E, t)), s(i, j)) << n << " " << t;
      }
  }
}

TEST(Eval, LoopIsQdim) {
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    for (int i = 0; i < C.size(); ++i) {
      std::string L = C.labels[i];
      EXPECT_EQ(E.scalar(eval_text(E, "dt[" + L + "] . b[" + L + "]")), qdim(C, i));
      EXPECT_EQ(E.scalar(eval_text(E, "d[" + L + "] . bt[" + L + "]")), qdim(C, i));
    }
  }
}

TEST(Eval, MatchesDenseOracleOnRandomClosedDiagrams) {
  std::mt19937 rng(2024);
  for (const auto& n : fixture_names()) {
    auto C = fixture(n);
    Engine E(C);
    oracle::Dense D(C);
    for (int t = 0; t < 40; ++t) {
      auto rd = oracle::random_closed(C, rng, 3 + t % 6);
      Env env = testutil::vertex_env(C, rd);
      CycNum got = E.scalar(eval_text(E, rd.text, env));
      CycNum want = D.run(rd.layers);
      EXPECT_EQ(got, want) << n << ": " << rd.text;
    }
  }
}

TEST(Eval, OracleSeesBraidingAndTwist) {
  // sanity of the oracle itself on hand-computable diagrams
  auto C = fixture("z2-semion");
  oracle::Dense D(C);
  using L = oracle::Layer;
  // theta_s on a loop: i * dim(s)
  CycNum v = D.run({{L::Cup, 0, 1}, {L::Twist, 0}, {L::CapT, 0, 1}});
  EXPECT_EQ(v, CycNum::zeta(4) * qdim(C, 1));
}
