#include "tcalg/modules.hpp"

#include <functional>
#include <random>
#include <set>

#include "tcalg/errors.hpp"
#include "tcalg/solver.hpp"

namespace tcalg {

namespace {

void expect_eq(const Engine& E, CheckResult& r, const Mor& f, const Mor& g, const std::string& what) {
  (void)E;
  if (r.ok && f != g) {
    r.ok = false;
    r.witness = what;
  }
}

using Residual = std::function<std::vector<Mor>(const Mor&)>;

// Basis of {f in Hom(X,Y) : residual(f) = 0} for a linear residual.
std::vector<Mor> solve_linear(const Engine& E, const Obj& X, const Obj& Y, const Residual& res) {
  auto basis = E.hom_basis(X, Y);
  if (basis.empty()) return {};
  std::vector<std::vector<CycNum>> cols;
  for (const auto& b : basis) {
    std::vector<CycNum> col;
    for (const auto& r : res(b)) {
      auto v = E.coords(r);
      col.insert(col.end(), v.begin(), v.end());
    }
    cols.push_back(std::move(col));
  }
  int rows = (int)cols[0].size(), k = (int)basis.size();
  if (rows == 0) return basis;
  Matrix M(rows, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  Matrix N = nullspace(M);
  std::vector<Mor> out;
  for (int c = 0; c < N.c; ++c) {
    Mor f = E.zero(X, Y);
    for (int j = 0; j < k; ++j)
      if (!N(j, c).is_zero()) f = E.add(f, E.scale(N(j, c), basis[j]));
    out.push_back(f);
  }
  return out;
}

bool same_shape(const Engine& E, const Obj& X, const Obj& Y) {
  std::map<int, int> a, b;
  for (int k : E.roots(X)) a[k] = E.ntrees(X, k);
  for (int k : E.roots(Y)) b[k] = E.ntrees(Y, k);
  for (auto it = a.begin(); it != a.end();) it = it->second ? std::next(it) : a.erase(it);
  for (auto it = b.begin(); it != b.end();) it = it->second ? std::next(it) : b.erase(it);
  return a == b;
}

std::optional<Mor> invertible_combination(const Engine& E, const std::vector<Mor>& basis) {
  if (basis.empty()) return std::nullopt;
  for (const auto& b : basis)
    if (E.inverse(b)) return b;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int t = 0; t < 40; ++t) {
    Mor f = E.zero(basis[0].dom, basis[0].cod);
    for (const auto& b : basis) f = E.add(f, E.scale(CycNum(coef(rng)), b));
    if (E.inverse(f)) return f;
  }
  return std::nullopt;
}

FrobAlgebra need_normalized(const Engine& E, const FrobAlgebra& A) { return A.normalized ? A : normalize(E, A); }

}  // namespace

ValidationReport check_left(const Engine& E, const FrobAlgebra& A, const LeftModule& M) {
  if (M.rho.dom != E.tensor(A.obj, M.obj) || M.rho.cod != M.obj) throw TypeMismatch("left action has the wrong type");
  ValidationReport rep;
  CheckResult as{"left-associativity", true, ""}, un{"left-unit", true, ""};
  Mor iM = E.id(M.obj);
  expect_eq(E, as, E.compose(M.rho, E.tensor(A.m, iM)), E.compose(M.rho, E.tensor(E.id(A.obj), M.rho)),
            "rho(m x id) != rho(id x rho)");
  expect_eq(E, un, E.compose(M.rho, E.tensor(A.eta, iM)), iM, "rho(eta x id) != id");
  rep.checks = {as, un};
  return rep;
}

ValidationReport check_right(const Engine& E, const FrobAlgebra& A, const RightModule& M) {
  if (M.rho.dom != E.tensor(M.obj, A.obj) || M.rho.cod != M.obj) throw TypeMismatch("right action has the wrong type");
  ValidationReport rep;
  CheckResult as{"right-associativity", true, ""}, un{"right-unit", true, ""};
  Mor iM = E.id(M.obj);
  expect_eq(E, as, E.compose(M.rho, E.tensor(iM, A.m)), E.compose(M.rho, E.tensor(M.rho, E.id(A.obj))),
            "rho(id x m) != rho(rho x id)");
  expect_eq(E, un, E.compose(M.rho, E.tensor(iM, A.eta)), iM, "rho(id x eta) != id");
  rep.checks = {as, un};
  return rep;
}

ValidationReport check_bimodule(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M) {
  ValidationReport rep = check_left(E, A, {M.name, M.obj, M.left});
  for (const auto& c : check_right(E, B, {M.name, M.obj, M.right}).checks) rep.checks.push_back(c);
  CheckResult cm{"commuting-actions", true, ""};
  expect_eq(E, cm, E.compose(M.left, E.tensor(E.id(A.obj), M.right)),
            E.compose(M.right, E.tensor(M.left, E.id(B.obj))), "left and right actions do not commute");
  rep.checks.push_back(cm);
  return rep;
}

std::vector<Mor> hom_left(const Engine& E, const FrobAlgebra& A, const LeftModule& M, const LeftModule& N) {
  Mor iA = E.id(A.obj);
  return solve_linear(E, M.obj, N.obj, [&](const Mor& f) {
    return std::vector<Mor>{E.sub(E.compose(N.rho, E.tensor(iA, f)), E.compose(f, M.rho))};
  });
}

std::vector<Mor> hom_right(const Engine& E, const FrobAlgebra& A, const RightModule& M, const RightModule& N) {
  Mor iA = E.id(A.obj);
  return solve_linear(E, M.obj, N.obj, [&](const Mor& f) {
    return std::vector<Mor>{E.sub(E.compose(N.rho, E.tensor(f, iA)), E.compose(f, M.rho))};
  });
}

std::vector<Mor> hom_bimod(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M,
                           const Bimodule& N) {
  Mor iA = E.id(A.obj), iB = E.id(B.obj);
  return solve_linear(E, M.obj, N.obj, [&](const Mor& f) {
    return std::vector<Mor>{E.sub(E.compose(N.left, E.tensor(iA, f)), E.compose(f, M.left)),
                            E.sub(E.compose(N.right, E.tensor(f, iB)), E.compose(f, M.right))};
  });
}

int hom_bimod_dim_averaged(const Engine& E, const FrobAlgebra& Ain, const FrobAlgebra& Bin, const Bimodule& M,
                           const Bimodule& N) {
  FrobAlgebra A = need_normalized(E, Ain), B = need_normalized(E, Bin);
  Mor ca = E.compose(A.Delta, A.eta), cb = E.compose(B.Delta, B.eta);
  Mor iA = E.id(A.obj), iB = E.id(B.obj), iM = E.id(M.obj);
  auto avg = [&](const Mor& f) {
    Mor l = E.compose(N.left, E.compose(E.tensor(iA, E.compose(f, M.left)), E.tensor(ca, iM)));
    return E.compose(N.right, E.compose(E.tensor(E.compose(l, M.right), iB), E.tensor(iM, cb)));
  };
  auto basis = E.hom_basis(M.obj, N.obj);
  if (basis.empty()) return 0;
  int n = (int)basis.size();
  Matrix P(n, n);
  for (int j = 0; j < n; ++j) {
    auto v = E.coords(avg(basis[j]));
    for (int i = 0; i < n; ++i) P(i, j) = v[i];
  }
  if (P * P != P) throw InternalInconsistency("averaging map is not idempotent");
  return rank(P);
}

std::optional<Mor> bimod_iso(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M,
                             const Bimodule& N) {
  if (!same_shape(E, M.obj, N.obj)) return std::nullopt;
  return invertible_combination(E, hom_bimod(E, A, B, M, N));
}

std::optional<Mor> left_iso(const Engine& E, const FrobAlgebra& A, const LeftModule& M, const LeftModule& N) {
  if (!same_shape(E, M.obj, N.obj)) return std::nullopt;
  return invertible_combination(E, hom_left(E, A, M, N));
}

LeftModule regular_left(const FrobAlgebra& A) { return {A.name, A.obj, A.m}; }

Bimodule regular_bimodule(const FrobAlgebra& A) { return {A.name, A.obj, A.m, A.m}; }

LeftModule induced_left(const Engine& E, const FrobAlgebra& A, const Obj& V) {
  return {"A" + V.str(E.cat()), E.tensor(A.obj, V), E.tensor(A.m, E.id(V))};
}

Bimodule alpha_induction(const Engine& E, const FrobAlgebra& A, const Obj& V, int sign) {
  Bimodule M;
  M.name = std::string(sign > 0 ? "alpha+(" : "alpha-(") + V.str(E.cat()) + ")";
  M.obj = E.tensor(A.obj, V);
  Mor iA = E.id(A.obj), iV = E.id(V);
  M.left = E.tensor(A.m, iV);
  Mor c = sign > 0 ? E.braid(V, A.obj, 1) : E.braid(A.obj, V, -1);
  M.right = E.compose(E.tensor(A.m, iV), E.tensor(iA, c));
  return M;
}

Bimodule sandwich(const Engine& E, const FrobAlgebra& A, int i, int j) {
  const auto& C = E.cat();
  Obj U = Obj::labels({i}), V = Obj::labels({j});
  Bimodule M;
  M.name = C.labels[i] + "(x)+A(x)-" + C.labels[j];
  M.obj = E.tensor(E.tensor(U, A.obj), V);
  Mor iU = E.id(U), iV = E.id(V), iA = E.id(A.obj);
  Mor mid = E.tensor(E.tensor(iU, A.m), iV);
  M.left = E.compose(mid, E.tensor(E.tensor(E.braid(U, A.obj, -1), iA), iV));
  M.right = E.compose(mid, E.tensor(E.tensor(iU, iA), E.braid(A.obj, V, -1)));
  return M;
}

RightModule dual_right_module(const Engine& E, const FrobAlgebra& A, const LeftModule& M) {
  RightModule R;
  R.name = M.name + "^v";
  R.obj = E.dual(M.obj);
  Mor rv = E.compose(E.dual_of_tensor_iso(A.obj, M.obj), E.dual(M.rho));  // M* -> M* A*
  R.rho = E.compose(E.tensor(E.id(R.obj), E.d(A.obj)), E.tensor(rv, E.id(A.obj)));
  return R;
}

LeftModule sigma_twist(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const LeftModule& M) {
  LeftModule T;
  T.name = M.name + "^sigma";
  T.obj = E.dual(M.obj);
  Mor rc = E.compose(M.rho, E.braid(M.obj, A.obj, 1));                             // M A -> M
  Mor pre = E.compose(E.dual_of_tensor_iso(M.obj, A.obj), E.predual(rc));           // M* -> A* M*
  T.rho = E.compose(E.tensor(E.dt(A.obj), E.id(T.obj)), E.tensor(sigma, pre));
  return T;
}

Bimodule twisted_bimodule(const Engine& E, const FrobAlgebra& A, const Mor& phi, const Mor& psi) {
  for (const Mor* f : {&phi, &psi}) {
    if (f->dom != A.obj || f->cod != A.obj) throw InvalidTwist("twist must be an endomorphism of A");
    if (E.compose(*f, A.m) != E.compose(A.m, E.tensor(*f, *f)) || E.compose(*f, A.eta) != A.eta ||
        !E.inverse(*f))
      throw InvalidTwist("twist is not an algebra automorphism");
  }
  Bimodule M;
  M.name = "twisted(" + A.name + ")";
  M.obj = A.obj;
  M.left = E.compose(A.m, E.tensor(phi, E.id(A.obj)));
  M.right = E.compose(A.m, E.tensor(E.id(A.obj), psi));
  return M;
}

TensorOverA tensor_over_A(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& Bin, const FrobAlgebra& C,
                          const Bimodule& M, const Bimodule& N) {
  (void)C;
  if (M.right.dom != E.tensor(M.obj, Bin.obj) || N.left.dom != E.tensor(Bin.obj, N.obj))
    throw TypeMismatch("middle algebras do not match");
  FrobAlgebra B = need_normalized(E, Bin);
  Mor iM = E.id(M.obj), iN = E.id(N.obj);
  Mor P = E.compose(E.tensor(M.right, N.left), E.tensor(E.tensor(iM, E.compose(B.Delta, B.eta)), iN));
  Retract r = split_idempotent(E, P);
  TensorOverA T;
  T.e = r.iota;
  T.r = r.pi;
  T.obj.name = M.name + "(x)_A" + N.name;
  T.obj.obj = r.obj;
  T.obj.left = E.compose(r.pi, E.compose(E.tensor(M.left, iN), E.tensor(E.id(A.obj), r.iota)));
  T.obj.right = E.compose(r.pi, E.compose(E.tensor(iM, N.right), E.tensor(r.iota, E.id(C.obj))));
  return T;
}

IntMatrix z_matrix_sandwich(const Engine& E, const FrobAlgebra& A) {
  int n = E.cat().size();
  Bimodule R = regular_bimodule(A);
  IntMatrix z(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z[i][j] = (int)hom_bimod(E, A, A, sandwich(E, A, i, j), R).size();
  return z;
}

IntMatrix z_matrix_alpha(const Engine& E, const FrobAlgebra& A) {
  const auto& C = E.cat();
  int n = C.size();
  std::vector<Bimodule> plus, minus;
  for (int i = 0; i < n; ++i) {
    plus.push_back(alpha_induction(E, A, Obj::labels({i}), 1));
    minus.push_back(alpha_induction(E, A, Obj::labels({C.dual[i]}), -1));
  }
  IntMatrix z(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z[i][j] = (int)hom_bimod(E, A, A, plus[i], minus[j]).size();
  return z;
}

IntMatrix z_matrix(const Engine& E, const FrobAlgebra& A) {
  IntMatrix s = z_matrix_sandwich(E, A), a = z_matrix_alpha(E, A);
  if (s != a) throw InternalInconsistency("the two expressions for Z(" + A.name + ") disagree");
  return s;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<int>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix int_transpose(const IntMatrix& a) {
  IntMatrix t(a.empty() ? 0 : a[0].size(), std::vector<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool is_permutation_matrix(const IntMatrix& z) {
  size_t n = z.size();
  std::vector<int> colsum(n);
  for (const auto& row : z) {
    int s = 0;
    for (size_t j = 0; j < n; ++j) {
      if (row[j] != 0 && row[j] != 1) return false;
      s += row[j];
      colsum[j] += row[j];
    }
    if (s != 1) return false;
  }
  for (int c : colsum)
    if (c != 1) return false;
  return true;
}

bool is_azumaya(const Engine& E, const FrobAlgebra& A) { return is_permutation_matrix(z_matrix(E, A)); }

nlohmann::json int_matrix_json(const IntMatrix& z) { return nlohmann::json(z); }

bool is_simple(const Engine& E, const FrobAlgebra& A) {
  return hom_bimod(E, A, A, regular_bimodule(A), regular_bimodule(A)).size() == 1;
}

// ---- decomposition into simple bimodules ----

namespace {

// Idempotents decomposing e inside the algebra spanned by `basis` (endomorphisms).
struct Decomposer {
  const Engine& E;
  std::vector<Mor> basis;
  bool complete = true;

  Matrix coord_matrix(const std::vector<Mor>& fs) const {
    int rows = fs.empty() ? 0 : (int)E.coords(fs[0]).size();
    Matrix M(rows, (int)fs.size());
    for (size_t j = 0; j < fs.size(); ++j) {
      auto v = E.coords(fs[j]);
      for (int i = 0; i < rows; ++i) M(i, (int)j) = v[i];
    }
    return M;
  }

  std::vector<Mor> corner_basis(const Mor& e) const {
    std::vector<Mor> out;
    for (const auto& b : basis) {
      Mor x = E.compose(e, E.compose(b, e));
      std::vector<Mor> trial = out;
      trial.push_back(x);
      if (rank(coord_matrix(trial)) == (int)trial.size()) out.push_back(x);
    }
    return out;
  }

  // splits e by the spectral idempotent q(x)/q(r) of a simple root r of the
  // minimal polynomial mu = (t - r) q of x in the corner algebra
  std::optional<std::vector<Mor>> split_by(const Mor& e, const Mor& x) const {
    std::vector<Mor> pw{e};
    std::vector<CycNum> mu;
    for (int deg = 1; deg <= 16; ++deg) {
      pw.push_back(E.compose(x, pw.back()));
      Matrix N = nullspace(coord_matrix(pw));
      if (N.c == 0) continue;
      CycNum lead = N(deg, 0);
      for (int k = 0; k <= deg; ++k) mu.push_back(N(k, 0) / lead);
      break;
    }
    if (mu.size() < 3) return std::nullopt;
    for (const auto& r : poly_roots(mu).roots) {
      // synthetic division
      int d = (int)mu.size() - 1;
      std::vector<CycNum> q(d);
      CycNum carry = 0;
      for (int k = d; k >= 1; --k) {
        carry = mu[k] + carry * r;
        q[k - 1] = carry;
      }
      CycNum qr = 0;
      for (int k = d - 1; k >= 0; --k) qr = qr * r + q[k];
      if (qr.is_zero()) continue;
      Mor er = E.zero(e.dom, e.cod);
      for (int k = 0; k < d; ++k) er = E.add(er, E.scale(q[k] / qr, pw[k]));
      return std::vector<Mor>{er, E.sub(e, er)};
    }
    return std::nullopt;
  }

  void run(const Mor& e, std::vector<Mor>& prim) {
    auto cb = corner_basis(e);
    if (cb.size() <= 1) {
      prim.push_back(e);
      return;
    }
    std::vector<Mor> tries = cb;
    for (size_t i = 0; i < cb.size(); ++i)
      for (size_t j = i + 1; j < cb.size(); ++j) tries.push_back(E.add(cb[i], E.scale(CycNum(2), cb[j])));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 8; ++t) {
      Mor x = E.zero(e.dom, e.cod);
      for (const auto& b : cb) x = E.add(x, E.scale(CycNum(coef(rng)), b));
      tries.push_back(x);
    }
    for (const auto& x : tries) {
      auto parts = split_by(e, x);
      if (!parts) continue;
      for (const auto& p : *parts) run(p, prim);
      return;
    }
    complete = false;
    prim.push_back(e);
  }
};

Bimodule restrict_to(const Engine& E, const FrobAlgebra& A, const Bimodule& M, const Mor& p, const std::string& nm) {
  Retract r = split_idempotent(E, p);
  Bimodule S;
  S.name = nm;
  S.obj = r.obj;
  S.left = E.compose(r.pi, E.compose(M.left, E.tensor(E.id(A.obj), r.iota)));
  S.right = E.compose(r.pi, E.compose(M.right, E.tensor(r.iota, E.id(A.obj))));
  return S;
}

}  // namespace

std::vector<Mor> primitive_idempotents(const Engine& E, const std::vector<Mor>& basis, const Mor& unit,
                                       bool* complete) {
  Decomposer D{E, basis};
  std::vector<Mor> prim;
  D.run(unit, prim);
  if (complete) *complete = D.complete;
  return prim;
}

std::vector<LeftModule> simple_left_modules(const Engine& E, const FrobAlgebra& A, bool* complete) {
  const auto& C = E.cat();
  std::vector<LeftModule> out;
  bool all = true;
  for (int k = 0; k < C.size(); ++k) {
    LeftModule F = induced_left(E, A, Obj::labels({k}));
    bool ok = true;
    auto prim = primitive_idempotents(E, hom_left(E, A, F, F), E.id(F.obj), &ok);
    all = all && ok;
    for (const auto& p : prim) {
      Retract r = split_idempotent(E, p);
      LeftModule S{"M" + std::to_string(out.size()), r.obj,
                   E.compose(r.pi, E.compose(F.rho, E.tensor(E.id(A.obj), r.iota)))};
      bool seen = false;
      for (const auto& T : out)
        if (same_shape(E, S.obj, T.obj) && !hom_left(E, A, S, T).empty()) seen = true;
      if (!seen) out.push_back(S);
    }
  }
  if (complete) *complete = all;
  return out;
}

int PicardResult::find(const Engine& E, const FrobAlgebra& A, const Bimodule& Y) const {
  for (size_t i = 0; i < elems.size(); ++i)
    if (bimod_iso(E, A, A, elems[i], Y)) return (int)i;
  return -1;
}

PicardResult picard_bimodules(const Engine& E, const FrobAlgebra& Ain, long budget) {
  const auto& C = E.cat();
  FrobAlgebra A = need_normalized(E, Ain);
  PicardResult res;
  // every simple bimodule is a summand of some free bimodule A U_k A
  std::vector<Bimodule> simples;
  bool decomposed = true;
  for (int k = 0; k < C.size(); ++k) {
    Obj U = Obj::labels({k});
    Bimodule F;
    F.name = "A" + C.labels[k] + "A";
    F.obj = E.tensor(E.tensor(A.obj, U), A.obj);
    F.left = E.tensor(A.m, E.id(E.tensor(U, A.obj)));
    F.right = E.tensor(E.id(E.tensor(A.obj, U)), A.m);
    bool ok = true;
    auto prim = primitive_idempotents(E, hom_bimod(E, A, A, F, F), E.id(F.obj), &ok);
    decomposed = decomposed && ok;
    for (const auto& p : prim) {
      Bimodule S = restrict_to(E, A, F, p, "Y" + std::to_string(simples.size()));
      bool seen = false;
      for (const auto& T : simples)
        if (same_shape(E, S.obj, T.obj) && !hom_bimod(E, A, A, S, T).empty()) seen = true;
      if (!seen) simples.push_back(S);
    }
  }
  res.simple_count = (int)simples.size();
  if (is_modular(C)) {
    int s = 0;
    for (const auto& row : z_matrix(E, A))
      for (int v : row) s += v * v;
    res.simple_bound = s;
  }
  Bimodule R = regular_bimodule(A);
  R.name = "A";
  res.elems.push_back(R);
  long work = 0;
  bool budget_hit = false;
  for (const auto& Y : simples) {
    if (bimod_iso(E, A, A, Y, R)) continue;
    bool inv = false;
    for (const auto& Z : simples) {
      if (++work > budget * budget) {
        budget_hit = true;
        break;
      }
      auto T = tensor_over_A(E, A, A, A, Y, Z);
      if (bimod_iso(E, A, A, T.obj, R)) {
        inv = true;
        break;
      }
    }
    if (inv) res.elems.push_back(Y);
  }
  int n = (int)res.elems.size();
  res.mul.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto T = tensor_over_A(E, A, A, A, res.elems[i], res.elems[j]);
      res.mul[i][j] = res.find(E, A, T.obj);
      if (res.mul[i][j] < 0) throw InternalInconsistency("invertible bimodules not closed under tensor product");
    }
  res.complete = decomposed && !budget_hit && res.simple_bound == res.simple_count;
  if (!decomposed) res.note = "some idempotents could not be split exactly";
  else if (budget_hit) res.note = "budget exhausted";
  else if (res.simple_bound < 0) res.note = "no counting certificate on a non-modular fixture";
  else if (res.simple_bound != res.simple_count) res.note = "simple count does not match sum of Z_ij^2";
  return res;
}

}  // namespace tcalg
