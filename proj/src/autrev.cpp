#include "tcalg/autrev.hpp"

#include <set>

#include "tcalg/errors.hpp"
#include "tcalg/intmat.hpp"
#include "tcalg/linalg.hpp"

namespace tcalg {

namespace {

void expect_eq(CheckResult& r, const Mor& f, const Mor& g, const std::string& what) {
  if (r.ok && f != g) {
    r.ok = false;
    r.witness = what;
  }
}

// Carrier parts are single labels (or the unit), pairwise distinct.
bool label_carrier(const Obj& X) {
  std::set<Word> seen;
  for (const auto& w : X.parts) {
    if (w.size() > 1 || !seen.insert(w).second) return false;
  }
  return true;
}

int part_label(const Obj& X, int p) { return X.parts[p].empty() ? 0 : X.parts[p][0]; }

// coefficient of m on parts (i, j) -> k; nullopt when the vertex space is empty
std::optional<CycNum> mcoef(const Engine& E, const Obj& X, const Mor& m, int i, int j, int k) {
  int n = (int)X.parts.size();
  Obj XX = E.tensor(X, X);
  Mor c = E.compose(E.project(X, k), E.compose(m, E.inject(XX, i * n + j)));
  auto v = E.coords(c);
  if (v.empty()) return std::nullopt;
  return v[0];
}

Mor diagonal(const Engine& E, const Obj& X, const std::vector<CycNum>& lam) {
  Mor f = E.zero(X, X);
  for (size_t p = 0; p < X.parts.size(); ++p)
    f = E.add(f, E.scale(lam[p], E.compose(E.inject(X, (int)p), E.project(X, (int)p))));
  return f;
}

FrobAlgebra need_normalized(const Engine& E, const FrobAlgebra& A) { return A.normalized ? A : normalize(E, A); }

// Solve prod lambda^row = rhs over the parts; a single point is
// chosen when the solution set is positive-dimensional and pin_free is set.
struct TorusPoints {
  std::vector<std::vector<CycNum>> points;  // per part, unit part = 1
  bool exhaustive = true;
  bool consistent = true;
  std::string note;
};

TorusPoints diagonal_solutions(const Obj& X, const std::vector<std::array<int, 3>>& triples,
                               const std::vector<CycNum>& rhs, bool pin_free) {
  int n = (int)X.parts.size();
  std::vector<int> var(n, -1);
  int nv = 0;
  for (int p = 0; p < n; ++p) var[p] = nv++;
  TorusPoints out;
  IMat A;
  std::vector<CycNum> r;
  for (size_t t = 0; t < triples.size(); ++t) {
    std::vector<long> row(nv, 0);
    auto [i, j, k] = triples[t];
    if (var[i] >= 0) row[var[i]] += 1;
    if (var[j] >= 0) row[var[j]] += 1;
    if (var[k] >= 0) row[var[k]] -= 1;
    bool zero = true;
    for (long x : row) zero = zero && x == 0;
    if (zero) {
      if (!rhs[t].is_one()) {
        out.consistent = false;
        return out;
      }
      continue;
    }
    A.push_back(row);
    r.push_back(rhs[t]);
  }
  TorusSolution ts = solve_torus(A, nv, r, true);
  for (int v = 0; ts.consistent && ts.free_dims > 0 && pin_free && v < nv; ++v) {
    IMat A2 = A;
    std::vector<long> row(nv, 0);
    row[v] = 1;
    A2.push_back(row);
    auto r2 = r;
    r2.push_back(CycNum(1));
    TorusSolution t2 = solve_torus(A2, nv, r2, true);
    if (t2.consistent && t2.free_dims < ts.free_dims) {
      A = A2;
      r = r2;
      ts = t2;
    }
  }
  if (!ts.consistent) {
    out.consistent = false;
    return out;
  }
  if (ts.free_dims > 0) {
    out.exhaustive = false;
    out.note = "positive-dimensional family of diagonal solutions";
    return out;
  }
  if (!ts.roots_in_field) {
    out.exhaustive = false;
    out.note = "torus roots outside the cyclotomic closure";
  }
  for (const auto& pt : ts.points) {
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace

// ---- A_o ----

UnitAlgebra unit_algebra(const Engine& E, const FrobAlgebra& A) {
  UnitAlgebra U;
  U.basis = E.hom_basis(Obj::unit(), A.obj);
  int n = (int)U.basis.size();
  U.star.assign(n, std::vector<std::vector<CycNum>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) U.star[i][j] = E.coords(star(E, A, U.basis[i], U.basis[j]));
  U.eta = E.coords(A.eta);
  Centers c = centers(E, A);
  Matrix P(n, n);
  for (int j = 0; j < n; ++j) {
    auto v = E.coords(E.compose(c.Pl, U.basis[j]));
    for (int i = 0; i < n; ++i) P(i, j) = v[i] - (i == j ? CycNum(1) : CycNum(0));
  }
  U.center_dim = n - rank(P);
  for (int j = 0; j < n; ++j)
    if (E.compose(c.Pl, U.basis[j]) == U.basis[j]) U.central.push_back(j);
  return U;
}

Mor element(const Engine& E, const UnitAlgebra& U, const std::vector<CycNum>& coords) {
  Mor f = E.zero(Obj::unit(), U.basis.at(0).cod);
  for (size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) f = E.add(f, E.scale(coords[i], U.basis[i]));
  return f;
}

std::vector<CycNum> element_coords(const Engine& E, const UnitAlgebra& U, const Mor& a) {
  (void)U;
  return E.coords(a);
}

Mor star(const Engine& E, const FrobAlgebra& A, const Mor& a, const Mor& b) {
  return E.compose(A.m, E.tensor(a, b));
}

std::optional<Mor> star_inverse(const Engine& E, const FrobAlgebra& A, const Mor& a) {
  auto basis = E.hom_basis(Obj::unit(), A.obj);
  int n = (int)basis.size();
  if (n == 0) return std::nullopt;
  // left and right multiplication by a, stacked: [L; R] b = [eta; eta]
  Matrix M(2 * n, n), rhs(2 * n, 1);
  auto eta = E.coords(A.eta);
  for (int j = 0; j < n; ++j) {
    auto l = E.coords(star(E, A, a, basis[j]));
    auto r = E.coords(star(E, A, basis[j], a));
    for (int i = 0; i < n; ++i) {
      M(i, j) = l[i];
      M(n + i, j) = r[i];
    }
  }
  for (int i = 0; i < n; ++i) rhs(i, 0) = rhs(n + i, 0) = eta[i];
  auto x = solve(M, rhs);
  if (!x) return std::nullopt;
  Mor b = E.zero(Obj::unit(), A.obj);
  for (int j = 0; j < n; ++j) b = E.add(b, E.scale((*x)(j, 0), basis[j]));
  return b;
}

bool is_central(const Engine& E, const FrobAlgebra& A, const Mor& a) {
  return E.compose(centers(E, A).Pl, a) == a;
}

std::vector<Mor> alpha_cells(const Engine& E, const FrobAlgebra& A) {
  auto basis = E.hom_basis(Obj::unit(), A.obj);
  int n = (int)basis.size();
  static const long vals[4] = {0, 1, -1, 2};
  std::vector<Mor> out;
  if (n > 4) {
    // only multiples of single basis vectors
    for (const auto& b : basis)
      for (long v : {1L, -1L, 2L}) {
        Mor a = E.scale(CycNum(v), b);
        if (star_inverse(E, A, a)) out.push_back(a);
      }
    return out;
  }
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (long code = 1; code < total; ++code) {
    Mor a = E.zero(Obj::unit(), A.obj);
    long c = code;
    for (int i = 0; i < n; ++i, c /= 4)
      if (c % 4) a = E.add(a, E.scale(CycNum(vals[c % 4]), basis[i]));
    if (star_inverse(E, A, a)) out.push_back(a);
  }
  return out;
}

Mor inn(const Engine& E, const FrobAlgebra& A, const Mor& alpha) {
  auto ai = star_inverse(E, A, alpha);
  if (!ai) throw NotInvertible("element of Hom(1,A) has no two-sided inverse");
  return E.compose(A.m, E.compose(E.tensor(A.m, *ai), E.tensor(alpha, E.id(A.obj))));
}

// ---- automorphisms ----

ValidationReport check_automorphism(const Engine& E, const FrobAlgebra& A, const Mor& phi) {
  ValidationReport rep;
  CheckResult hom{"multiplicative", true, ""}, un{"unital", true, ""}, co{"coalgebra", true, ""},
      inv{"invertible", true, ""};
  expect_eq(hom, E.compose(phi, A.m), E.compose(A.m, E.tensor(phi, phi)), "phi m != m (phi x phi)");
  expect_eq(un, E.compose(phi, A.eta), A.eta, "phi eta != eta");
  expect_eq(co, E.compose(E.tensor(phi, phi), A.Delta), E.compose(A.Delta, phi), "(phi x phi) Delta != Delta phi");
  expect_eq(co, E.compose(A.eps, phi), A.eps, "eps phi != eps");
  if (!E.inverse(phi)) {
    inv.ok = false;
    inv.witness = "phi is singular";
  }
  rep.checks = {hom, un, co, inv};
  return rep;
}

AutGroup aut_group(const Engine& E, const FrobAlgebra& A) {
  if (!label_carrier(A.obj)) throw NotSupported("automorphisms need a carrier of distinct simple labels");
  AutGroup G;
  int n = (int)A.obj.parts.size();
  std::vector<std::array<int, 3>> tri;
  std::vector<CycNum> rhs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto c = mcoef(E, A.obj, A.m, i, j, k);
        if (c && !c->is_zero()) {
          tri.push_back({i, j, k});
          rhs.push_back(CycNum(1));
        }
      }
  TorusPoints tp = diagonal_solutions(A.obj, tri, rhs, false);
  G.exhaustive = tp.exhaustive;
  G.note = tp.note;
  // identity first
  std::stable_sort(tp.points.begin(), tp.points.end(), [](const auto& x, const auto& y) {
    auto one = [](const std::vector<CycNum>& v) {
      for (const auto& c : v)
        if (!c.is_one()) return false;
      return true;
    };
    return one(x) && !one(y);
  });
  for (const auto& lam : tp.points) {
    Mor phi = diagonal(E, A.obj, lam);
    if (!check_automorphism(E, A, phi).ok()) throw InternalInconsistency("torus solution is not an automorphism");
    G.elems.push_back({phi, lam});
  }
  int m = (int)G.elems.size();
  G.mul.assign(m, std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mor c = E.compose(G.elems[i].phi, G.elems[j].phi);
      for (int k = 0; k < m; ++k)
        if (G.elems[k].phi == c) G.mul[i][j] = k;
      if (G.mul[i][j] < 0 && G.exhaustive) throw InternalInconsistency("automorphisms not closed under composition");
    }
  return G;
}

InnGroup inn_group(const Engine& E, const FrobAlgebra& A, const AutGroup& G) {
  InnGroup I;
  std::vector<Mor> inner;
  for (const auto& a : alpha_cells(E, A)) {
    Mor f = inn(E, A, a);
    bool dup = false;
    for (const auto& g : inner) dup = dup || g == f;
    if (!dup) inner.push_back(f);
  }
  for (size_t k = 0; k < G.elems.size(); ++k)
    for (const auto& f : inner)
      if (G.elems[k].phi == f) {
        I.inner.push_back((int)k);
        break;
      }
  std::vector<char> covered(G.elems.size(), 0);
  for (size_t k = 0; k < G.elems.size(); ++k) {
    if (covered[k]) continue;
    I.cosets.push_back((int)k);
    for (int h : I.inner) {
      int c = G.mul[k][h];
      if (c >= 0) covered[c] = 1;
    }
  }
  return I;
}

bool twisted_is_trivial(const Engine& E, const FrobAlgebra& A, const Mor& psi) {
  Bimodule T = twisted_bimodule(E, A, E.id(A.obj), psi);
  return bimod_iso(E, A, A, T, regular_bimodule(A)).has_value();
}

int pic_map(const Engine& E, const FrobAlgebra& A, const PicardResult& P, const Mor& psi) {
  return P.find(E, A, twisted_bimodule(E, A, E.id(A.obj), psi));
}

// ---- reversions ----

ValidationReport is_jandl(const Engine& E, const FrobAlgebra& A, const Mor& sigma) {
  ValidationReport rep;
  CheckResult un{"unit", true, ""}, anti{"anti-multiplicative", true, ""}, sq{"square-is-twist", true, ""};
  if (sigma.dom != A.obj || sigma.cod != A.obj) throw TypeMismatch("reversion must be an endomorphism of A");
  expect_eq(un, E.compose(sigma, A.eta), A.eta, "sigma eta != eta");
  expect_eq(anti, E.compose(sigma, A.m), E.compose(A.m, E.compose(E.braid(A.obj, A.obj, 1), E.tensor(sigma, sigma))),
            "sigma m != m c (sigma x sigma)");
  expect_eq(sq, E.compose(sigma, sigma), E.twist(A.obj, 1), "sigma sigma != theta_A");
  rep.checks = {un, anti, sq};
  return rep;
}

RevResult find_reversions(const Engine& E, const FrobAlgebra& A) {
  if (!label_carrier(A.obj)) throw NotSupported("reversions need a carrier of distinct simple labels");
  RevResult R;
  int n = (int)A.obj.parts.size();
  std::vector<std::vector<CycNum>> choices(n);
  for (int p = 0; p < n; ++p) {
    if (A.obj.parts[p].empty()) {
      choices[p] = {CycNum(1)};
      continue;
    }
    Obj P{{A.obj.parts[p]}};
    CycNum th = E.twist(P, 1).blocks.begin()->second(0, 0);
    auto s = cyc_sqrt(th);
    if (!s) {
      R.exhaustive = false;
      R.note = "square root of a twist eigenvalue not found";
      return R;
    }
    choices[p] = {*s, -*s};
  }
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<CycNum> vals(n);
    for (int p = 0; p < n; ++p) vals[p] = choices[p][idx[p]];
    Mor s = diagonal(E, A.obj, vals);
    if (is_jandl(E, A, s).ok()) R.list.push_back({s, vals});
    int p = n - 1;
    while (p >= 0 && ++idx[p] == choices[p].size()) idx[p--] = 0;
    if (p < 0) break;
  }
  return R;
}

std::optional<Mor> jandl_iso(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const FrobAlgebra& B,
                             const Mor& tau) {
  if (!label_carrier(A.obj) || !label_carrier(B.obj))
    throw NotSupported("isomorphism search needs carriers of distinct simple labels");
  int n = (int)A.obj.parts.size();
  if ((int)B.obj.parts.size() != n) return std::nullopt;
  std::vector<int> perm(n, -1);  // part of A -> part of B
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (A.obj.parts[p] == B.obj.parts[q]) perm[p] = q;
  for (int q : perm)
    if (q < 0) return std::nullopt;
  std::vector<std::array<int, 3>> tri;
  std::vector<CycNum> rhs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto a = mcoef(E, A.obj, A.m, i, j, k);
        auto b = mcoef(E, B.obj, B.m, perm[i], perm[j], perm[k]);
        bool za = !a || a->is_zero(), zb = !b || b->is_zero();
        if (za != zb) return std::nullopt;
        if (za) continue;
        tri.push_back({i, j, k});
        rhs.push_back(*a / *b);  // lambda_i lambda_j m_B = lambda_k m_A
      }
  TorusPoints tp = diagonal_solutions(A.obj, tri, rhs, true);
  if (!tp.consistent) return std::nullopt;
  for (const auto& lam : tp.points) {
    // phi = sum_p lam_p inject_B(perm p) project_A(p)
    Mor phi = E.zero(A.obj, B.obj);
    for (int p = 0; p < n; ++p)
      phi = E.add(phi, E.scale(lam[p], E.compose(E.inject(B.obj, perm[p]), E.project(A.obj, p))));
    if (E.compose(phi, A.m) != E.compose(B.m, E.tensor(phi, phi)) || E.compose(phi, A.eta) != B.eta) continue;
    if (E.compose(B.eps, phi) != A.eps || E.compose(E.tensor(phi, phi), A.Delta) != E.compose(B.Delta, phi))
      continue;
    if (E.compose(phi, sigma) != E.compose(tau, phi)) continue;
    return phi;
  }
  return std::nullopt;
}

// ---- equivalence ----

std::optional<int> check_g(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const LeftModule& M,
                           const Mor& g) {
  LeftModule T = sigma_twist(E, A, sigma, M);
  if (g.dom != M.obj || g.cod != T.obj) return std::nullopt;
  if (!E.inverse(g)) return std::nullopt;
  if (E.compose(T.rho, E.tensor(E.id(A.obj), g)) != E.compose(g, M.rho)) return std::nullopt;
  Mor h = E.compose(E.dual(g), E.delta(M.obj));
  if (g == h) return 1;
  if (g == E.scale(CycNum(-1), h)) return -1;
  return std::nullopt;
}

Mor reflexive_g(const Engine& E, const FrobAlgebra& A, const Mor& sigma) {
  auto si = E.inverse(sigma);
  if (!si) throw NotInvertible("reversion is singular");
  return E.compose(phi_of(E, A.obj, A.m, A.eps), *si);
}

InterpAlgebra internal_end(const Engine& E, const FrobAlgebra& Ain, const LeftModule& M) {
  FrobAlgebra A = need_normalized(E, Ain);
  RightModule R = dual_right_module(E, A, M);
  Mor iR = E.id(R.obj), iM = E.id(M.obj);
  Mor P = E.compose(E.tensor(R.rho, M.rho), E.tensor(E.tensor(iR, E.compose(A.Delta, A.eta)), iM));
  Retract ret = split_idempotent(E, P);
  InterpAlgebra out;
  out.e = ret.iota;
  out.r = ret.pi;
  Mor mB = E.compose(ret.pi, E.compose(E.tensor(E.tensor(iR, E.dt(M.obj)), iM), E.tensor(ret.iota, ret.iota)));
  Mor etaB = E.compose(ret.pi, E.bt(M.obj));
  auto F = frobeniusability(E, ret.obj, mB, etaB, CycNum(1));
  if (!F) throw InternalInconsistency("M^v (x)_A M is not Frobenius");
  out.B = F->special ? normalize(E, *F) : *F;
  out.B.name = "End_A(" + M.name + ")";
  if (label_carrier(ret.obj))
    for (size_t p = 0; p < ret.obj.parts.size(); ++p) out.B.labels.push_back(part_label(ret.obj, (int)p));
  out.B.simple = is_simple(E, out.B);
  return out;
}

InterpAlgebra sigma_g(const Engine& E, const FrobAlgebra& Ain, const Mor& sigma, const LeftModule& M, const Mor& g) {
  FrobAlgebra A = need_normalized(E, Ain);
  auto nu = check_g(E, A, sigma, M, g);
  if (!nu) throw CheckGFailed("g is not an admissible isomorphism M -> M^sigma");
  InterpAlgebra out = internal_end(E, A, M);
  out.nu = *nu;
  RightModule R = dual_right_module(E, A, M);
  auto gi = E.inverse(g);
  Mor s = E.compose(E.tensor(g, *gi), E.compose(E.tensor(E.twist(M.obj, 1), E.id(R.obj)), E.braid(R.obj, M.obj, 1)));
  out.sigma = E.compose(out.r, E.compose(s, out.e));
  return out;
}

bool morita_equivalent(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, bool* complete) {
  bool comp = true;
  auto mods = simple_left_modules(E, A, &comp);
  if (complete) *complete = comp;
  Mor idB = E.id(B.obj);
  for (const auto& M : mods) {
    auto I = internal_end(E, A, M);
    if (!label_carrier(I.B.obj) || !label_carrier(B.obj)) continue;
    if (jandl_iso(E, I.B, E.id(I.B.obj), B, idB)) return true;
  }
  return false;
}

namespace {

// Invertible g in Hom_A(M, M^sigma) with g = nu g^v delta, searched in each
// eigenspace of the involution g -> g^v delta.
std::vector<std::pair<Mor, int>> admissible_gs(const Engine& E, const FrobAlgebra& A, const Mor& sigma,
                                               const LeftModule& M) {
  std::vector<std::pair<Mor, int>> out;
  LeftModule T = sigma_twist(E, A, sigma, M);
  auto H = hom_left(E, A, M, T);
  if (H.empty()) return out;
  Mor del = E.delta(M.obj);
  for (int nu : {1, -1}) {
    std::vector<Mor> eig;
    for (const auto& b : H) {
      Mor x = E.add(b, E.scale(CycNum(nu), E.compose(E.dual(b), del)));
      if (!x.is_zero()) eig.push_back(x);
    }
    if (eig.empty()) continue;
    std::optional<Mor> g;
    for (const auto& x : eig)
      if (!g && E.inverse(x)) g = x;
    for (size_t i = 0; !g && i < eig.size(); ++i)
      for (size_t j = i + 1; !g && j < eig.size(); ++j) {
        Mor x = E.add(eig[i], E.scale(CycNum(2), eig[j]));
        if (E.inverse(x)) g = x;
      }
    if (g && check_g(E, A, sigma, M, *g) == nu) out.push_back({*g, nu});
  }
  return out;
}

}  // namespace

EquivResult jandl_equivalent(const Engine& E, const FrobAlgebra& Ain, const Mor& sigma, const FrobAlgebra& B,
                             const Mor& tau, long budget) {
  FrobAlgebra A = need_normalized(E, Ain);
  EquivResult res;
  std::vector<LeftModule> mods{regular_left(A)};
  mods[0].name = "A";
  bool complete = true;
  for (auto& M : simple_left_modules(E, A, &complete)) mods.push_back(M);
  res.exhausted = complete;
  for (const auto& M : mods) {
    if ((long)M.obj.parts.size() > budget) {
      res.exhausted = false;
      continue;
    }
    std::vector<std::pair<Mor, int>> gs;
    if (M.name == "A") {
      Mor g = reflexive_g(E, A, sigma);
      if (auto nu = check_g(E, A, sigma, M, g)) gs.push_back({g, *nu});
    }
    for (auto& p : admissible_gs(E, A, sigma, M)) gs.push_back(p);
    for (const auto& [g, nu] : gs) {
      InterpAlgebra I = sigma_g(E, A, sigma, M, g);
      if (!label_carrier(I.B.obj)) continue;
      if (auto phi = jandl_iso(E, I.B, I.sigma, B, tau)) {
        res.witness = JandlWitness{M, g, nu, *phi};
        return res;
      }
    }
  }
  return res;
}

std::optional<int> epsilon_sign(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const Mor& alpha) {
  (void)A;
  Mor s = E.compose(sigma, alpha);
  if (s == alpha) return 1;
  if (s == E.scale(CycNum(-1), alpha)) return -1;
  return std::nullopt;
}

bool ComposeCheck::consistent() const {
  if (jandl != oso) return false;
  if (rev1 && *rev1 != jandl) return false;
  if (dichotomy && *dichotomy != jandl) return false;
  return true;
}

ComposeCheck compose_reversion_check(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const Mor& omega,
                                     const Mor* alpha) {
  ComposeCheck c;
  c.jandl = is_jandl(E, A, E.compose(sigma, omega)).ok();
  c.oso = E.compose(omega, E.compose(sigma, omega)) == sigma;
  if (alpha) {
    c.rev1 = inn(E, A, E.compose(sigma, *alpha)) == inn(E, A, *alpha);
    if (is_simple(E, A)) c.dichotomy = epsilon_sign(E, A, sigma, *alpha).has_value();
  }
  return c;
}

}  // namespace tcalg
