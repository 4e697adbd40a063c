#include "tcalg/solver.hpp"

#include <algorithm>
#include <set>

#include "tcalg/errors.hpp"
#include "tcalg/linalg.hpp"

namespace tcalg {

namespace {

void trim(std::vector<CycNum>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// synthetic division by (x - r); returns the quotient
std::vector<CycNum> deflate(const std::vector<CycNum>& c, const CycNum& r) {
  int d = (int)c.size() - 1;
  std::vector<CycNum> q(d);
  CycNum acc;
  for (int k = d; k >= 1; --k) {
    acc = c[k] + acc * r;
    q[k - 1] = acc;
  }
  return q;
}

CycNum eval(const std::vector<CycNum>& c, const CycNum& x) {
  CycNum acc;
  for (int k = (int)c.size() - 1; k >= 0; --k) acc = acc * x + c[k];
  return acc;
}

long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

// candidate roots for higher degree: q * zeta_M^k with q from the rational
// root test on the constant and leading terms (when those are rational)
std::vector<CycNum> candidates(const std::vector<CycNum>& c) {
  std::vector<CycNum> out;
  long M = 2;
  for (const auto& x : c) M = lcm_l(M, x.order());
  if (M > 240) M = 240;
  std::vector<mpq_class> qs{1};
  const CycNum& c0 = c.front();
  const CycNum& cn = c.back();
  if (c0.is_rational() && cn.is_rational()) {
    mpz_class p = abs(c0.rational().get_num()) * cn.rational().get_den();
    mpz_class q = abs(cn.rational().get_num()) * c0.rational().get_den();
    std::vector<long> dp, dq;
    for (long i = 1; i <= 64; ++i) {
      if (p % i == 0) dp.push_back(i);
      if (q % i == 0) dq.push_back(i);
    }
    for (long a : dp)
      for (long b : dq) qs.push_back(mpq_class(a, b));
  }
  for (auto& q : qs) q.canonicalize();
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  for (const auto& q : qs)
    for (long k = 0; k < M; ++k) out.push_back(CycNum(q) * CycNum::zeta(M, k));
  return out;
}

}  // namespace

PolyRoots poly_roots(std::vector<CycNum> c) {
  PolyRoots res;
  trim(c);
  if (c.empty()) throw InternalInconsistency("roots of the zero polynomial");
  // factor out x^k
  size_t lead0 = 0;
  while (lead0 < c.size() && c[lead0].is_zero()) ++lead0;
  if (lead0 > 0) {
    res.roots.push_back(CycNum(0));
    c.erase(c.begin(), c.begin() + lead0);
  }
  auto add = [&](const CycNum& r) {
    if (std::find(res.roots.begin(), res.roots.end(), r) == res.roots.end()) res.roots.push_back(r);
  };
  while (c.size() > 3) {
    bool found = false;
    // pure binomial x^n = -c0/cn
    bool binom = true;
    for (size_t k = 1; k + 1 < c.size(); ++k)
      if (!c[k].is_zero()) binom = false;
    if (binom) {
      auto rs = cyc_roots(-c[0] / c.back(), (long)c.size() - 1);
      if (rs) {
        for (const auto& r : *rs) add(r);
        return res;
      }
    }
    for (const auto& r : candidates(c)) {
      if (eval(c, r).is_zero()) {
        add(r);
        c = deflate(c, r);
        found = true;
        break;
      }
    }
    if (!found) {
      res.complete = false;
      return res;
    }
  }
  if (c.size() == 2) {
    add(-c[0] / c[1]);
  } else if (c.size() == 3) {
    CycNum disc = c[1] * c[1] - CycNum(4) * c[2] * c[0];
    auto s = cyc_sqrt(disc);
    if (!s) {
      res.complete = false;
      return res;
    }
    CycNum two_a = CycNum(2) * c[2];
    add((-c[1] + *s) / two_a);
    add((-c[1] - *s) / two_a);
  }
  return res;
}

namespace {

using Assign = std::vector<std::optional<CycNum>>;

Poly substitute(const Poly& p, const Assign& a) {
  std::map<std::vector<std::pair<int, int>>, CycNum> acc;
  for (const auto& t : p) {
    CycNum c = t.coef;
    std::vector<std::pair<int, int>> mono;
    for (auto [v, e] : t.mono) {
      if (a[v]) {
        c *= a[v]->pow(e);
      } else {
        mono.push_back({v, e});
      }
    }
    if (c.is_zero()) continue;
    acc[mono] += c;
  }
  Poly out;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.push_back({c, m});
  return out;
}

std::set<int> vars_of(const Poly& p) {
  std::set<int> s;
  for (const auto& t : p)
    for (auto [v, e] : t.mono) s.insert(v);
  return s;
}

struct Search {
  int n;
  const std::vector<Poly>* eqs;
  std::vector<char> nonzero;
  long nodes = 0, max_nodes;
  SolveResult* out;

  void incomplete(const std::string& why) {
    out->exhaustive = false;
    if (out->note.empty()) out->note = why;
  }

  void rec(const Assign& a) {
    if (++nodes > max_nodes) {
      incomplete("node budget exhausted");
      return;
    }
    std::vector<Poly> cur;
    for (const auto& e : *eqs) {
      Poly s = substitute(e, a);
      if (s.empty()) continue;
      std::set<int> vs = vars_of(s);
      if (vs.empty()) return;  // nonzero constant
      // a single monomial in nonzero variables cannot vanish
      if (s.size() == 1) {
        bool all_nz = true;
        for (int v : vs) all_nz = all_nz && nonzero[v];
        if (all_nz) return;
      }
      cur.push_back(std::move(s));
    }
    int first_free = -1;
    for (int v = 0; v < n; ++v)
      if (!a[v]) {
        first_free = v;
        break;
      }
    if (cur.empty()) {
      if (first_free >= 0) {
        incomplete("unconstrained variable after gauge fixing");
        return;
      }
      std::vector<CycNum> sol;
      for (const auto& x : a) sol.push_back(*x);
      out->solutions.push_back(sol);
      return;
    }
    // univariate equation with the fewest terms
    const Poly* best = nullptr;
    int bv = -1;
    for (const auto& p : cur) {
      auto vs = vars_of(p);
      if (vs.size() == 1 && (!best || p.size() < best->size())) {
        best = &p;
        bv = *vs.begin();
      }
    }
    if (best) {
      int deg = 0;
      for (const auto& t : *best)
        if (!t.mono.empty()) deg = std::max(deg, t.mono[0].second);
      std::vector<CycNum> c(deg + 1);
      for (const auto& t : *best) c[t.mono.empty() ? 0 : t.mono[0].second] += t.coef;
      auto pr = poly_roots(c);
      if (!pr.complete) incomplete("root outside the cyclotomic closure");
      for (const auto& r : pr.roots) {
        if (nonzero[bv] && r.is_zero()) continue;
        Assign b = a;
        b[bv] = r;
        rec(b);
      }
      return;
    }
    // binomial fallback over the unassigned variables
    std::vector<int> free;
    for (int v = 0; v < n; ++v)
      if (!a[v]) free.push_back(v);
    IMat A;
    std::vector<CycNum> rhs;
    for (const auto& p : cur) {
      if (p.size() != 2) {
        incomplete("non-binomial system without univariate equation");
        return;
      }
      std::vector<long> row(free.size(), 0);
      for (int s = 0; s < 2; ++s)
        for (auto [v, e] : p[s].mono) {
          if (!nonzero[v]) {
            incomplete("binomial step on a variable of unknown support");
            return;
          }
          auto idx = std::find(free.begin(), free.end(), v) - free.begin();
          row[idx] += s == 0 ? e : -e;
        }
      A.push_back(row);
      rhs.push_back(-p[1].coef / p[0].coef);
    }
    auto ts = solve_torus(A, (int)free.size(), rhs, true);
    if (!ts.consistent) return;
    if (ts.free_dims > 0) {
      incomplete("positive-dimensional solution family");
      return;
    }
    if (!ts.roots_in_field) incomplete("torus roots outside the cyclotomic closure");
    for (const auto& pt : ts.points) {
      Assign b = a;
      for (size_t i = 0; i < free.size(); ++i) b[free[i]] = pt[i];
      rec(b);
    }
  }
};

int rank_of(const IMat& rows, int cols) {
  if (rows.empty()) return 0;
  return smith_normal_form(rows, (int)rows.size(), cols).rank;
}

}  // namespace

SolveResult solve_system(int n, const std::vector<Poly>& eqs, const SolveOptions& opt) {
  SolveResult out;
  std::vector<char> forced(n, 0);
  for (int v : opt.nonzero) forced[v] = 1;
  std::vector<int> open;
  for (int v = 0; v < n; ++v)
    if (!forced[v]) open.push_back(v);
  if (open.size() > 20) throw NotSupported("too many variables of undetermined support");
  int gcols = opt.gauge.empty() ? 0 : (int)opt.gauge[0].size();
  for (long mask = 0; mask < (1L << open.size()); ++mask) {
    Assign a(n);
    std::vector<char> nz = forced;
    for (size_t i = 0; i < open.size(); ++i) {
      if (mask >> i & 1)
        nz[open[i]] = 1;
      else
        a[open[i]] = CycNum(0);
    }
    // gauge fixing: a maximal independent set of characters among nonzero
    // variables, preferring a saturated set so no roots are needed to reach it
    IMat fixed;
    std::vector<int> order;
    for (int v = 0; v < n && gcols > 0; ++v)
      if (nz[v]) order.push_back(v);
    auto weight = [&](int v) {
      long w = 0;
      for (long x : opt.gauge[v]) w += std::labs(x);
      return w;
    };
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return weight(x) < weight(y); });
    for (int pass = 0; pass < 2; ++pass)
      for (int v : order) {
        if (a[v]) continue;
        IMat trial = fixed;
        trial.push_back(opt.gauge[v]);
        Smith sm = smith_normal_form(trial, (int)trial.size(), gcols);
        if (sm.rank <= (int)fixed.size()) continue;
        bool saturated = true;
        for (int i = 0; i < sm.rank; ++i) saturated = saturated && std::labs(sm.d[i]) == 1;
        if (pass == 0 && !saturated) continue;
        fixed = trial;
        a[v] = CycNum(1);
      }
    Search s{n, &eqs, nz, 0, opt.max_nodes, &out};
    s.rec(a);
  }
  return out;
}

bool gauge_equivalent(const IMat& gauge, const std::vector<CycNum>& x, const std::vector<CycNum>& y) {
  if (x.size() != y.size()) return false;
  IMat A;
  std::vector<CycNum> r;
  for (size_t v = 0; v < x.size(); ++v) {
    if (x[v].is_zero() != y[v].is_zero()) return false;
    if (x[v].is_zero()) continue;
    if (gauge.empty()) {
      if (x[v] != y[v]) return false;
      continue;
    }
    A.push_back(gauge[v]);
    r.push_back(y[v] / x[v]);
  }
  if (A.empty()) return true;
  return solve_torus(A, (int)A[0].size(), r, false).consistent;
}

}  // namespace tcalg
