#include "tcalg/intmat.hpp"

#include <cstdlib>

#include "tcalg/errors.hpp"

namespace tcalg {

namespace {
IMat ident(int n) {
  IMat I(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}
}  // namespace

Smith smith_normal_form(const IMat& A0, int m, int n) {
  IMat A = A0;
  if ((int)A.size() != m) throw TypeMismatch("smith: row count");
  Smith s;
  s.U = ident(m);
  s.V = ident(n);
  auto swap_rows = [&](int i, int j) {
    std::swap(A[i], A[j]);
    std::swap(s.U[i], s.U[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : s.V) std::swap(row[i], row[j]);
  };
  auto add_row = [&](int dst, int src, long f) {  // row dst += f * row src
    for (int k = 0; k < n; ++k) A[dst][k] += f * A[src][k];
    for (int k = 0; k < m; ++k) s.U[dst][k] += f * s.U[src][k];
  };
  auto add_col = [&](int dst, int src, long f) {
    for (int k = 0; k < m; ++k) A[k][dst] += f * A[k][src];
    for (int k = 0; k < n; ++k) s.V[k][dst] += f * s.V[k][src];
  };
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      int pi = -1, pj = -1;
      long best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (A[i][j] != 0 && (pi < 0 || std::labs(A[i][j]) < best)) {
            best = std::labs(A[i][j]);
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        long q = A[i][t] / A[t][t];
        if (q) add_row(i, t, -q);
        if (A[i][t]) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        long q = A[t][j] / A[t][t];
        if (q) add_col(j, t, -q);
        if (A[t][j]) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (A[i][j] % A[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(t, bad, 1);
    }
    if (A[t][t] < 0) {
      for (int k = 0; k < n; ++k) A[t][k] = -A[t][k];
      for (int k = 0; k < m; ++k) s.U[t][k] = -s.U[t][k];
    }
  }
done:
  s.rank = t;
  for (int i = 0; i < t; ++i) s.d.push_back(A[i][i]);
  return s;
}

TorusSolution solve_torus(const IMat& A, int n, const std::vector<CycNum>& r, bool enumerate) {
  int m = (int)A.size();
  TorusSolution out;
  Smith s = smith_normal_form(A, m, n);
  std::vector<CycNum> sv(m);
  for (int i = 0; i < m; ++i) {
    CycNum p(1);
    for (int j = 0; j < m; ++j)
      if (s.U[i][j] != 0) p *= r[j].pow(s.U[i][j]);
    sv[i] = p;
  }
  for (int i = s.rank; i < m; ++i)
    if (!sv[i].is_one()) return out;
  out.consistent = true;
  out.free_dims = n - s.rank;
  if (out.free_dims > 0) return out;
  out.count = 1;
  for (long d : s.d) out.count *= d;
  std::vector<std::vector<CycNum>> choices(n);
  for (int i = 0; i < n; ++i) {
    auto roots = cyc_roots(sv[i], s.d[i]);
    if (!roots) {
      out.roots_in_field = false;
      return out;
    }
    choices[i] = *roots;
  }
  if (!enumerate) return out;
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<CycNum> x(n, CycNum(1));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (s.V[j][i] != 0) x[j] *= choices[i][idx[i]].pow(s.V[j][i]);
    out.points.push_back(x);
    int k = 0;
    while (k < n && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace tcalg
