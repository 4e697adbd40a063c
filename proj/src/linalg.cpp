#include "tcalg/linalg.hpp"

#include "tcalg/errors.hpp"

namespace tcalg {

Matrix Matrix::identity(int n) { return scalar(n, CycNum(1)); }

Matrix Matrix::scalar(int n, const CycNum& s) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (r != c) return false;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if ((*this)(i, j) != CycNum(i == j ? 1 : 0)) return false;
  return true;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.c != y.r) throw TypeMismatch("matrix product shape mismatch");
  Matrix z(x.r, y.c);
  for (int i = 0; i < x.r; ++i)
    for (int k = 0; k < x.c; ++k) {
      const CycNum& u = x(i, k);
      if (u.is_zero()) continue;
      for (int j = 0; j < y.c; ++j) {
        const CycNum& v = y(k, j);
        if (v.is_zero()) continue;
        z(i, j) += u.is_one() ? v : u * v;
      }
    }
  return z;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  if (x.r != y.r || x.c != y.c) throw TypeMismatch("matrix sum shape mismatch");
  Matrix z = x;
  for (size_t i = 0; i < z.a.size(); ++i)
    if (!y.a[i].is_zero()) z.a[i] += y.a[i];
  return z;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  if (x.r != y.r || x.c != y.c) throw TypeMismatch("matrix difference shape mismatch");
  Matrix z = x;
  for (size_t i = 0; i < z.a.size(); ++i)
    if (!y.a[i].is_zero()) z.a[i] -= y.a[i];
  return z;
}

Matrix operator*(const CycNum& s, const Matrix& x) {
  Matrix z = x;
  if (s.is_one()) return z;
  for (auto& v : z.a)
    if (!v.is_zero()) v = s * v;
  return z;
}

Matrix transpose(const Matrix& x) {
  Matrix z(x.c, x.r);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) z(j, i) = x(i, j);
  return z;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix z(x.r * y.r, x.c * y.c);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) {
      const CycNum& u = x(i, j);
      if (u.is_zero()) continue;
      for (int k = 0; k < y.r; ++k)
        for (int l = 0; l < y.c; ++l)
          if (!y(k, l).is_zero()) z(i * y.r + k, j * y.c + l) = u * y(k, l);
    }
  return z;
}

Matrix rref(const Matrix& x, std::vector<int>* pivots) {
  Matrix m = x;
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < m.c && row < m.r; ++col) {
    int p = -1;
    for (int i = row; i < m.r; ++i)
      if (!m(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.c; ++j) std::swap(m(p, j), m(row, j));
    CycNum d = m(row, col).inv();
    for (int j = col; j < m.c; ++j)
      if (!m(row, j).is_zero()) m(row, j) *= d;
    for (int i = 0; i < m.r; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      CycNum f = m(i, col);
      for (int j = col; j < m.c; ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = piv;
  return m;
}

int rank(const Matrix& x) {
  std::vector<int> piv;
  rref(x, &piv);
  return (int)piv.size();
}

Matrix nullspace(const Matrix& x) {
  std::vector<int> piv;
  Matrix m = rref(x, &piv);
  std::vector<bool> is_piv(x.c, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int j = 0; j < x.c; ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix n(x.c, (int)free.size());
  for (size_t k = 0; k < free.size(); ++k) {
    int f = free[k];
    n(f, (int)k) = CycNum(1);
    for (size_t i = 0; i < piv.size(); ++i) n(piv[i], (int)k) = -m((int)i, f);
  }
  return n;
}

std::optional<Matrix> inverse(const Matrix& x) {
  if (x.r != x.c) return std::nullopt;
  int n = x.r;
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = x(i, j);
    aug(i, n + i) = CycNum(1);
  }
  std::vector<int> piv;
  Matrix m = rref(aug, &piv);
  if ((int)piv.size() < n || (n > 0 && piv[n - 1] >= n)) return std::nullopt;
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
  return inv;
}

std::optional<Matrix> solve(const Matrix& A, const Matrix& B) {
  if (A.r != B.r) throw TypeMismatch("solve shape mismatch");
  Matrix aug(A.r, A.c + B.c);
  for (int i = 0; i < A.r; ++i) {
    for (int j = 0; j < A.c; ++j) aug(i, j) = A(i, j);
    for (int j = 0; j < B.c; ++j) aug(i, A.c + j) = B(i, j);
  }
  std::vector<int> piv;
  Matrix m = rref(aug, &piv);
  Matrix X(A.c, B.c);
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= A.c) return std::nullopt;
    for (int j = 0; j < B.c; ++j) X(piv[i], j) = m((int)i, A.c + j);
  }
  return X;
}

CycNum det(const Matrix& x) {
  if (x.r != x.c) throw TypeMismatch("determinant of non-square matrix");
  Matrix m = x;
  int n = m.r;
  CycNum d(1);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (!m(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return CycNum(0);
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    CycNum inv = m(col, col).inv();
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      CycNum f = m(i, col) * inv;
      for (int j = col; j < n; ++j)
        if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
    }
  }
  return d;
}

RankFactor rank_factor(const Matrix& P) {
  std::vector<int> piv;
  Matrix R = rref(P, &piv);
  RankFactor f{Matrix(P.r, (int)piv.size()), Matrix((int)piv.size(), P.c)};
  for (size_t k = 0; k < piv.size(); ++k) {
    for (int i = 0; i < P.r; ++i) f.iota(i, (int)k) = P(i, piv[k]);
    for (int j = 0; j < P.c; ++j) f.pi((int)k, j) = R((int)k, j);
  }
  return f;
}

}  // namespace tcalg
