#pragma once
// Dense exact matrices over CycNum.
#include <optional>
#include <vector>

#include "tcalg/cyc.hpp"

namespace tcalg {

struct Matrix {
  int r = 0, c = 0;
  std::vector<CycNum> a;

  Matrix() = default;
  Matrix(int rows, int cols) : r(rows), c(cols), a((size_t)rows * cols) {}
  static Matrix identity(int n);
  static Matrix scalar(int n, const CycNum& s);

  CycNum& operator()(int i, int j) { return a[(size_t)i * c + j]; }
  const CycNum& operator()(int i, int j) const { return a[(size_t)i * c + j]; }
  bool is_zero() const;
  bool is_identity() const;
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r == y.r && x.c == y.c && x.a == y.a;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix operator*(const CycNum& s, const Matrix& x);
Matrix transpose(const Matrix& x);
Matrix kron(const Matrix& x, const Matrix& y);

// Reduced row echelon form; pivots receives the pivot columns.
Matrix rref(const Matrix& x, std::vector<int>* pivots = nullptr);
int rank(const Matrix& x);
// Columns form a basis of the right kernel.
Matrix nullspace(const Matrix& x);
std::optional<Matrix> inverse(const Matrix& x);
// Some X with A X = B, if one exists.
std::optional<Matrix> solve(const Matrix& A, const Matrix& B);
CycNum det(const Matrix& x);

// P = I * Pi with I the pivot columns of P (first nonzero columns in order)
// and Pi the nonzero rows of rref(P).
struct RankFactor {
  Matrix iota, pi;
};
RankFactor rank_factor(const Matrix& P);

}  // namespace tcalg
