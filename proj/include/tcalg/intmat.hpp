#pragma once
// Integer Smith normal form and monomial (torus) equation systems.
#include <vector>

#include "tcalg/cyc.hpp"

namespace tcalg {

using IMat = std::vector<std::vector<long>>;

// U * A * V = diag(d) with U, V unimodular; d[i] > 0 for i < rank.
struct Smith {
  IMat U, V;
  std::vector<long> d;
  int rank = 0;
};
Smith smith_normal_form(const IMat& A, int rows, int cols);

// Solutions x in (C^x)^n of prod_j x_j^{A[i][j]} = r[i].
struct TorusSolution {
  bool consistent = false;
  int free_dims = 0;                          // dimension of the solution torus
  long count = 0;                             // number of points when free_dims == 0
  bool roots_in_field = true;                 // all needed roots found in the cyclotomic closure
  std::vector<std::vector<CycNum>> points;    // filled when enumerate && free_dims == 0
};
TorusSolution solve_torus(const IMat& A, int n, const std::vector<CycNum>& r, bool enumerate);

}  // namespace tcalg
