#pragma once
// Exact solving of small polynomial systems with Laurent-monomial structure:
// zero/nonzero case split, gauge fixing by torus characters, univariate
// propagation, and a binomial (torus) fallback.
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tcalg/cyc.hpp"
#include "tcalg/intmat.hpp"

namespace tcalg {

// Roots of sum_k c[k] x^k in the cyclotomic closure. complete == false when
// some factor could not be resolved.
struct PolyRoots {
  std::vector<CycNum> roots;  // distinct
  bool complete = true;
};
PolyRoots poly_roots(std::vector<CycNum> c);

struct Term {
  CycNum coef;
  std::vector<std::pair<int, int>> mono;  // (variable, exponent), exponents > 0
};
using Poly = std::vector<Term>;

struct SolveOptions {
  // variables that must be nonzero in every solution
  std::vector<int> nonzero;
  // gauge character of each variable (row per variable); may be empty
  IMat gauge;
  long max_nodes = 200000;
};

struct SolveResult {
  std::vector<std::vector<CycNum>> solutions;  // one representative per case, not deduplicated
  bool exhaustive = true;
  std::string note;
};

SolveResult solve_system(int nvars, const std::vector<Poly>& eqs, const SolveOptions& opt);

// x ~ y iff same support and y_v / x_v = chi_v(lambda) for some lambda.
bool gauge_equivalent(const IMat& gauge, const std::vector<CycNum>& x, const std::vector<CycNum>& y);

}  // namespace tcalg
