#pragma once
// Algebras, Frobenius structures, normalization, opposite and product
// algebras, Schellekens algebras, centers, enumeration.
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcalg/category.hpp"
#include "tcalg/mor.hpp"

namespace tcalg {

struct FrobAlgebra {
  std::string name;
  Obj obj;
  Mor m, eta, Delta, eps;
  CycNum gamma, gamma_prime;  // eps o eta = gamma, m o Delta = gamma' id
  bool special = false, symmetric = false, simple = false, normalized = false;
  // carrier labels when obj is a sum of distinct simple labels (part i = labels[i])
  std::vector<int> labels;
};

// Image of an idempotent, split by exact rank factorization per root:
// P = iota o pi, pi o iota = id, obj a sum of simple labels.
struct Retract {
  Obj obj;
  Mor iota, pi;
};
Retract split_idempotent(const Engine& E, const Mor& P);

// Obj whose parts are the given labels; parts are single letters or the unit.
Obj label_sum(const std::vector<int>& labels);
// Basis vertex a b -> c (or c -> a b) placed between parts of sums.
Mor vertex_between(const Engine& E, const Obj& X, int px, const Obj& Y, int py);

ValidationReport check_algebra(const Engine& E, const Obj& A, const Mor& m, const Mor& eta);

struct FrobReport {
  ValidationReport report;
  std::optional<CycNum> gamma, gamma_prime;
  bool phi_invertible = false, symmetric = false, special = false;
  bool ok() const { return report.ok(); }
};
FrobReport check_frobenius(const Engine& E, const FrobAlgebra& A);

// eps_nat = d_A o (id (x) m) o (bt_A (x) id); Phi_nat its induced map A -> A*.
Mor epsilon_natural(const Engine& E, const Obj& A, const Mor& m);
Mor phi_of(const Engine& E, const Obj& A, const Mor& m, const Mor& eps);
Mor phi_prime_of(const Engine& E, const Obj& A, const Mor& m, const Mor& eps);
std::optional<FrobAlgebra> frobeniusability(const Engine& E, const Obj& A, const Mor& m, const Mor& eta,
                                            const CycNum& xi);
FrobAlgebra normalize(const Engine& E, const FrobAlgebra& A);
FrobAlgebra trivial_algebra(const Engine& E);
FrobAlgebra opposite(const Engine& E, const FrobAlgebra& A);
FrobAlgebra product(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B);
// Block-diagonal direct sum; never simple.
FrobAlgebra direct_sum(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B);

// Finite group formed by invertible labels under fusion.
struct LabelGroup {
  std::vector<int> elems;            // labels, elems[0] = unit
  std::vector<std::vector<int>> mul;  // indices into elems
  int index(int label) const;
};
LabelGroup label_group(const CategorySpec& C, const std::vector<int>& labels);  // NotAGroup

struct GroupCochain {
  LabelGroup group;
  int degree = 2;
  std::map<std::vector<int>, CycNum> values;  // keyed by element indices; missing = 1
  CycNum at(const std::vector<int>& idx) const;
};
GroupCochain coboundary(const GroupCochain& x);  // degree 1 -> 2 or 2 -> 3
GroupCochain trivial_cochain(const LabelGroup& G, int degree);
// psi(g,h,k) = F^{ghk}_{ghk}[gh, hk]
GroupCochain associator_cochain(const CategorySpec& C, const LabelGroup& G);
bool cochains_equal(const GroupCochain& a, const GroupCochain& b);

std::optional<FrobAlgebra> schellekens(const Engine& E, const std::vector<int>& G, const GroupCochain& omega);

struct Centers {
  Retract left, right;
  Mor Pl, Pr;
  std::string pl_choice, pr_choice;  // which crossing sense was selected
};
Centers centers(const Engine& E, const FrobAlgebra& A);

bool is_simple(const Engine& E, const FrobAlgebra& A);

struct EnumResult {
  std::vector<FrobAlgebra> algebras;
  bool exhaustive = true;
  std::string note;
  int algebra_solutions = 0;  // gauge classes of unital associative algebras
};
// All normalized ssFa structures on the sum of the given labels (distinct, containing the unit).
EnumResult enumerate_frobenius(const Engine& E, const std::vector<int>& labels, long budget = 200000);

// structure constants of a label-carrier algebra
nlohmann::json algebra_to_json(const Engine& E, const FrobAlgebra& A);
// Inverse of algebra_to_json on label carriers (unit first). Normalized when
// special; DegenerateAlgebra with a witness when the data is not a Frobenius algebra.
FrobAlgebra algebra_from_json(const Engine& E, const nlohmann::json& j);
CycNum structure_constant(const Engine& E, const FrobAlgebra& A, int a, int b, int c);
std::string carrier_name(const CategorySpec& C, const std::vector<int>& labels);

}  // namespace tcalg
