#pragma once
// Modules and bimodules over Frobenius algebras, intertwiner spaces, tensor
// product over an algebra, alpha-induction, Z(A), Azumaya test, Picard group.
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcalg/frobenius.hpp"

namespace tcalg {

struct LeftModule {
  std::string name;
  Obj obj;
  Mor rho;  // A M -> M
};

struct RightModule {
  std::string name;
  Obj obj;
  Mor rho;  // M A -> M
};

// A-B-bimodule
struct Bimodule {
  std::string name;
  Obj obj;
  Mor left;   // A M -> M
  Mor right;  // M B -> M
};

ValidationReport check_left(const Engine& E, const FrobAlgebra& A, const LeftModule& M);
ValidationReport check_right(const Engine& E, const FrobAlgebra& A, const RightModule& M);
ValidationReport check_bimodule(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M);

// Exact bases of intertwiner spaces, by solving the linear intertwining equations.
std::vector<Mor> hom_left(const Engine& E, const FrobAlgebra& A, const LeftModule& M, const LeftModule& N);
std::vector<Mor> hom_right(const Engine& E, const FrobAlgebra& A, const RightModule& M, const RightModule& N);
std::vector<Mor> hom_bimod(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M,
                           const Bimodule& N);
// Same dimension via the rank of the averaging idempotent (needs m o Delta = id).
int hom_bimod_dim_averaged(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M,
                           const Bimodule& N);
// An invertible intertwiner M -> N, if one exists.
std::optional<Mor> bimod_iso(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const Bimodule& M,
                             const Bimodule& N);
std::optional<Mor> left_iso(const Engine& E, const FrobAlgebra& A, const LeftModule& M, const LeftModule& N);

LeftModule regular_left(const FrobAlgebra& A);
Bimodule regular_bimodule(const FrobAlgebra& A);
// Free module A V with action m (x) id.
LeftModule induced_left(const Engine& E, const FrobAlgebra& A, const Obj& V);

Bimodule alpha_induction(const Engine& E, const FrobAlgebra& A, const Obj& V, int sign);
Bimodule sandwich(const Engine& E, const FrobAlgebra& A, int i, int j);
RightModule dual_right_module(const Engine& E, const FrobAlgebra& A, const LeftModule& M);
// M^sigma on the dual carrier; sigma a reversion of A.
LeftModule sigma_twist(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const LeftModule& M);
// (A, m(phi x id), m(id x psi)); InvalidTwist unless phi, psi are algebra automorphisms.
Bimodule twisted_bimodule(const Engine& E, const FrobAlgebra& A, const Mor& phi, const Mor& psi);

struct TensorOverA {
  Bimodule obj;
  Mor e, r;  // e: M (x)_B N -> M N, r: M N -> M (x)_B N, r o e = id
};
TensorOverA tensor_over_A(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, const FrobAlgebra& C,
                          const Bimodule& M, const Bimodule& N);

using IntMatrix = std::vector<std::vector<int>>;
IntMatrix z_matrix_sandwich(const Engine& E, const FrobAlgebra& A);
IntMatrix z_matrix_alpha(const Engine& E, const FrobAlgebra& A);
// Both expressions; InternalInconsistency if they disagree.
IntMatrix z_matrix(const Engine& E, const FrobAlgebra& A);
IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_transpose(const IntMatrix& a);
bool is_permutation_matrix(const IntMatrix& z);
bool is_azumaya(const Engine& E, const FrobAlgebra& A);
nlohmann::json int_matrix_json(const IntMatrix& z);

// Primitive orthogonal idempotents summing to `unit` in the algebra spanned by
// `basis` (endomorphisms closed under composition). complete is cleared when
// some corner could not be split exactly.
std::vector<Mor> primitive_idempotents(const Engine& E, const std::vector<Mor>& basis, const Mor& unit,
                                       bool* complete);
// Isomorphism classes of simple left modules, from summands of A U_k.
std::vector<LeftModule> simple_left_modules(const Engine& E, const FrobAlgebra& A, bool* complete);

struct PicardResult {
  std::vector<Bimodule> elems;        // elems[0] = A
  std::vector<std::vector<int>> mul;  // via tensor over A
  int simple_count = 0;               // simple bimodules found
  int simple_bound = -1;              // sum of Z_ij^2 on modular fixtures, else -1
  bool complete = false;
  std::string note;
  int find(const Engine& E, const FrobAlgebra& A, const Bimodule& Y) const;  // -1 if absent
};
PicardResult picard_bimodules(const Engine& E, const FrobAlgebra& A, long budget = 64);

}  // namespace tcalg
