#pragma once
// Automorphisms, inner automorphisms, the map to invertible bimodules,
// reversions (Jandl algebras) and their equivalence relation.
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcalg/modules.hpp"

namespace tcalg {

// A_o = Hom(1, A) with the product a*b = m(a x b).
struct UnitAlgebra {
  std::vector<Mor> basis;
  std::vector<std::vector<std::vector<CycNum>>> star;  // basis_i * basis_j = sum_k star[i][j][k] basis_k
  std::vector<CycNum> eta;                              // coordinates of the unit
  std::vector<int> central;  // indices of basis vectors spanning C_o when it is coordinate-aligned
  int center_dim = 0;        // dim C_o = dim {g : P_l g = g}
};
UnitAlgebra unit_algebra(const Engine& E, const FrobAlgebra& A);
Mor element(const Engine& E, const UnitAlgebra& U, const std::vector<CycNum>& coords);
std::vector<CycNum> element_coords(const Engine& E, const UnitAlgebra& U, const Mor& a);
Mor star(const Engine& E, const FrobAlgebra& A, const Mor& a, const Mor& b);
std::optional<Mor> star_inverse(const Engine& E, const FrobAlgebra& A, const Mor& a);
bool is_central(const Engine& E, const FrobAlgebra& A, const Mor& a);  // P_l a = a

// Finite set of invertible test elements: coordinates in {0, 1, -1, 2}.
std::vector<Mor> alpha_cells(const Engine& E, const FrobAlgebra& A);

Mor inn(const Engine& E, const FrobAlgebra& A, const Mor& alpha);  // NotInvertible

struct AlgAut {
  Mor phi;
  std::vector<CycNum> lambda;  // per carrier part
};
ValidationReport check_automorphism(const Engine& E, const FrobAlgebra& A, const Mor& phi);

struct AutGroup {
  std::vector<AlgAut> elems;          // elems[0] = id
  std::vector<std::vector<int>> mul;  // composition phi_i o phi_j
  bool exhaustive = true;
  std::string note;
};
// Automorphisms of an algebra whose carrier has distinct simple parts.
AutGroup aut_group(const Engine& E, const FrobAlgebra& A);

struct InnGroup {
  std::vector<int> inner;   // indices into AutGroup::elems
  std::vector<int> cosets;  // one representative per coset of Inn in Aut
};
InnGroup inn_group(const Engine& E, const FrobAlgebra& A, const AutGroup& G);

// [_id A_psi] as an index into the Picard table; -1 when not found.
int pic_map(const Engine& E, const FrobAlgebra& A, const PicardResult& P, const Mor& psi);
bool twisted_is_trivial(const Engine& E, const FrobAlgebra& A, const Mor& psi);  // _id A_psi ~ A

struct Reversion {
  Mor sigma;
  std::vector<CycNum> values;  // per carrier part
};
ValidationReport is_jandl(const Engine& E, const FrobAlgebra& A, const Mor& sigma);
struct RevResult {
  std::vector<Reversion> list;
  bool exhaustive = true;
  std::string note;
};
RevResult find_reversions(const Engine& E, const FrobAlgebra& A);

// Frobenius isomorphism phi: A -> B with phi sigma = tau phi.
std::optional<Mor> jandl_iso(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const FrobAlgebra& B,
                             const Mor& tau);

// nu in {+1,-1} when g in Hom_A(M, M^sigma) and g = nu g^v delta_M.
std::optional<int> check_g(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const LeftModule& M,
                           const Mor& g);
// g = Phi o sigma^{-1} for M = A.
Mor reflexive_g(const Engine& E, const FrobAlgebra& A, const Mor& sigma);

struct InterpAlgebra {
  FrobAlgebra B;  // M^v (x)_A M, normalized
  Mor e, r;
  Mor sigma;      // sigma_g
  int nu = 0;
};
// M^v (x)_A M with its algebra structure (normalized when special); sigma and nu unset.
InterpAlgebra internal_end(const Engine& E, const FrobAlgebra& A, const LeftModule& M);
// CheckGFailed unless check_g succeeds.
InterpAlgebra sigma_g(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const LeftModule& M, const Mor& g);

// For haploid A, B: B is isomorphic to End_A(M) for a simple A-module M.
// complete is cleared when the simple modules of A were not all found.
bool morita_equivalent(const Engine& E, const FrobAlgebra& A, const FrobAlgebra& B, bool* complete);

struct JandlWitness {
  LeftModule M;
  Mor g;
  int nu = 0;
  Mor iso;  // (M^v (x)_A M, sigma_g) -> (B, tau)
};
struct EquivResult {
  std::optional<JandlWitness> witness;
  bool exhausted = true;  // every candidate within budget was tried
};
EquivResult jandl_equivalent(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const FrobAlgebra& B,
                             const Mor& tau, long budget = 16);

std::optional<int> epsilon_sign(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const Mor& alpha);

struct ComposeCheck {
  bool jandl = false;           // sigma o omega is a reversion
  bool oso = false;             // omega sigma omega = sigma
  std::optional<bool> rev1;     // for omega = inn_alpha: inn_{sigma alpha} = inn_alpha
  std::optional<bool> dichotomy;   // for omega = inn_alpha, A simple: sigma alpha = +-alpha
  bool consistent() const;
};
ComposeCheck compose_reversion_check(const Engine& E, const FrobAlgebra& A, const Mor& sigma, const Mor& omega,
                                     const Mor* alpha = nullptr);

}  // namespace tcalg
