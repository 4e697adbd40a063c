#pragma once
// Skeletal ribbon category data: labels, fusion, F/R symbols, twists, duals,
// pivotal coefficients.
#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tcalg/cyc.hpp"
#include "tcalg/linalg.hpp"

namespace tcalg {

struct CategorySpec {
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> dual;
  std::vector<CycNum> twist, pivotal;
  std::map<std::array<int, 3>, int> fusion;         // (a,b,c) -> N_ab^c > 0
  std::map<std::array<int, 6>, CycNum> F;           // (a,b,c,d,e,f)
  std::map<std::array<int, 3>, CycNum> R;           // (a,b,c)

  int size() const { return (int)labels.size(); }
  int label(const std::string& s) const;  // throws MalformedSpec
  int N(int a, int b, int c) const;
  const std::vector<int>& fuse(int a, int b) const;  // c with N_ab^c > 0, ascending
  bool multiplicity_free() const { return mult_free_; }
  CycNum Fsym(int a, int b, int c, int d, int e, int f) const;
  CycNum Finv(int a, int b, int c, int d, int f, int e) const;
  CycNum Rsym(int a, int b, int c) const;
  // Basis index sets of the F-matrix (rows e, columns f).
  std::vector<int> Frows(int a, int b, int c, int d) const;
  std::vector<int> Fcols(int a, int b, int c, int d) const;
  // delta_a = 1 / F^{a a* a}_a[0,0]: coefficient of d_a in the fusion basis.
  const CycNum& delta(int a) const { return delta_[a]; }
  bool finv_ok() const { return finv_ok_; }

  // recompute derived tables; called by load and by mutators in tests
  void prepare();

 private:
  bool mult_free_ = true, finv_ok_ = true;
  std::vector<std::vector<int>> fuse_;
  std::vector<int> Ntab_;
  std::unordered_map<long, CycNum> Finv_;
  std::vector<CycNum> delta_;
  long key6(int a, int b, int c, int d, int e, int f) const;
};

CategorySpec load_category(const nlohmann::json& doc);
CategorySpec load_category_file(const std::string& path);
nlohmann::json save_category(const CategorySpec& C);

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string witness;
};
struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  const CheckResult* find(const std::string& name) const;
};

ValidationReport validate_category(const CategorySpec& C);

int dual_label(const CategorySpec& C, int i);
CycNum qdim(const CategorySpec& C, int i);
Matrix s_matrix(const CategorySpec& C);
bool is_modular(const CategorySpec& C);

}  // namespace tcalg
