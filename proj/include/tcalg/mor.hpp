#pragma once
// Morphisms between direct sums of tensor words, stored as blocks over
// left-combed splitting-tree bases (one block per simple root).
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tcalg/category.hpp"
#include "tcalg/linalg.hpp"

namespace tcalg {

using Word = std::vector<int>;

// Ordered direct sum of tensor words. A word never contains the unit label;
// the empty word is the tensor unit. An Obj with no parts is the zero object.
struct Obj {
  std::vector<Word> parts;

  static Obj unit() { return Obj{{Word{}}}; }
  static Obj word(const Word& w);
  static Obj labels(const std::vector<int>& ls);
  bool is_unit() const { return parts.size() == 1 && parts[0].empty(); }
  std::string str(const CategorySpec& C) const;
  friend bool operator==(const Obj& a, const Obj& b) { return a.parts == b.parts; }
  friend bool operator!=(const Obj& a, const Obj& b) { return a.parts != b.parts; }
  friend bool operator<(const Obj& a, const Obj& b) { return a.parts < b.parts; }
};

struct Mor {
  Obj dom, cod;
  std::map<int, Matrix> blocks;  // root -> (cod trees) x (dom trees)
  friend bool operator==(const Mor& a, const Mor& b) {
    return a.dom == b.dom && a.cod == b.cod && a.blocks == b.blocks;
  }
  friend bool operator!=(const Mor& a, const Mor& b) { return !(a == b); }
  bool is_zero() const;
};

class Engine {
 public:
  explicit Engine(const CategorySpec& C);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;
  const CategorySpec& cat() const { return C_; }

  // bases
  using Chain = std::vector<int>;  // intermediate roots e_1..e_n of a left comb
  const std::vector<Chain>& trees(const Word& w, int k) const;
  int ntrees(const Obj& X, int k) const;
  int offset(const Obj& X, int part, int k) const;
  std::vector<int> roots(const Obj& X) const;
  int hom_dim(const Obj& X, const Obj& Y) const;

  // objects
  Obj tensor(const Obj& X, const Obj& Y) const;
  Obj dual(const Obj& X) const;

  // linear structure
  Mor id(const Obj& X) const;
  Mor zero(const Obj& X, const Obj& Y) const;
  Mor add(const Mor& f, const Mor& g) const;
  Mor sub(const Mor& f, const Mor& g) const;
  Mor scale(const CycNum& s, const Mor& f) const;
  Mor from_scalar(const CycNum& s) const { return scale(s, id(Obj::unit())); }
  CycNum scalar(const Mor& f) const;  // f : 1 -> 1
  std::vector<CycNum> coords(const Mor& f) const;
  Mor from_coords(const Obj& X, const Obj& Y, const std::vector<CycNum>& v) const;
  std::vector<Mor> hom_basis(const Obj& X, const Obj& Y) const;
  std::optional<Mor> inverse(const Mor& f) const;

  // monoidal structure
  Mor compose(const Mor& f, const Mor& g) const;  // f o g
  Mor tensor(const Mor& f, const Mor& g) const;
  Mor braid(const Obj& X, const Obj& Y, int sign = 1) const;  // c_{X,Y} or c^{-1}_{X,Y}
  Mor twist(const Obj& X, int sign = 1) const;
  Mor b(const Obj& X) const;   // 1 -> X X*
  Mor d(const Obj& X) const;   // X* X -> 1
  Mor bt(const Obj& X) const;  // 1 -> X* X
  Mor dt(const Obj& X) const;  // X X* -> 1
  Mor dual(const Mor& f) const;     // f^v built from b, d
  Mor predual(const Mor& f) const;  // left transpose built from bt, dt
  Mor delta(const Obj& U) const;    // U -> U** (= U)

  // direct sums
  Mor inject(const Obj& X, int part) const;
  Mor project(const Obj& X, int part) const;
  // iso X -> Y when Y.parts[perm[i]] == X.parts[i]
  Mor permute(const Obj& X, const Obj& Y, const std::vector<int>& perm) const;
  Mor dual_of_tensor_iso(const Obj& X, const Obj& Y) const;  // (X Y)* -> Y* X*

 private:
  struct WordTrees {
    std::map<int, std::vector<Chain>> by_root;
    std::map<int, std::map<Chain, int>> index;
  };
  struct ProdBasis {
    std::vector<std::array<int, 3>> ab_off;  // (a, b, column offset)
    int size = 0;
    Matrix T, Tinv;
  };
  const WordTrees& word_trees(const Word& w) const;
  int chain_index(const Word& w, int k, const Chain& c) const;
  const ProdBasis& prod_basis(const Obj& X, const Obj& Y, int k) const;
  std::vector<std::pair<Chain, CycNum>> expand(const Chain& wc, int a, const Word& v, const Chain& vc, int b,
                                               int k) const;
  Mor swap_adjacent(const Word& u, int p) const;
  Mor braid_words(const Word& w, const Word& v) const;
  Mor tensor_id_right(const Mor& f, const Obj& Y) const;
  Mor duality_word(const Word& w, int which) const;
  Mor duality_sum(const Obj& X, int which) const;

  const CategorySpec& C_;
  mutable std::recursive_mutex mu_;
  mutable std::map<Word, std::unique_ptr<WordTrees>> trees_;
  mutable std::map<std::tuple<Obj, Obj, int>, std::unique_ptr<ProdBasis>> prod_;
  mutable std::map<std::tuple<Obj, Obj, int>, std::unique_ptr<Mor>> braid_;
  mutable std::map<std::pair<Word, int>, std::unique_ptr<Mor>> dual_word_;
};

}  // namespace tcalg
