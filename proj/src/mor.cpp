#include "tcalg/mor.hpp"

#include <algorithm>
#include <sstream>

#include "tcalg/errors.hpp"

namespace tcalg {

using Lock = std::lock_guard<std::recursive_mutex>;

Obj Obj::word(const Word& w) {
  Word v;
  for (int x : w)
    if (x != 0) v.push_back(x);
  return Obj{{v}};
}

Obj Obj::labels(const std::vector<int>& ls) {
  Obj o;
  for (int l : ls) o.parts.push_back(l == 0 ? Word{} : Word{l});
  return o;
}

std::string Obj::str(const CategorySpec& C) const {
  if (parts.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << " + ";
    if (parts[i].empty()) os << C.labels[0];
    for (size_t j = 0; j < parts[i].size(); ++j) os << (j ? " " : "") << C.labels[parts[i][j]];
  }
  return os.str();
}

bool Mor::is_zero() const {
  for (const auto& [k, m] : blocks)
    if (!m.is_zero()) return false;
  return true;
}

Engine::Engine(const CategorySpec& C) : C_(C) {
  if (!C.multiplicity_free()) throw NotSupported("fusion multiplicities > 1");
}

const Engine::WordTrees& Engine::word_trees(const Word& w) const {
  Lock lk(mu_);
  auto it = trees_.find(w);
  if (it != trees_.end()) return *it->second;
  auto wt = std::make_unique<WordTrees>();
  if (w.empty()) {
    wt->by_root[0].push_back({});
  } else {
    std::vector<Chain> cur{{w[0]}};
    for (size_t i = 1; i < w.size(); ++i) {
      std::vector<Chain> nxt;
      for (const auto& c : cur)
        for (int e : C_.fuse(c.back(), w[i])) {
          Chain d = c;
          d.push_back(e);
          nxt.push_back(d);
        }
      cur = std::move(nxt);
    }
    std::sort(cur.begin(), cur.end());
    for (auto& c : cur) wt->by_root[c.back()].push_back(c);
  }
  for (const auto& [k, cs] : wt->by_root)
    for (size_t i = 0; i < cs.size(); ++i) wt->index[k][cs[i]] = (int)i;
  return *trees_.emplace(w, std::move(wt)).first->second;
}

const std::vector<Engine::Chain>& Engine::trees(const Word& w, int k) const {
  static const std::vector<Chain> none;
  const auto& wt = word_trees(w);
  auto it = wt.by_root.find(k);
  return it == wt.by_root.end() ? none : it->second;
}

int Engine::chain_index(const Word& w, int k, const Chain& c) const {
  const auto& wt = word_trees(w);
  return wt.index.at(k).at(c);
}

int Engine::ntrees(const Obj& X, int k) const {
  int n = 0;
  for (const auto& w : X.parts) n += (int)trees(w, k).size();
  return n;
}

int Engine::offset(const Obj& X, int part, int k) const {
  int n = 0;
  for (int i = 0; i < part; ++i) n += (int)trees(X.parts[i], k).size();
  return n;
}

std::vector<int> Engine::roots(const Obj& X) const {
  std::vector<int> r;
  for (int k = 0; k < C_.size(); ++k)
    if (ntrees(X, k) > 0) r.push_back(k);
  return r;
}

int Engine::hom_dim(const Obj& X, const Obj& Y) const {
  int s = 0;
  for (int k = 0; k < C_.size(); ++k) s += ntrees(X, k) * ntrees(Y, k);
  return s;
}

Obj Engine::tensor(const Obj& X, const Obj& Y) const {
  Obj r;
  for (const auto& x : X.parts)
    for (const auto& y : Y.parts) {
      Word w = x;
      w.insert(w.end(), y.begin(), y.end());
      r.parts.push_back(w);
    }
  return r;
}

Obj Engine::dual(const Obj& X) const {
  Obj r;
  for (const auto& x : X.parts) {
    Word w;
    for (auto it = x.rbegin(); it != x.rend(); ++it) w.push_back(C_.dual[*it]);
    r.parts.push_back(w);
  }
  return r;
}

Mor Engine::zero(const Obj& X, const Obj& Y) const {
  Mor f{X, Y, {}};
  for (int k = 0; k < C_.size(); ++k) {
    int c = ntrees(X, k), r = ntrees(Y, k);
    if (c > 0 && r > 0) f.blocks[k] = Matrix(r, c);
  }
  return f;
}

Mor Engine::id(const Obj& X) const {
  Mor f{X, X, {}};
  for (int k = 0; k < C_.size(); ++k) {
    int n = ntrees(X, k);
    if (n > 0) f.blocks[k] = Matrix::identity(n);
  }
  return f;
}

Mor Engine::add(const Mor& f, const Mor& g) const {
  if (f.dom != g.dom || f.cod != g.cod) throw TypeMismatch("sum of morphisms with different types");
  Mor h = f;
  for (auto& [k, m] : h.blocks) m = m + g.blocks.at(k);
  return h;
}

Mor Engine::sub(const Mor& f, const Mor& g) const {
  if (f.dom != g.dom || f.cod != g.cod) throw TypeMismatch("difference of morphisms with different types");
  Mor h = f;
  for (auto& [k, m] : h.blocks) m = m - g.blocks.at(k);
  return h;
}

Mor Engine::scale(const CycNum& s, const Mor& f) const {
  Mor h = f;
  for (auto& [k, m] : h.blocks) m = s * m;
  return h;
}

CycNum Engine::scalar(const Mor& f) const {
  if (!f.dom.is_unit() || !f.cod.is_unit()) throw TypeMismatch("scalar of a morphism not 1 -> 1");
  return f.blocks.at(0)(0, 0);
}

std::vector<CycNum> Engine::coords(const Mor& f) const {
  std::vector<CycNum> v;
  for (const auto& [k, m] : f.blocks) v.insert(v.end(), m.a.begin(), m.a.end());
  return v;
}

Mor Engine::from_coords(const Obj& X, const Obj& Y, const std::vector<CycNum>& v) const {
  Mor f = zero(X, Y);
  size_t p = 0;
  for (auto& [k, m] : f.blocks)
    for (auto& x : m.a) {
      if (p >= v.size()) throw TypeMismatch("coordinate vector too short");
      x = v[p++];
    }
  if (p != v.size()) throw TypeMismatch("coordinate vector too long");
  return f;
}

std::vector<Mor> Engine::hom_basis(const Obj& X, const Obj& Y) const {
  int n = hom_dim(X, Y);
  std::vector<Mor> out;
  for (int i = 0; i < n; ++i) {
    std::vector<CycNum> v(n);
    v[i] = CycNum(1);
    out.push_back(from_coords(X, Y, v));
  }
  return out;
}

std::optional<Mor> Engine::inverse(const Mor& f) const {
  Mor g{f.cod, f.dom, {}};
  for (int k = 0; k < C_.size(); ++k)
    if (ntrees(f.dom, k) != ntrees(f.cod, k)) return std::nullopt;
  for (const auto& [k, m] : f.blocks) {
    auto inv = tcalg::inverse(m);
    if (!inv) return std::nullopt;
    g.blocks[k] = *inv;
  }
  return g;
}

Mor Engine::compose(const Mor& f, const Mor& g) const {
  if (f.dom != g.cod)
    throw TypeMismatch("compose: domain " + f.dom.str(C_) + " does not match codomain " + g.cod.str(C_));
  Mor h{g.dom, f.cod, {}};
  for (int k = 0; k < C_.size(); ++k) {
    int c = ntrees(g.dom, k), r = ntrees(f.cod, k);
    if (c == 0 || r == 0) continue;
    auto fi = f.blocks.find(k);
    auto gi = g.blocks.find(k);
    if (fi == f.blocks.end() || gi == g.blocks.end()) h.blocks[k] = Matrix(r, c);
    else h.blocks[k] = fi->second * gi->second;
  }
  return h;
}

// Expansion of the product tree (t_w (x) t_v) o s^{ab}_k in the left-combed
// basis of wv; wc and vc are the chains of t_w (root a) and t_v (root b).
std::vector<std::pair<Engine::Chain, CycNum>> Engine::expand(const Chain& wc, int a, const Word& v, const Chain& vc,
                                                             int b, int k) const {
  if (v.empty()) return {{wc, CycNum(1)}};
  if (wc.empty()) return {{vc, CycNum(1)}};
  size_t m = v.size();
  if (m == 1) {
    Chain c = wc;
    c.push_back(k);
    return {{c, CycNum(1)}};
  }
  int bp = vc[m - 2], x = v[m - 1];
  Word vp(v.begin(), v.end() - 1);
  Chain vcp(vc.begin(), vc.end() - 1);
  std::map<Chain, CycNum> acc;
  for (int e : C_.fuse(a, bp)) {
    if (!C_.N(e, x, k)) continue;
    CycNum coef = C_.Finv(a, bp, x, k, b, e);
    if (coef.is_zero()) continue;
    for (auto& [ch, c2] : expand(wc, a, vp, vcp, bp, e)) {
      Chain c = ch;
      c.push_back(k);
      acc[c] += coef * c2;
    }
  }
  return {acc.begin(), acc.end()};
}

const Engine::ProdBasis& Engine::prod_basis(const Obj& X, const Obj& Y, int k) const {
  Lock lk(mu_);
  auto key = std::make_tuple(X, Y, k);
  auto it = prod_.find(key);
  if (it != prod_.end()) return *it->second;
  auto pb = std::make_unique<ProdBasis>();
  Obj XY = tensor(X, Y);
  int n = ntrees(XY, k);
  for (int a = 0; a < C_.size(); ++a) {
    int na = ntrees(X, a);
    if (!na) continue;
    for (int b = 0; b < C_.size(); ++b) {
      int nb = ntrees(Y, b);
      if (!nb || !C_.N(a, b, k)) continue;
      pb->ab_off.push_back({a, b, pb->size});
      pb->size += na * nb;
    }
  }
  if (pb->size != n) throw InternalInconsistency("product basis size mismatch");
  pb->T = Matrix(n, n);
  int ny = (int)Y.parts.size();
  for (const auto& [a, b, off] : pb->ab_off) {
    int nb = ntrees(Y, b);
    int ta = 0;
    for (size_t i = 0; i < X.parts.size(); ++i) {
      const auto& cx = trees(X.parts[i], a);
      for (const auto& wc : cx) {
        int tb = 0;
        for (size_t j = 0; j < Y.parts.size(); ++j) {
          const auto& cy = trees(Y.parts[j], b);
          int part = (int)i * ny + (int)j;
          const Word& word = XY.parts[part];
          int row0 = offset(XY, part, k);
          for (const auto& vc : cy) {
            int col = off + ta * nb + tb;
            for (auto& [ch, c] : expand(wc, a, Y.parts[j], vc, b, k)) pb->T(row0 + chain_index(word, k, ch), col) += c;
            ++tb;
          }
        }
        ++ta;
      }
    }
  }
  auto inv = tcalg::inverse(pb->T);
  if (!inv) throw InternalInconsistency("singular recoupling matrix");
  pb->Tinv = *inv;
  return *prod_.emplace(key, std::move(pb)).first->second;
}

namespace {
bool is_identity_mor(const Mor& f) {
  if (f.dom != f.cod) return false;
  for (const auto& [k, m] : f.blocks)
    if (!m.is_identity()) return false;
  return true;
}
}  // namespace

Mor Engine::tensor_id_right(const Mor& f, const Obj& Y) const {
  const Obj &X = f.dom, &Xp = f.cod;
  Obj XY = tensor(X, Y), XpY = tensor(Xp, Y);
  Mor h = zero(XY, XpY);
  int ny = (int)Y.parts.size();
  // group left-combed chains of X_i Y_j by (j, a, tail)
  using Key = std::tuple<int, int, Chain>;
  auto collect = [&](const Obj& Z, const Obj& ZY, int k) {
    std::map<Key, std::vector<std::pair<int, int>>> g;  // -> (index in Z basis at a, index in ZY basis)
    for (size_t i = 0; i < Z.parts.size(); ++i) {
      size_t len = Z.parts[i].size();
      for (int j = 0; j < ny; ++j) {
        int part = (int)i * ny + j;
        const Word& w = ZY.parts[part];
        int off = offset(ZY, part, k);
        const auto& cs = trees(w, k);
        for (size_t t = 0; t < cs.size(); ++t) {
          const Chain& c = cs[t];
          int a = len == 0 ? 0 : c[len - 1];
          Chain pre(c.begin(), c.begin() + len), tail(c.begin() + len, c.end());
          int ia = offset(Z, (int)i, a) + (len == 0 ? 0 : chain_index(Z.parts[i], a, pre));
          g[{j, a, tail}].push_back({ia, off + (int)t});
        }
      }
    }
    return g;
  };
  for (auto& [k, blk] : h.blocks) {
    auto src = collect(X, XY, k);
    auto dst = collect(Xp, XpY, k);
    for (const auto& [key, cols] : src) {
      auto it = dst.find(key);
      if (it == dst.end()) continue;
      int a = std::get<1>(key);
      auto fb = f.blocks.find(a);
      if (fb == f.blocks.end()) continue;
      for (const auto& [ia, col] : cols)
        for (const auto& [ib, row] : it->second) {
          const CycNum& v = fb->second(ib, ia);
          if (!v.is_zero()) blk(row, col) = v;
        }
    }
  }
  return h;
}

Mor Engine::tensor(const Mor& f, const Mor& g) const {
  if (is_identity_mor(g)) return tensor_id_right(f, g.dom);
  const Obj &X = f.dom, &Xp = f.cod, &Y = g.dom, &Yp = g.cod;
  Obj XY = tensor(X, Y), XpYp = tensor(Xp, Yp);
  Mor h = zero(XY, XpYp);
  for (auto& [k, blk] : h.blocks) {
    const ProdBasis& src = prod_basis(X, Y, k);
    const ProdBasis& dst = prod_basis(Xp, Yp, k);
    Matrix D(dst.size, src.size);
    for (const auto& [a, b, so] : src.ab_off) {
      auto fb = f.blocks.find(a);
      auto gb = g.blocks.find(b);
      if (fb == f.blocks.end() || gb == g.blocks.end()) continue;
      for (const auto& [a2, b2, dof] : dst.ab_off) {
        if (a2 != a || b2 != b) continue;
        Matrix K = kron(fb->second, gb->second);
        for (int i = 0; i < K.r; ++i)
          for (int j = 0; j < K.c; ++j)
            if (!K(i, j).is_zero()) D(dof + i, so + j) = K(i, j);
      }
    }
    blk = dst.T * (D * src.Tinv);
  }
  return h;
}

Mor Engine::swap_adjacent(const Word& u, int p) const {
  Word v = u;
  std::swap(v[p], v[p + 1]);
  Obj U = Obj::word(u), V = Obj::word(v);
  Mor h = zero(U, V);
  for (auto& [k, blk] : h.blocks) {
    const auto& cs = trees(u, k);
    for (size_t t = 0; t < cs.size(); ++t) {
      const Chain& c = cs[t];
      if (p == 0) {
        Chain d = c;
        d[0] = u[1];
        blk(chain_index(v, k, d), (int)t) += C_.Rsym(u[0], u[1], c[1]);
        continue;
      }
      int a = c[p - 1], x = u[p], y = u[p + 1], e = c[p], dd = c[p + 1];
      for (int f : C_.fuse(x, y)) {
        if (!C_.N(a, f, dd)) continue;
        CycNum c1 = C_.Fsym(a, x, y, dd, e, f) * C_.Rsym(x, y, f);
        if (c1.is_zero()) continue;
        for (int ep : C_.fuse(a, y)) {
          if (!C_.N(ep, x, dd)) continue;
          CycNum c2 = C_.Finv(a, y, x, dd, f, ep);
          if (c2.is_zero()) continue;
          Chain d = c;
          d[p] = ep;
          blk(chain_index(v, k, d), (int)t) += c1 * c2;
        }
      }
    }
  }
  return h;
}

Mor Engine::braid_words(const Word& w, const Word& v) const {
  Word cur = w;
  cur.insert(cur.end(), v.begin(), v.end());
  Mor total = id(Obj::word(cur));
  int n = (int)w.size(), m = (int)v.size();
  for (int i = n - 1; i >= 0; --i)
    for (int p = i; p < i + m; ++p) {
      Mor s = swap_adjacent(cur, p);
      std::swap(cur[p], cur[p + 1]);
      total = compose(s, total);
    }
  return total;
}

Mor Engine::braid(const Obj& X, const Obj& Y, int sign) const {
  Lock lk(mu_);
  auto key = std::make_tuple(X, Y, sign);
  auto it = braid_.find(key);
  if (it != braid_.end()) return *it->second;
  Mor result;
  if (sign < 0) {
    auto inv = inverse(braid(X, Y, 1));
    if (!inv) throw InternalInconsistency("braiding not invertible");
    result = *inv;
  } else {
    Obj XY = tensor(X, Y), YX = tensor(Y, X);
    result = zero(XY, YX);
    int nx = (int)X.parts.size(), ny = (int)Y.parts.size();
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        Mor c = braid_words(X.parts[i], Y.parts[j]);
        for (const auto& [k, m] : c.blocks) {
          int co = offset(XY, i * ny + j, k), ro = offset(YX, j * nx + i, k);
          auto& blk = result.blocks.at(k);
          for (int r = 0; r < m.r; ++r)
            for (int s = 0; s < m.c; ++s) blk(ro + r, co + s) = m(r, s);
        }
      }
  }
  braid_.emplace(key, std::make_unique<Mor>(result));
  return result;
}

Mor Engine::twist(const Obj& X, int sign) const {
  Mor h = id(X);
  for (auto& [k, m] : h.blocks) m = (sign > 0 ? C_.twist[k] : C_.twist[k].inv()) * m;
  return h;
}

// which: 0 = b, 1 = d, 2 = bt, 3 = dt
Mor Engine::duality_word(const Word& w, int which) const {
  Lock lk(mu_);
  auto key = std::make_pair(w, which);
  auto it = dual_word_.find(key);
  if (it != dual_word_.end()) return *it->second;
  Mor r;
  Obj W = Obj::word(w), Wd = dual(W);
  if (w.empty()) {
    r = id(Obj::unit());
  } else if (w.size() == 1) {
    int x = w[0], xd = C_.dual[x];
    CycNum v;
    switch (which) {
      case 0: r = zero(Obj::unit(), tensor(W, Wd)); v = 1; break;
      case 1: r = zero(tensor(Wd, W), Obj::unit()); v = C_.delta(x); break;
      case 2: r = zero(Obj::unit(), tensor(Wd, W)); v = C_.pivotal[x]; break;
      default: r = zero(tensor(W, Wd), Obj::unit()); v = C_.delta(xd) / C_.pivotal[x]; break;
    }
    r.blocks.at(0)(0, 0) = v;
  } else {
    Word x{w[0]}, rest(w.begin() + 1, w.end());
    Obj X = Obj::word(x), Xd = dual(X), Rw = Obj::word(rest), Rd = dual(Rw);
    Mor dx = duality_word(x, which), dr = duality_word(rest, which);
    switch (which) {
      case 0: r = compose(tensor(tensor(id(X), dr), id(Xd)), dx); break;
      case 1: r = compose(dr, tensor(tensor(id(Rd), dx), id(Rw))); break;
      case 2: r = compose(tensor(tensor(id(Rd), dx), id(Rw)), dr); break;
      default: r = compose(dx, tensor(tensor(id(X), dr), id(Xd))); break;
    }
  }
  dual_word_.emplace(key, std::make_unique<Mor>(r));
  return r;
}

Mor Engine::duality_sum(const Obj& X, int which) const {
  if (X.parts.size() == 1) return duality_word(X.parts[0], which);
  Obj Xd = dual(X);
  bool coev = which == 0 || which == 2;
  Obj pair = (which == 0 || which == 3) ? tensor(X, Xd) : tensor(Xd, X);
  Mor r = coev ? zero(Obj::unit(), pair) : zero(pair, Obj::unit());
  int n = (int)X.parts.size();
  for (int i = 0; i < n; ++i) {
    Mor part = duality_word(X.parts[i], which);
    Mor emb = coev ? inject(pair, i * n + i) : project(pair, i * n + i);
    r = add(r, coev ? compose(emb, part) : compose(part, emb));
  }
  return r;
}

Mor Engine::b(const Obj& X) const { return duality_sum(X, 0); }
Mor Engine::d(const Obj& X) const { return duality_sum(X, 1); }
Mor Engine::bt(const Obj& X) const { return duality_sum(X, 2); }
Mor Engine::dt(const Obj& X) const { return duality_sum(X, 3); }

Mor Engine::dual(const Mor& f) const {
  const Obj &X = f.dom, &Y = f.cod;
  Obj Xd = dual(X), Yd = dual(Y);
  Mor s1 = tensor(id(Yd), b(X));
  Mor s2 = tensor(tensor(id(Yd), f), id(Xd));
  Mor s3 = tensor(d(Y), id(Xd));
  return compose(s3, compose(s2, s1));
}

Mor Engine::predual(const Mor& f) const {
  const Obj &X = f.dom, &Y = f.cod;
  Obj Xd = dual(X), Yd = dual(Y);
  Mor s1 = tensor(bt(X), id(Yd));
  Mor s2 = tensor(tensor(id(Xd), f), id(Yd));
  Mor s3 = tensor(id(Xd), dt(Y));
  return compose(s3, compose(s2, s1));
}

Mor Engine::delta(const Obj& U) const {
  Obj Ud = dual(U), Udd = dual(Ud);
  Mor loop = compose(braid(Ud, Udd), b(Ud));
  Mor left = tensor(loop, twist(U));
  Mor right = tensor(id(Udd), d(U));
  return compose(right, left);
}

Mor Engine::inject(const Obj& X, int part) const {
  Obj P = Obj{{X.parts.at(part)}};
  Mor h = zero(P, X);
  for (auto& [k, m] : h.blocks) {
    int o = offset(X, part, k);
    for (int i = 0; i < m.c; ++i) m(o + i, i) = CycNum(1);
  }
  return h;
}

Mor Engine::project(const Obj& X, int part) const {
  Obj P = Obj{{X.parts.at(part)}};
  Mor h = zero(X, P);
  for (auto& [k, m] : h.blocks) {
    int o = offset(X, part, k);
    for (int i = 0; i < m.r; ++i) m(i, o + i) = CycNum(1);
  }
  return h;
}

Mor Engine::permute(const Obj& X, const Obj& Y, const std::vector<int>& perm) const {
  if (perm.size() != X.parts.size() || X.parts.size() != Y.parts.size()) throw TypeMismatch("permute: part count");
  Mor h = zero(X, Y);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (Y.parts.at(perm[i]) != X.parts[i]) throw TypeMismatch("permute: parts do not match");
    for (auto& [k, m] : h.blocks) {
      int n = (int)trees(X.parts[i], k).size();
      int co = offset(X, (int)i, k), ro = offset(Y, perm[i], k);
      for (int t = 0; t < n; ++t) m(ro + t, co + t) = CycNum(1);
    }
  }
  return h;
}

Mor Engine::dual_of_tensor_iso(const Obj& X, const Obj& Y) const {
  Obj src = dual(tensor(X, Y)), dst = tensor(dual(Y), dual(X));
  int nx = (int)X.parts.size(), ny = (int)Y.parts.size();
  std::vector<int> perm(nx * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) perm[i * ny + j] = j * nx + i;
  return permute(src, dst, perm);
}

}  // namespace tcalg
