#pragma once
// Independent evaluator for closed diagrams given as a sequence of local
// layers. The state is a dense vector over left-combed splitting chains of
// the current word with total charge 1; each layer is applied by explicit
// F/R recoupling on the two or three affected charges. Nothing here uses the
// block-matrix engine.
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tcalg/category.hpp"

namespace oracle {

using tcalg::CategorySpec;
using tcalg::CycNum;

struct Layer {
  enum Kind { Cup, CupT, Cap, CapT, Braid, BraidInv, Twist, TwistInv, Delta, Merge, Split } kind;
  int pos;               // index of the first affected letter (insertion point for cups)
  int x = 0, y = 0, z = 0;  // labels: cup/cap/twist use x; braid x over y; vertex x y <-> z
};

class Dense {
 public:
  explicit Dense(const CategorySpec& C) : C_(C), n_(C.size()) { build_inverses(); }

  // value of the closed diagram; every layer must act on the current word
  CycNum run(const std::vector<Layer>& layers) const {
    State s;
    s[{}] = CycNum(1);
    std::vector<int> w;
    for (const auto& L : layers) apply(s, w, L);
    if (!w.empty()) throw std::logic_error("diagram not closed");
    auto it = s.find({});
    return it == s.end() ? CycNum() : it->second;
  }

 private:
  using Chain = std::vector<int>;  // charges after each letter
  using State = std::map<Chain, CycNum>;

  CycNum F(int a, int b, int c, int d, int e, int f) const { return C_.Fsym(a, b, c, d, e, f); }
  CycNum Fi(int a, int b, int c, int d, int f, int e) const {
    auto it = finv_.find({a, b, c, d, f, e});
    return it == finv_.end() ? CycNum() : it->second;
  }

  void build_inverses() {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          for (int d = 0; d < n_; ++d) {
            std::vector<int> es, fs;
            for (int e = 0; e < n_; ++e)
              if (C_.N(a, b, e) && C_.N(e, c, d)) es.push_back(e);
            for (int f = 0; f < n_; ++f)
              if (C_.N(b, c, f) && C_.N(a, f, d)) fs.push_back(f);
            if (es.empty()) continue;
            size_t m = es.size();
            // Gauss-Jordan on [F | I]
            std::vector<std::vector<CycNum>> M(m, std::vector<CycNum>(2 * m));
            for (size_t i = 0; i < m; ++i) {
              for (size_t j = 0; j < m; ++j) M[i][j] = F(a, b, c, d, es[i], fs[j]);
              M[i][m + i] = CycNum(1);
            }
            for (size_t col = 0; col < m; ++col) {
              size_t p = col;
              while (p < m && M[p][col].is_zero()) ++p;
              if (p == m) throw std::logic_error("singular F");
              std::swap(M[p], M[col]);
              CycNum inv = CycNum(1) / M[col][col];
              for (auto& x : M[col]) x = x * inv;
              for (size_t r = 0; r < m; ++r) {
                if (r == col || M[r][col].is_zero()) continue;
                CycNum f = M[r][col];
                for (size_t j = 0; j < 2 * m; ++j) M[r][j] = M[r][j] - f * M[col][j];
              }
            }
            for (size_t i = 0; i < m; ++i)
              for (size_t j = 0; j < m; ++j) finv_[{a, b, c, d, fs[i], es[j]}] = M[i][m + j];
          }
  }

  static int before(const Chain& ch, int p) { return p == 0 ? 0 : ch[p - 1]; }

  static void add(State& s, Chain ch, const CycNum& v) {
    if (v.is_zero()) return;
    auto& slot = s[ch];
    slot = slot + v;
  }

  int dual(int a) const { return C_.dual[a]; }
  CycNum delta_coef(int a) const { return CycNum(1) / F(a, dual(a), a, a, 0, 0); }

  void apply(State& s, std::vector<int>& w, const Layer& L) const {
    State out;
    const int p = L.pos;
    switch (L.kind) {
      case Layer::Cup:
      case Layer::CupT: {
        int u = L.kind == Layer::Cup ? L.x : dual(L.x);
        int v = dual(u);
        CycNum k = L.kind == Layer::Cup ? CycNum(1) : C_.pivotal[L.x];
        for (const auto& [ch, val] : s) {
          int a = before(ch, p);
          for (int g = 0; g < n_; ++g) {
            if (!C_.N(a, u, g) || !C_.N(g, v, a)) continue;
            Chain nc(ch.begin(), ch.begin() + p);
            nc.push_back(g);
            nc.push_back(a);
            nc.insert(nc.end(), ch.begin() + p, ch.end());
            add(out, nc, val * k * Fi(a, u, v, a, 0, g));
          }
        }
        w.insert(w.begin() + p, {u, v});
        break;
      }
      case Layer::Cap:
      case Layer::CapT: {
        // Cap removes x* x, CapT removes x x*
        int u = w[p], v = w[p + 1];
        int x = L.kind == Layer::Cap ? v : u;
        CycNum k = L.kind == Layer::Cap ? delta_coef(x) : delta_coef(dual(x)) / C_.pivotal[x];
        for (const auto& [ch, val] : s) {
          int a = before(ch, p), g = ch[p], h = ch[p + 1];
          if (h != a) continue;
          Chain nc(ch.begin(), ch.begin() + p);
          nc.insert(nc.end(), ch.begin() + p + 2, ch.end());
          add(out, nc, val * k * F(a, u, v, h, g, 0));
        }
        w.erase(w.begin() + p, w.begin() + p + 2);
        break;
      }
      case Layer::Braid:
      case Layer::BraidInv: {
        int x = w[p], y = w[p + 1];
        for (const auto& [ch, val] : s) {
          int a = before(ch, p), g = ch[p], h = ch[p + 1];
          for (int g2 = 0; g2 < n_; ++g2) {
            if (!C_.N(a, y, g2) || !C_.N(g2, x, h)) continue;
            CycNum coef;
            for (int f = 0; f < n_; ++f) {
              if (!C_.N(x, y, f) || !C_.N(a, f, h)) continue;
              CycNum r = L.kind == Layer::Braid ? C_.Rsym(x, y, f) : CycNum(1) / C_.Rsym(y, x, f);
              coef = coef + F(a, x, y, h, g, f) * r * Fi(a, y, x, h, f, g2);
            }
            Chain nc = ch;
            nc[p] = g2;
            add(out, nc, val * coef);
          }
        }
        std::swap(w[p], w[p + 1]);
        break;
      }
      case Layer::Twist:
      case Layer::TwistInv: {
        CycNum t = C_.twist[w[p]];
        if (L.kind == Layer::TwistInv) t = CycNum(1) / t;
        for (const auto& [ch, val] : s) out[ch] = val * t;
        break;
      }
      case Layer::Delta: {
        // (id (x) d_U)((c_{U*,U} b_{U*}) (x) theta_U), expanded into layers
        int u = w[p], ud = dual(u);
        State cur = s;
        std::vector<int> cw = w;
        apply(cur, cw, {Layer::Twist, p});
        apply(cur, cw, {Layer::Cup, p, ud});
        apply(cur, cw, {Layer::Braid, p});
        apply(cur, cw, {Layer::Cap, p + 1, u});
        s = cur;
        return;
      }
      case Layer::Merge: {
        int x = w[p], y = w[p + 1];
        for (const auto& [ch, val] : s) {
          int a = before(ch, p), g = ch[p], h = ch[p + 1];
          if (!C_.N(a, L.z, h)) continue;
          Chain nc(ch.begin(), ch.begin() + p);
          nc.push_back(h);
          nc.insert(nc.end(), ch.begin() + p + 2, ch.end());
          add(out, nc, val * F(a, x, y, h, g, L.z));
        }
        w.erase(w.begin() + p, w.begin() + p + 2);
        w.insert(w.begin() + p, L.z);
        break;
      }
      case Layer::Split: {
        int z = w[p];
        for (const auto& [ch, val] : s) {
          int a = before(ch, p), h = ch[p];
          for (int g = 0; g < n_; ++g) {
            if (!C_.N(a, L.x, g) || !C_.N(g, L.y, h)) continue;
            Chain nc(ch.begin(), ch.begin() + p);
            nc.push_back(g);
            nc.push_back(h);
            nc.insert(nc.end(), ch.begin() + p + 1, ch.end());
            add(out, nc, val * Fi(a, L.x, L.y, h, z, g));
          }
        }
        w.erase(w.begin() + p);
        w.insert(w.begin() + p, {L.x, L.y});
        break;
      }
    }
    s = std::move(out);
  }

  const CategorySpec& C_;
  int n_;
  std::map<std::array<int, 6>, CycNum> finv_;
};

// Random closed diagram with every intermediate word of length <= 3 and a
// nonzero space of invariants. Returns the layers plus the matching DSL text
// and the vertex names it uses ("m_x_y_z" for x y -> z, "s_z_x_y" for z -> x y).
struct RandomDiagram {
  std::vector<Layer> layers;
  std::string text;
  std::vector<std::array<int, 4>> vertices;  // {merge?1:0, x, y, z}
};

inline int invariants(const CategorySpec& C, const std::vector<int>& w) {
  std::vector<int> m(C.size(), 0);
  m[0] = 1;
  for (int a : w) {
    std::vector<int> nm(C.size(), 0);
    for (int x = 0; x < C.size(); ++x)
      for (int y = 0; y < C.size(); ++y) nm[y] += m[x] * C.N(x, a, y);
    m = nm;
  }
  return m[0];
}

inline RandomDiagram random_closed(const CategorySpec& C, std::mt19937& rng, int steps) {
  RandomDiagram rd;
  std::vector<int> w;
  std::vector<std::string> terms;  // in application order
  const int n = C.size();
  auto lab = [&](int a) { return C.labels[a]; };
  auto word_str = [&](int from, int to) {
    std::string s;
    for (int i = from; i < to; ++i) s += (s.empty() ? "" : " ") + lab(w[i]);
    return s;
  };
  auto pad = [&](const std::string& g, int from, int to) {
    // wrap generator acting on w[from..to) with identities
    std::string s;
    if (from > 0) s += "id[" + word_str(0, from) + "] * ";
    s += g;
    if (to < (int)w.size()) s += " * id[" + word_str(to, (int)w.size()) + "]";
    return s;
  };
  auto pick = [&](int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng); };
  auto step = [&](bool closing) -> bool {
    std::vector<std::pair<Layer, std::string>> opts;
    int len = (int)w.size();
    if (!closing && len + 2 <= 3)
      for (int p = 0; p <= len; ++p)
        for (int x = 1; x < n; ++x) {
          opts.push_back({{Layer::Cup, p, x}, "b[" + lab(x) + "]"});
          opts.push_back({{Layer::CupT, p, x}, "bt[" + lab(x) + "]"});
        }
    for (int p = 0; p + 1 < len; ++p) {
      int u = w[p], v = w[p + 1];
      auto rest_ok = [&](std::vector<int> nw) { return invariants(C, nw) > 0; };
      std::vector<int> nw = w;
      nw.erase(nw.begin() + p, nw.begin() + p + 2);
      if (u == C.dual[v] && rest_ok(nw)) {
        opts.push_back({{Layer::Cap, p, v}, "d[" + lab(v) + "]"});
        opts.push_back({{Layer::CapT, p, u}, "dt[" + lab(u) + "]"});
      }
      if (!closing) {
        opts.push_back({{Layer::Braid, p, u, v}, "c[" + lab(u) + ", " + lab(v) + "]"});
        opts.push_back({{Layer::BraidInv, p, v, u}, "ci[" + lab(v) + ", " + lab(u) + "]"});
      }
      for (int z = 1; z < n; ++z) {
        if (!C.N(u, v, z)) continue;
        std::vector<int> mw = w;
        mw.erase(mw.begin() + p, mw.begin() + p + 2);
        mw.insert(mw.begin() + p, z);
        if (!rest_ok(mw)) continue;
        std::string nm = "m_" + lab(u) + "_" + lab(v) + "_" + lab(z);
        Layer L{Layer::Merge, p, u, v, z};
        opts.push_back({L, nm});
      }
    }
    if (!closing)
      for (int p = 0; p < len; ++p) {
        int z = w[p];
        opts.push_back({{Layer::Twist, p}, "theta[" + lab(z) + "]"});
        opts.push_back({{Layer::TwistInv, p}, "thetai[" + lab(z) + "]"});
        opts.push_back({{Layer::Delta, p}, "delta[" + lab(z) + "]"});
        if (len + 1 <= 3)
          for (int x = 1; x < n; ++x)
            for (int y = 1; y < n; ++y)
              if (C.N(x, y, z)) opts.push_back({{Layer::Split, p, x, y, z}, "s_" + lab(z) + "_" + lab(x) + "_" + lab(y)});
      }
    if (len == 3 && !closing) {
      // braid of a two-letter word past a letter, as a composite generator
      opts.push_back({{Layer::Braid, -1}, ""});
    }
    if (opts.empty()) return false;
    auto [L, g] = opts[pick((int)opts.size())];
    if (L.pos == -1) {
      // c[x y, z] = (c_{x,z} (x) id)(id (x) c_{y,z})
      std::string t = "c[" + lab(w[0]) + " " + lab(w[1]) + ", " + lab(w[2]) + "]";
      rd.layers.push_back({Layer::Braid, 1});
      rd.layers.push_back({Layer::Braid, 0});
      terms.push_back(t);
      std::swap(w[1], w[2]);
      std::swap(w[0], w[1]);
      return true;
    }
    int width = 1;
    switch (L.kind) {
      case Layer::Cup:
      case Layer::CupT: width = 0; break;
      case Layer::Cap:
      case Layer::CapT:
      case Layer::Braid:
      case Layer::BraidInv:
      case Layer::Merge: width = 2; break;
      default: width = 1;
    }
    terms.push_back(pad(g, L.pos, L.pos + width));
    if (L.kind == Layer::Merge) rd.vertices.push_back({1, L.x, L.y, L.z});
    if (L.kind == Layer::Split) rd.vertices.push_back({0, L.x, L.y, L.z});
    rd.layers.push_back(L);
    // track the word the same way the oracle will
    switch (L.kind) {
      case Layer::Cup: w.insert(w.begin() + L.pos, {L.x, C.dual[L.x]}); break;
      case Layer::CupT: w.insert(w.begin() + L.pos, {C.dual[L.x], L.x}); break;
      case Layer::Cap:
      case Layer::CapT: w.erase(w.begin() + L.pos, w.begin() + L.pos + 2); break;
      case Layer::Braid:
      case Layer::BraidInv: std::swap(w[L.pos], w[L.pos + 1]); break;
      case Layer::Merge:
        w.erase(w.begin() + L.pos, w.begin() + L.pos + 2);
        w.insert(w.begin() + L.pos, L.z);
        break;
      case Layer::Split:
        w.erase(w.begin() + L.pos);
        w.insert(w.begin() + L.pos, {L.x, L.y});
        break;
      default: break;
    }
    return true;
  };
  for (int i = 0; i < steps; ++i) step(false);
  int guard = 0;
  while (!w.empty() && guard++ < 10) step(true);
  if (!w.empty()) throw std::logic_error("could not close diagram");
  // empty diagrams still need a printable expression
  if (terms.empty()) terms.push_back("id[" + C.labels[0] + "]");
  // random bracketing of the composition chain (application order reversed)
  std::vector<std::string> parts(terms.rbegin(), terms.rend());
  while (parts.size() > 1) {
    int i = pick((int)parts.size() - 1);
    parts[i] = "(" + parts[i] + ") . (" + parts[i + 1] + ")";
    parts.erase(parts.begin() + i + 1);
  }
  rd.text = parts[0];
  return rd;
}

}  // namespace oracle
