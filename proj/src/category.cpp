#include "tcalg/category.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tcalg/errors.hpp"
#include "tcalg/mor.hpp"

namespace tcalg {

using nlohmann::json;

int CategorySpec::label(const std::string& s) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == s) return i;
  throw MalformedSpec("unknown label '" + s + "'");
}

long CategorySpec::key6(int a, int b, int c, int d, int e, int f) const {
  long n = size();
  return ((((a * n + b) * n + c) * n + d) * n + e) * n + f;
}

int CategorySpec::N(int a, int b, int c) const {
  int n = size();
  return Ntab_[(a * n + b) * n + c];
}

const std::vector<int>& CategorySpec::fuse(int a, int b) const { return fuse_[a * size() + b]; }

CycNum CategorySpec::Fsym(int a, int b, int c, int d, int e, int f) const {
  auto it = F.find({a, b, c, d, e, f});
  return it == F.end() ? CycNum() : it->second;
}

CycNum CategorySpec::Finv(int a, int b, int c, int d, int f, int e) const {
  auto it = Finv_.find(key6(a, b, c, d, f, e));
  return it == Finv_.end() ? CycNum() : it->second;
}

CycNum CategorySpec::Rsym(int a, int b, int c) const {
  auto it = R.find({a, b, c});
  return it == R.end() ? CycNum() : it->second;
}

std::vector<int> CategorySpec::Frows(int a, int b, int c, int d) const {
  std::vector<int> r;
  for (int e : fuse(a, b))
    if (N(e, c, d)) r.push_back(e);
  return r;
}

std::vector<int> CategorySpec::Fcols(int a, int b, int c, int d) const {
  std::vector<int> r;
  for (int f : fuse(b, c))
    if (N(a, f, d)) r.push_back(f);
  return r;
}

void CategorySpec::prepare() {
  int n = size();
  Ntab_.assign((size_t)n * n * n, 0);
  fuse_.assign((size_t)n * n, {});
  mult_free_ = true;
  for (const auto& [k, v] : fusion) {
    Ntab_[(k[0] * n + k[1]) * n + k[2]] = v;
    if (v > 1) mult_free_ = false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (N(a, b, c)) fuse_[a * n + b].push_back(c);
  Finv_.clear();
  finv_ok_ = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          auto rows = Frows(a, b, c, d), cols = Fcols(a, b, c, d);
          if (rows.empty() && cols.empty()) continue;
          if (rows.size() != cols.size()) {
            finv_ok_ = false;
            continue;
          }
          Matrix M((int)rows.size(), (int)cols.size());
          for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) M(i, j) = Fsym(a, b, c, d, rows[i], cols[j]);
          auto inv = inverse(M);
          if (!inv) {
            finv_ok_ = false;
            continue;
          }
          for (size_t i = 0; i < cols.size(); ++i)
            for (size_t j = 0; j < rows.size(); ++j)
              if (!(*inv)(i, j).is_zero()) Finv_[key6(a, b, c, d, cols[i], rows[j])] = (*inv)(i, j);
        }
  delta_.assign(n, CycNum());
  for (int a = 0; a < n; ++a) {
    int ad = dual[a];
    CycNum f = Fsym(a, ad, a, a, 0, 0);
    delta_[a] = f.is_zero() ? CycNum() : f.inv();
  }
}

namespace {

std::vector<int> keys(const CategorySpec& C, const json& k, size_t len) {
  if (!k.is_array() || k.size() != len) throw MalformedSpec("key must be an array of " + std::to_string(len) + " labels");
  std::vector<int> r;
  for (const auto& s : k) {
    if (!s.is_string()) throw MalformedSpec("label keys must be strings");
    r.push_back(C.label(s.get<std::string>()));
  }
  return r;
}

std::vector<CycNum> scalar_list(const json& j, size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw MalformedSpec(std::string(what) + " must list one scalar per label");
  std::vector<CycNum> r;
  for (const auto& e : j) {
    try {
      r.push_back(CycNum::from_json(e));
    } catch (const MalformedScalar& ex) {
      throw MalformedSpec(std::string(what) + ": " + ex.what());
    }
  }
  return r;
}

}  // namespace

CategorySpec load_category(const json& doc) {
  if (!doc.is_object()) throw MalformedSpec("document must be an object");
  for (const char* f : {"labels", "fusion", "F", "R", "twist", "dual", "pivotal"})
    if (!doc.contains(f)) throw MalformedSpec(std::string("missing field '") + f + "'");
  CategorySpec C;
  C.name = doc.value("name", std::string("unnamed"));
  if (!doc["labels"].is_array() || doc["labels"].empty()) throw MalformedSpec("unit label missing");
  std::set<std::string> seen;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) throw MalformedSpec("labels must be strings");
    std::string s = l.get<std::string>();
    if (s.empty() || !seen.insert(s).second) throw MalformedSpec("bad or duplicate label '" + s + "'");
    for (char ch : s)
      if (!(std::isalnum((unsigned char)ch) || ch == '_')) throw MalformedSpec("label '" + s + "' must be alphanumeric");
    C.labels.push_back(s);
  }
  if (doc.contains("unit") && doc["unit"] != doc["labels"][0])
    throw MalformedSpec("unit label missing: the unit must be the first label");
  int n = C.size();
  if (!doc["dual"].is_array() || doc["dual"].size() != (size_t)n) throw MalformedSpec("dual must list one label per label");
  for (const auto& d : doc["dual"]) {
    if (!d.is_string()) throw MalformedSpec("dual entries must be labels");
    C.dual.push_back(C.label(d.get<std::string>()));
  }
  if (!doc["fusion"].is_array()) throw MalformedSpec("fusion must be an array");
  for (const auto& t : doc["fusion"]) {
    if (!t.is_array() || (t.size() != 3 && t.size() != 4)) throw MalformedSpec("fusion entries are [a,b,c] or [a,b,c,N]");
    json k = json::array({t[0], t[1], t[2]});
    auto v = keys(C, k, 3);
    int mult = 1;
    if (t.size() == 4) {
      if (!t[3].is_number_integer() || t[3].get<int>() < 1) throw MalformedSpec("fusion multiplicity must be a positive integer");
      mult = t[3].get<int>();
    }
    C.fusion[{v[0], v[1], v[2]}] = mult;
  }
  auto entries = [&](const json& arr, size_t len, auto&& put) {
    if (!arr.is_array()) throw MalformedSpec("symbol tables must be arrays");
    for (const auto& e : arr) {
      if (!e.is_object() || !e.contains("key") || !e.contains("value")) throw MalformedSpec("symbol entries need key and value");
      auto k = keys(C, e["key"], len);
      try {
        put(k, CycNum::from_json(e["value"]));
      } catch (const MalformedScalar& ex) {
        throw MalformedSpec(ex.what());
      }
    }
  };
  entries(doc["F"], 6, [&](const std::vector<int>& k, CycNum v) { C.F[{k[0], k[1], k[2], k[3], k[4], k[5]}] = v; });
  entries(doc["R"], 3, [&](const std::vector<int>& k, CycNum v) { C.R[{k[0], k[1], k[2]}] = v; });
  C.twist = scalar_list(doc["twist"], n, "twist");
  C.pivotal = scalar_list(doc["pivotal"], n, "pivotal");
  C.prepare();
  return C;
}

CategorySpec load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedSpec("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedSpec(std::string("parse error: ") + e.what());
  }
  return load_category(doc);
}

json save_category(const CategorySpec& C) {
  json doc;
  doc["name"] = C.name;
  doc["unit"] = C.labels[0];
  doc["labels"] = C.labels;
  json dual = json::array();
  for (int d : C.dual) dual.push_back(C.labels[d]);
  doc["dual"] = dual;
  json fus = json::array();
  for (const auto& [k, v] : C.fusion) {
    json e = json::array({C.labels[k[0]], C.labels[k[1]], C.labels[k[2]]});
    if (v != 1) e.push_back(v);
    fus.push_back(e);
  }
  doc["fusion"] = fus;
  json F = json::array();
  for (const auto& [k, v] : C.F) {
    json key = json::array();
    for (int x : k) key.push_back(C.labels[x]);
    F.push_back({{"key", key}, {"value", v.to_json()}});
  }
  doc["F"] = F;
  json R = json::array();
  for (const auto& [k, v] : C.R) {
    json key = json::array();
    for (int x : k) key.push_back(C.labels[x]);
    R.push_back({{"key", key}, {"value", v.to_json()}});
  }
  doc["R"] = R;
  json tw = json::array(), pv = json::array();
  for (const auto& t : C.twist) tw.push_back(t.to_json());
  for (const auto& p : C.pivotal) pv.push_back(p.to_json());
  doc["twist"] = tw;
  doc["pivotal"] = pv;
  return doc;
}

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string tuple_str(const CategorySpec& C, std::initializer_list<int> xs) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int x : xs) {
    if (!first) os << ",";
    os << C.labels[x];
    first = false;
  }
  os << ")";
  return os.str();
}

void fail(CheckResult& r, const std::string& w) {
  if (r.ok) {
    r.ok = false;
    r.witness = w;
  }
}

}  // namespace

ValidationReport validate_category(const CategorySpec& C) {
  ValidationReport rep;
  const int n = C.size();
  CheckResult fus{"fusion", true, ""}, unit{"unit", true, ""}, fmat{"f-invertible", true, ""},
      pent{"pentagon", true, ""}, hex1{"hexagon", true, ""}, hex2{"hexagon-inverse", true, ""},
      rib{"ribbon", true, ""}, piv{"pivotal", true, ""};

  // fusion rules
  for (int a = 0; a < n; ++a) {
    if (C.dual[C.dual[a]] != a) fail(fus, "dual not an involution at " + C.labels[a]);
    for (int k = 0; k < n; ++k) {
      if (C.N(a, 0, k) != (a == k) || C.N(0, a, k) != (a == k)) fail(fus, "unit fusion at " + tuple_str(C, {a, k}));
      if (C.N(a, k, 0) != (k == C.dual[a] ? 1 : 0)) fail(fus, "N_ab^0 vs duality at " + tuple_str(C, {a, k}));
    }
  }
  if (C.dual[0] != 0) fail(fus, "dual of unit");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          int l = 0, r = 0;
          for (int e = 0; e < n; ++e) l += C.N(a, b, e) * C.N(e, c, d);
          for (int f = 0; f < n; ++f) r += C.N(b, c, f) * C.N(a, f, d);
          if (l != r) fail(fus, "fusion associativity at " + tuple_str(C, {a, b, c, d}));
        }
  rep.checks.push_back(fus);
  if (!C.multiplicity_free()) {
    rep.checks.push_back({"multiplicity", false, "fusion multiplicities > 1 are not supported by the symbol checks"});
    return rep;
  }
  if (!fus.ok) return rep;

  // unit constraints
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c : C.fuse(a, b)) {
        auto is1 = [&](const CycNum& x) { return x.is_one(); };
        if (!is1(C.Fsym(0, a, b, c, a, c))) fail(unit, "F^{1ab}_c " + tuple_str(C, {a, b, c}));
        if (!is1(C.Fsym(a, 0, b, c, a, b))) fail(unit, "F^{a1b}_c " + tuple_str(C, {a, b, c}));
        if (!is1(C.Fsym(a, b, 0, c, c, b))) fail(unit, "F^{ab1}_c " + tuple_str(C, {a, b, c}));
      }
  for (int a = 0; a < n; ++a) {
    if (!C.Rsym(0, a, a).is_one() || !C.Rsym(a, 0, a).is_one()) fail(unit, "R with unit at " + C.labels[a]);
  }
  // entries outside the admissible support must be absent
  for (const auto& [k, v] : C.F) {
    auto [a, b, c, d, e, f] = k;
    if (!(C.N(a, b, e) && C.N(e, c, d) && C.N(b, c, f) && C.N(a, f, d)))
      fail(unit, "F entry on non-admissible tuple " + tuple_str(C, {a, b, c, d, e, f}));
  }
  rep.checks.push_back(unit);

  if (!C.finv_ok()) fail(fmat, "some F-matrix is singular or not square");
  rep.checks.push_back(fmat);

  // pentagon
  for (int a = 0; a < n && pent.ok; ++a)
    for (int b = 0; b < n && pent.ok; ++b)
      for (int c = 0; c < n && pent.ok; ++c)
        for (int d = 0; d < n && pent.ok; ++d)
          for (int f : C.fuse(a, b))
            for (int g : C.fuse(f, c))
              for (int e : C.fuse(g, d))
                for (int l : C.fuse(c, d)) {
                  if (!C.N(f, l, e)) continue;
                  for (int k : C.fuse(b, l)) {
                    if (!C.N(a, k, e)) continue;
                    CycNum lhs = C.Fsym(f, c, d, e, g, l) * C.Fsym(a, b, l, e, f, k);
                    CycNum rhs;
                    for (int h : C.fuse(b, c)) {
                      if (!C.N(a, h, g) || !C.N(h, d, k)) continue;
                      rhs += C.Fsym(a, b, c, g, f, h) * C.Fsym(a, h, d, e, g, k) * C.Fsym(b, c, d, k, h, l);
                    }
                    if (lhs != rhs) {
                      fail(pent, "abcde=" + tuple_str(C, {a, b, c, d, e}) + " f,g,k,l=" + tuple_str(C, {f, g, k, l}));
                      goto pent_done;
                    }
                  }
                }
pent_done:
  rep.checks.push_back(pent);

  // hexagons
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          for (int e : C.fuse(c, a)) {
            if (!C.N(e, b, d)) continue;
            for (int g : C.fuse(b, c)) {
              if (!C.N(a, g, d)) continue;
              CycNum lhs;
              for (int f : C.fuse(a, b))
                if (C.N(c, f, d) && C.N(f, c, d)) lhs += C.Fsym(c, a, b, d, e, f) * C.Rsym(c, f, d) * C.Fsym(a, b, c, d, f, g);
              CycNum rhs = C.Rsym(c, a, e) * C.Fsym(a, c, b, d, e, g) * C.Rsym(c, b, g);
              if (lhs != rhs) fail(hex1, tuple_str(C, {a, b, c, d, e, g}));
            }
          }
          for (int e : C.fuse(a, b)) {
            if (!fmat.ok || !C.N(e, c, d)) continue;
            for (int g : C.fuse(c, a)) {
              if (!C.N(g, b, d)) continue;
              CycNum lhs = C.Rsym(e, c, d) * C.Finv(c, a, b, d, e, g);
              CycNum rhs;
              for (int f : C.fuse(b, c))
                if (C.N(a, f, d)) rhs += C.Fsym(a, b, c, d, e, f) * C.Rsym(b, c, f) * C.Finv(a, c, b, d, f, g) * C.Rsym(a, c, g);
              if (lhs != rhs) fail(hex2, tuple_str(C, {a, b, c, d, e, g}));
            }
          }
        }
  rep.checks.push_back(hex1);
  if (fmat.ok) rep.checks.push_back(hex2);

  // ribbon
  if (!C.twist[0].is_one()) fail(rib, "theta of the unit");
  for (int a = 0; a < n; ++a) {
    if (C.twist[C.dual[a]] != C.twist[a]) fail(rib, "theta_a* != theta_a at " + C.labels[a]);
    for (int b = 0; b < n; ++b)
      for (int c : C.fuse(a, b))
        if (C.twist[c] != C.twist[a] * C.twist[b] * C.Rsym(a, b, c) * C.Rsym(b, a, c))
          fail(rib, "balancing at " + tuple_str(C, {a, b, c}));
  }
  rep.checks.push_back(rib);
  if (!fmat.ok) return rep;

  // duality and pivotal data
  if (!C.pivotal[0].is_one()) fail(piv, "pivotal coefficient of the unit");
  for (int a = 0; a < n; ++a) {
    int ad = C.dual[a];
    if (C.delta(a).is_zero()) {
      fail(piv, "F^{a a* a}_a[1,1] vanishes at " + C.labels[a]);
      continue;
    }
    if (C.pivotal[a].is_zero()) {
      fail(piv, "zero pivotal coefficient at " + C.labels[a]);
      continue;
    }
    if (!(C.delta(a) * C.Finv(ad, a, ad, ad, 0, 0)).is_one()) fail(piv, "second zig-zag at " + C.labels[a]);
    if (C.delta(ad) != C.pivotal[a] * C.pivotal[a] * C.delta(a)) fail(piv, "left/right loop mismatch at " + C.labels[a]);
    if (!(C.pivotal[a] * C.pivotal[ad]).is_one()) fail(piv, "kappa_a kappa_a* != 1 at " + C.labels[a]);
    // the curl (id (x) dt_a)(c_aa (x) id)(id (x) b_a) must equal theta_a
    CycNum curl;
    for (int e : C.fuse(a, a))
      if (C.N(e, ad, a)) curl += C.Finv(a, a, ad, a, 0, e) * C.Rsym(a, a, e) * C.Fsym(a, a, ad, a, e, 0);
    curl *= C.delta(ad) / C.pivotal[a];
    if (curl != C.twist[a]) fail(piv, "curl != theta at " + C.labels[a]);
  }
  rep.checks.push_back(piv);
  return rep;
}

int dual_label(const CategorySpec& C, int i) { return C.dual.at(i); }

CycNum qdim(const CategorySpec& C, int i) {
  Engine E(C);
  Obj U = Obj::word({i});
  return E.scalar(E.compose(E.dt(U), E.b(U)));
}

Matrix s_matrix(const CategorySpec& C) {
  Engine E(C);
  int n = C.size();
  Matrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Obj Ui = Obj::word({i}), Uj = Obj::word({j});
      Obj Ujd = E.dual(Uj);
      // (d_j (x) dt_i) o [id (x) (c_ij c_ji) (x) id] o (bt_j (x) b_i)
      Mor top = E.tensor(E.d(Uj), E.dt(Ui));
      Mor mid = E.tensor(E.tensor(E.id(Ujd), E.compose(E.braid(Ui, Uj), E.braid(Uj, Ui))), E.id(E.dual(Ui)));
      Mor bot = E.tensor(E.bt(Uj), E.b(Ui));
      s(i, j) = E.scalar(E.compose(top, E.compose(mid, bot)));
    }
  return s;
}

bool is_modular(const CategorySpec& C) { return !det(s_matrix(C)).is_zero(); }

}  // namespace tcalg
