#include "tcalg/dsl.hpp"

#include <cctype>

#include "tcalg/errors.hpp"

namespace tcalg {

namespace {

struct Tok {
  enum T { Ident, Dot, Star, LP, RP, LB, RB, Comma, End } t;
  std::string s;
  int col;
};

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace((unsigned char)ch)) {
      ++i;
      continue;
    }
    int col = (int)i + 1;
    if (std::isalnum((unsigned char)ch) || ch == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), col});
      i = j;
      continue;
    }
    Tok::T t;
    switch (ch) {
      case '.': t = Tok::Dot; break;
      case '*': t = Tok::Star; break;
      case '(': t = Tok::LP; break;
      case ')': t = Tok::RP; break;
      case '[': t = Tok::LB; break;
      case ']': t = Tok::RB; break;
      case ',': t = Tok::Comma; break;
      default: throw SyntaxError(std::string("unexpected character '") + ch + "' at column " + std::to_string(col));
    }
    out.push_back({t, std::string(1, ch), col});
    ++i;
  }
  out.push_back({Tok::End, "", (int)s.size() + 1});
  return out;
}

const std::map<std::string, std::pair<Expr::Kind, int>>& keywords() {
  static const std::map<std::string, std::pair<Expr::Kind, int>> k{
      {"id", {Expr::Id, 1}},       {"c", {Expr::Braid, 2}},      {"ci", {Expr::BraidInv, 2}},
      {"theta", {Expr::Twist, 1}}, {"thetai", {Expr::TwistInv, 1}}, {"b", {Expr::Cup, 1}},
      {"d", {Expr::Cap, 1}},       {"bt", {Expr::CupT, 1}},      {"dt", {Expr::CapT, 1}},
      {"delta", {Expr::Delta, 1}}};
  return k;
}

std::string kw_name(Expr::Kind k) {
  for (const auto& [n, v] : keywords())
    if (v.first == k) return n;
  return "?";
}

std::string at(int col) { return " at column " + std::to_string(col); }

class Parser {
 public:
  Parser(const Engine& E, const std::string& text, const Env& env) : E_(E), env_(env), toks_(lex(text)) {}

  ExprPtr run() {
    auto e = expr();
    if (peek().t != Tok::End) throw SyntaxError("unexpected '" + peek().s + "'" + at(peek().col));
    return e;
  }

 private:
  const Tok& peek(int k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Tok take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  void expect(Tok::T t, const char* what) {
    if (peek().t != t) throw SyntaxError(std::string("expected ") + what + at(peek().col));
    take();
  }

  ExprPtr expr() {
    ExprPtr l = term();
    while (peek().t == Tok::Dot) {
      int col = take().col;
      ExprPtr r = term();
      if (l->dom != r->cod)
        throw TypeMismatch("cannot compose " + l->dom.str(E_.cat()) + " <- " + r->cod.str(E_.cat()) + at(col));
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Compose;
      e->kids = {l, r};
      e->pos = l->pos;
      e->dom = r->dom;
      e->cod = l->cod;
      l = e;
    }
    return l;
  }

  ExprPtr term() {
    ExprPtr l = factor();
    while (peek().t == Tok::Star) {
      take();
      ExprPtr r = factor();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Tensor;
      e->kids = {l, r};
      e->pos = l->pos;
      e->dom = E_.tensor(l->dom, r->dom);
      e->cod = E_.tensor(l->cod, r->cod);
      l = e;
    }
    return l;
  }

  ExprPtr factor() {
    if (peek().t == Tok::LP) {
      take();
      ExprPtr e = expr();
      expect(Tok::RP, "')'");
      return e;
    }
    if (peek().t != Tok::Ident) throw SyntaxError("expected a generator or '('" + at(peek().col));
    Tok t = take();
    auto kw = keywords().find(t.s);
    auto e = std::make_shared<Expr>();
    e->pos = t.col;
    if (kw != keywords().end() && peek().t == Tok::LB) {
      take();
      e->kind = kw->second.first;
      std::vector<Obj> objs;
      for (;;) {
        auto [w, o] = word();
        e->words.push_back(w);
        objs.push_back(o);
        if (peek().t == Tok::Comma) {
          take();
          continue;
        }
        expect(Tok::RB, "']' or ','");
        break;
      }
      if ((int)objs.size() != kw->second.second)
        throw SyntaxError(t.s + " takes " + std::to_string(kw->second.second) + " word(s)" + at(t.col));
      type_prim(*e, objs);
      return e;
    }
    e->kind = Expr::Name;
    e->name = t.s;
    auto it = env_.find(t.s);
    if (it == env_.end()) throw UnboundName("'" + t.s + "'" + at(t.col));
    if (!std::holds_alternative<Mor>(it->second))
      throw TypeMismatch("'" + t.s + "' is an object, not a morphism" + at(t.col));
    const Mor& m = std::get<Mor>(it->second);
    e->dom = m.dom;
    e->cod = m.cod;
    return e;
  }

  std::pair<std::vector<std::string>, Obj> word() {
    std::vector<std::string> w;
    Obj o = Obj::unit();
    if (peek().t != Tok::Ident) throw SyntaxError("expected a label" + at(peek().col));
    while (peek().t == Tok::Ident) {
      Tok t = take();
      w.push_back(t.s);
      o = E_.tensor(o, item(t));
    }
    return {w, o};
  }

  Obj item(const Tok& t) {
    const auto& C = E_.cat();
    for (int i = 0; i < C.size(); ++i)
      if (C.labels[i] == t.s) return Obj::word({i});
    auto it = env_.find(t.s);
    if (it == env_.end()) throw UnboundName("'" + t.s + "'" + at(t.col));
    if (!std::holds_alternative<Obj>(it->second))
      throw TypeMismatch("'" + t.s + "' is a morphism, not an object" + at(t.col));
    return std::get<Obj>(it->second);
  }

  void type_prim(Expr& e, const std::vector<Obj>& o) {
    const Obj& U = o[0];
    switch (e.kind) {
      case Expr::Id:
      case Expr::Twist:
      case Expr::TwistInv:
      case Expr::Delta: e.dom = e.cod = U; break;
      case Expr::Braid:
        e.dom = E_.tensor(U, o[1]);
        e.cod = E_.tensor(o[1], U);
        break;
      case Expr::BraidInv:
        e.dom = E_.tensor(o[1], U);
        e.cod = E_.tensor(U, o[1]);
        break;
      case Expr::Cup:
        e.dom = Obj::unit();
        e.cod = E_.tensor(U, E_.dual(U));
        break;
      case Expr::Cap:
        e.dom = E_.tensor(E_.dual(U), U);
        e.cod = Obj::unit();
        break;
      case Expr::CupT:
        e.dom = Obj::unit();
        e.cod = E_.tensor(E_.dual(U), U);
        break;
      case Expr::CapT:
        e.dom = E_.tensor(U, E_.dual(U));
        e.cod = Obj::unit();
        break;
      default: break;
    }
  }

  const Engine& E_;
  const Env& env_;
  std::vector<Tok> toks_;
  size_t i_ = 0;
};

// re-resolve a bracket word at evaluation time
Obj resolve(const Engine& E, const std::vector<std::string>& w, const Env& env) {
  const auto& C = E.cat();
  Obj o = Obj::unit();
  for (const auto& s : w) {
    int lab = -1;
    for (int i = 0; i < C.size(); ++i)
      if (C.labels[i] == s) lab = i;
    if (lab >= 0) {
      o = E.tensor(o, Obj::word({lab}));
      continue;
    }
    auto it = env.find(s);
    if (it == env.end()) throw UnboundName("'" + s + "'");
    if (!std::holds_alternative<Obj>(it->second)) throw TypeMismatch("'" + s + "' is a morphism");
    o = E.tensor(o, std::get<Obj>(it->second));
  }
  return o;
}

std::string print_rec(const Expr& e, int ctx) {
  // ctx: 0 top / compose operand on the left, 1 right operand of compose,
  // 2 left tensor operand, 3 right tensor operand
  switch (e.kind) {
    case Expr::Compose: {
      std::string s = print_rec(*e.kids[0], 0) + " . " + print_rec(*e.kids[1], 1);
      return ctx == 0 ? s : "(" + s + ")";
    }
    case Expr::Tensor: {
      std::string s = print_rec(*e.kids[0], 2) + " * " + print_rec(*e.kids[1], 3);
      return ctx == 3 ? "(" + s + ")" : s;
    }
    case Expr::Name: return e.name;
    default: {
      std::string s = kw_name(e.kind) + "[";
      for (size_t i = 0; i < e.words.size(); ++i) {
        if (i) s += ", ";
        for (size_t j = 0; j < e.words[i].size(); ++j) s += (j ? " " : "") + e.words[i][j];
      }
      return s + "]";
    }
  }
}

}  // namespace

ExprPtr parse_diagram(const Engine& E, const std::string& text, const Env& env) {
  return Parser(E, text, env).run();
}

std::string print_diagram(const Expr& e) { return print_rec(e, 0); }

bool same_ast(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.words != b.words || a.name != b.name || a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!same_ast(*a.kids[i], *b.kids[i])) return false;
  return true;
}

Mor eval_diagram(const Engine& E, const Expr& e, const Env& env) {
  auto arg = [&](int i) { return resolve(E, e.words[i], env); };
  switch (e.kind) {
    case Expr::Compose: return E.compose(eval_diagram(E, *e.kids[0], env), eval_diagram(E, *e.kids[1], env));
    case Expr::Tensor: return E.tensor(eval_diagram(E, *e.kids[0], env), eval_diagram(E, *e.kids[1], env));
    case Expr::Id: return E.id(arg(0));
    case Expr::Braid: return E.braid(arg(0), arg(1), 1);
    case Expr::BraidInv: return E.braid(arg(0), arg(1), -1);
    case Expr::Twist: return E.twist(arg(0), 1);
    case Expr::TwistInv: return E.twist(arg(0), -1);
    case Expr::Cup: return E.b(arg(0));
    case Expr::Cap: return E.d(arg(0));
    case Expr::CupT: return E.bt(arg(0));
    case Expr::CapT: return E.dt(arg(0));
    case Expr::Delta: return E.delta(arg(0));
    case Expr::Name: {
      auto it = env.find(e.name);
      if (it == env.end()) throw UnboundName("'" + e.name + "'");
      if (!std::holds_alternative<Mor>(it->second)) throw TypeMismatch("'" + e.name + "' is an object");
      return std::get<Mor>(it->second);
    }
  }
  throw InternalInconsistency("unknown expression kind");
}

}  // namespace tcalg
