#pragma once
// Textual string-diagram language.
//   expr   := term { "." term }          f . g  is  f o g
//   term   := factor { "*" factor }      tensor product
//   factor := prim | "(" expr ")"
//   prim   := KW "[" word { "," word } "]" | NAME
//   word   := ITEM { ITEM }              ITEM is a label or an object bound in the env
// KW is one of id c ci theta thetai b d bt dt delta and is only a keyword when
// directly followed by "[".
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tcalg/mor.hpp"

namespace tcalg {

using Binding = std::variant<Obj, Mor>;
using Env = std::map<std::string, Binding>;

struct Expr {
  enum Kind { Id, Compose, Tensor, Braid, BraidInv, Twist, TwistInv, Cup, Cap, CupT, CapT, Delta, Name };
  Kind kind = Id;
  std::vector<std::vector<std::string>> words;  // bracket arguments, as written
  std::string name;                             // for Name
  std::vector<std::shared_ptr<const Expr>> kids;
  int pos = 0;  // 1-based column of the first token
  Obj dom, cod;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_diagram(const Engine& E, const std::string& text, const Env& env = {});
std::string print_diagram(const Expr& e);
// structural equality, ignoring source positions
bool same_ast(const Expr& a, const Expr& b);
Mor eval_diagram(const Engine& E, const Expr& e, const Env& env = {});
inline Mor eval_text(const Engine& E, const std::string& text, const Env& env = {}) {
  return eval_diagram(E, *parse_diagram(E, text, env), env);
}

}  // namespace tcalg
