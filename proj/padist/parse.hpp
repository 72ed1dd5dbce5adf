#pragma once

// Text forms for scalars and distributions:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] integer | '^' '(' ['-'] integer ')')?
//   atom   := integer | name | name '(' expr ')' | '(' expr ')'
// Names: p, pi, w, bK (generator K), bI_J (generator b_IJ of an L-group),
// log(...).  Errors report a 0-based column.

#include <string>
#include <vector>

#include "padist/arith.hpp"

namespace padist {

struct Ast {
  enum Kind { Num, Sym, Add, Sub, Mul, Div, Neg, Pow, Call };
  Kind kind = Num;
  Rat num;
  std::string name;
  long exponent = 0;
  std::size_t pos = 0;
  std::vector<Ast> kids;
};

Ast parse_expr(const std::string& text);

}  // namespace padist
