#include "padist/parse.hpp"

#include <cctype>

#include "padist/errors.hpp"

namespace padist {
namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Ast run() {
    Ast a = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("column " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Ast node(Ast::Kind k, std::size_t pos, std::vector<Ast> kids) {
    Ast a;
    a.kind = k;
    a.pos = pos;
    a.kids = std::move(kids);
    return a;
  }

  Ast expr() {
    Ast a = term();
    for (;;) {
      skip();
      std::size_t pos = i_;
      if (eat('+')) {
        a = node(Ast::Add, pos, {a, term()});
      } else if (eat('-')) {
        a = node(Ast::Sub, pos, {a, term()});
      } else {
        return a;
      }
    }
  }

  Ast term() {
    Ast a = unary();
    for (;;) {
      skip();
      std::size_t pos = i_;
      if (eat('*')) {
        a = node(Ast::Mul, pos, {a, unary()});
      } else if (eat('/')) {
        a = node(Ast::Div, pos, {a, unary()});
      } else {
        return a;
      }
    }
  }

  Ast unary() {
    skip();
    std::size_t pos = i_;
    if (eat('-')) return node(Ast::Neg, pos, {unary()});
    return power();
  }

  long integer() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer exponent");
    if (i_ - st > 9) fail("exponent too large");
    long v = std::stol(s_.substr(st, i_ - st));
    return neg ? -v : v;
  }

  Ast power() {
    Ast a = atom();
    skip();
    std::size_t pos = i_;
    if (eat('^')) {
      long k;
      if (eat('(')) {
        k = integer();
        if (!eat(')')) fail("expected ')'");
      } else {
        k = integer();
      }
      Ast r = node(Ast::Pow, pos, {a});
      r.exponent = k;
      return r;
    }
    return a;
  }

  Ast atom() {
    skip();
    std::size_t pos = i_;
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Ast a = expr();
      if (!eat(')')) fail("expected ')'");
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      Ast a;
      a.kind = Ast::Num;
      a.pos = pos;
      a.num = Rat(Int(s_.substr(st, i_ - st)));
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      std::string name = s_.substr(st, i_ - st);
      if (eat('(')) {
        Ast a = node(Ast::Call, pos, {expr()});
        a.name = name;
        if (!eat(')')) fail("expected ')'");
        return a;
      }
      Ast a;
      a.kind = Ast::Sym;
      a.pos = pos;
      a.name = name;
      return a;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Ast parse_expr(const std::string& text) { return Parser(text).run(); }

}  // namespace padist
