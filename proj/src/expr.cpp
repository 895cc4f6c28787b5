#include "dertower/expr.hpp"

#include <cctype>

namespace dertower {

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eof() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    bool neg = accept('-');
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + (s_[pos_++] - '0');
    return neg ? -v : v;
  }
  Rat rational() {
    long num = integer();
    if (accept('/')) {
      long den = integer();
      if (den == 0) fail("zero denominator");
      return rat(num, den);
    }
    return rat(num);
  }
  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("parse error at position " + std::to_string(pos_) + ": " + msg);
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

int generator_index(Lexer& lx, int n) {
  long i = lx.integer();
  if (i < 1 || i > n) lx.fail("generator index out of range");
  return static_cast<int>(i);
}

// ---- Lie ----

LieElt lie_expr(Lexer& lx, LyndonTable& T, int d);

LieElt lie_factor(Lexer& lx, LyndonTable& T, int d) {
  if (lx.accept('x')) return lie_gen(T, generator_index(lx, T.n()));
  if (lx.accept('[')) {
    LieElt a = lie_expr(lx, T, d);
    lx.expect(',');
    LieElt b = lie_expr(lx, T, d);
    lx.expect(']');
    return lie_bracket(T, a, b, d);
  }
  if (lx.accept('(')) {
    LieElt a = lie_expr(lx, T, d);
    lx.expect(')');
    return a;
  }
  lx.fail("expected x<i>, '[' or '('");
}

LieElt lie_term(Lexer& lx, LyndonTable& T, int d) {
  Rat c(1);
  if (lx.at_number()) {
    c = lx.rational();
    lx.expect('*');
  }
  return lie_scale(lie_factor(lx, T, d), c);
}

LieElt lie_expr(Lexer& lx, LyndonTable& T, int d) {
  bool neg = lx.accept('-');
  LieElt out = lie_term(lx, T, d);
  if (neg) out = lie_scale(out, Rat(-1));
  while (true) {
    if (lx.accept('+'))
      lie_add_scaled(out, Rat(1), lie_term(lx, T, d));
    else if (lx.accept('-'))
      lie_add_scaled(out, Rat(-1), lie_term(lx, T, d));
    else
      break;
  }
  return out;
}

// ---- associative ----

AssocElt assoc_expr(Lexer& lx, int n, int d);

AssocElt assoc_atom(Lexer& lx, int n, int d) {
  if (lx.accept('x')) return assoc_gen(n, generator_index(lx, n));
  if (lx.accept('[')) {
    AssocElt a = assoc_expr(lx, n, d);
    lx.expect(',');
    AssocElt b = assoc_expr(lx, n, d);
    lx.expect(']');
    return assoc_commutator(a, b, d);
  }
  if (lx.accept('(')) {
    AssocElt a = assoc_expr(lx, n, d);
    lx.expect(')');
    return a;
  }
  lx.fail("expected x<i>, '[' or '('");
}

AssocElt assoc_factor(Lexer& lx, int n, int d) {
  AssocElt a = assoc_atom(lx, n, d);
  if (lx.accept('^')) {
    long k = lx.integer();
    if (k < 0) lx.fail("negative power");
    a = assoc_pow(a, static_cast<int>(k), d);
  }
  return a;
}

AssocElt assoc_term(Lexer& lx, int n, int d) {
  Rat c(1);
  bool have_scalar = false;
  if (lx.at_number()) {
    c = lx.rational();
    have_scalar = true;
  }
  AssocElt prod = assoc_one();
  bool any = false;
  while (true) {
    char p = lx.peek();
    if (p == 'x' || p == '[' || p == '(') {
      if (any || have_scalar) {
        // optional explicit '*'
      }
      prod = product(prod, assoc_factor(lx, n, d), d);
      any = true;
      lx.accept('*');
    } else if (p == '*') {
      lx.expect('*');
    } else {
      break;
    }
  }
  if (!any && !have_scalar) lx.fail("empty term");
  return assoc_scale(prod, c);
}

AssocElt assoc_expr(Lexer& lx, int n, int d) {
  bool neg = lx.accept('-');
  AssocElt out = assoc_term(lx, n, d);
  if (neg) out = assoc_scale(out, Rat(-1));
  while (true) {
    if (lx.accept('+'))
      assoc_add_scaled(out, Rat(1), assoc_term(lx, n, d));
    else if (lx.accept('-'))
      assoc_add_scaled(out, Rat(-1), assoc_term(lx, n, d));
    else
      break;
  }
  return out;
}

// ---- derivations ----

Derivation deriv_factor(Lexer& lx, LyndonTable& T, int d) {
  const int n = T.n();
  if (lx.accept_word("AD(")) {
    AssocElt h = assoc_expr(lx, n, d);
    lx.expect(')');
    return AD(T, h, d);
  }
  if (lx.accept_word("ad(")) {
    LieElt f = lie_expr(lx, T, d);
    lx.expect(')');
    return ad_inner(T, f, d);
  }
  if (lx.accept_word("del(")) {
    int i = generator_index(lx, n);
    lx.expect(',');
    LieElt f = lie_expr(lx, T, d);
    lx.expect(')');
    return del(T, i, f);
  }
  if (lx.accept_word("E(")) {
    int p = generator_index(lx, n);
    lx.expect(',');
    int q = generator_index(lx, n);
    lx.expect(')');
    return gl_unit(n, p, q);
  }
  if (lx.accept('(')) {
    // parenthesized derivation sum
    Derivation out = deriv_factor(lx, T, d);
    while (true) {
      if (lx.accept('+')) {
        deriv_add_scaled(T, out, Rat(1), deriv_factor(lx, T, d));
      } else if (lx.accept('-')) {
        deriv_add_scaled(T, out, Rat(-1), deriv_factor(lx, T, d));
      } else
        break;
    }
    lx.expect(')');
    return out;
  }
  lx.fail("expected AD(...), ad(...), del(i, f), E(p,q) or '('");
}

Derivation deriv_term(Lexer& lx, LyndonTable& T, int d) {
  Rat c(1);
  if (lx.at_number()) {
    c = lx.rational();
    lx.expect('*');
  }
  Derivation D = deriv_factor(lx, T, d);
  return is_zero(c - Rat(1)) ? D : deriv_scale(T, D, c);
}

}  // namespace

LieElt parse_lie(LyndonTable& T, const std::string& text, int d) {
  Lexer lx(text);
  LieElt out = lie_expr(lx, T, d);
  if (!lx.eof()) lx.fail("trailing input");
  return lie_truncate(T, out, d);
}

AssocElt parse_assoc(int n, const std::string& text, int d) {
  Lexer lx(text);
  AssocElt out = assoc_expr(lx, n, d);
  if (!lx.eof()) lx.fail("trailing input");
  return out;
}

Derivation parse_deriv(LyndonTable& T, const std::string& text, int d) {
  Lexer lx(text);
  bool neg = lx.accept('-');
  Derivation out = deriv_term(lx, T, d);
  if (neg) out = deriv_scale(T, out, Rat(-1));
  while (true) {
    if (lx.accept('+')) {
      deriv_add_scaled(T, out, Rat(1), deriv_term(lx, T, d));
    } else if (lx.accept('-')) {
      deriv_add_scaled(T, out, Rat(-1), deriv_term(lx, T, d));
    } else
      break;
  }
  if (!lx.eof()) lx.fail("trailing input");
  return out;
}

}  // namespace dertower
