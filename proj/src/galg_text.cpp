#include <cctype>

#include "sqcas/parse_error.hpp"
#include "sqcas/symbols.hpp"

namespace sqcas::galg {

SymbolTable SymbolTable::standard() {
  SymbolTable t;
  t.declare("θ", {Parity::odd, true, false});
  t.declare("ε", {Parity::odd, true, false});
  t.declare("ψ", {Parity::odd, false, false});
  t.declare("x", {});
  t.declare("D", {});
  t.declare("p", {});
  // Supersoliton: x-dependent profiles are constants with respect to t.
  t.declare("ϑ", {Parity::odd, true, false});
  t.declare("χ", {Parity::odd, true, false});
  for (const char* name : {"√α₀", "β", "σ", "atan_σ", "datan_σ", "φ_cl", "s_half"})
    t.declare(name, {Parity::even, true, true});
  return t;
}

SymbolTable::Info SymbolTable::lookup(const std::string& name) const {
  auto it = table_.find(name);
  return it == table_.end() ? Info{} : it->second;
}

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& table) : text_(text), table_(table) {}

  GradedExpr parse_all() {
    skip_ws();
    GradedExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  const SymbolTable& table_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  unsigned char peek() const { return at_end() ? 0 : static_cast<unsigned char>(text_[pos_]); }

  void advance() {
    unsigned char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;
    }
  }

  void skip_ws() {
    while (!at_end() && std::isspace(peek())) advance();
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == static_cast<unsigned char>(c)) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  GradedExpr expr() {
    GradedExpr out;
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    GradedExpr t = term();
    out += negative ? -t : t;
    for (;;) {
      if (accept('+'))
        out += term();
      else if (accept('-'))
        out -= term();
      else
        return out;
    }
  }

  GradedExpr term() {
    GradedExpr out = factor();
    while (accept('*')) out = mul(out, factor());
    return out;
  }

  long integer() {
    skip_ws();
    if (!std::isdigit(peek())) fail("expected integer");
    std::string digits;
    while (std::isdigit(peek())) {
      digits += static_cast<char>(peek());
      advance();
    }
    return std::stol(digits);
  }

  int exponent() {
    if (accept('(')) {
      bool neg = accept('-');
      long v = integer();
      expect(')');
      return static_cast<int>(neg ? -v : v);
    }
    bool neg = accept('-');
    long v = integer();
    return static_cast<int>(neg ? -v : v);
  }

  GradedExpr factor() {
    skip_ws();
    unsigned char c = peek();
    GradedExpr base;
    if (c == '(') {
      advance();
      base = expr();
      expect(')');
    } else if (std::isdigit(c)) {
      mpz_class num(std::to_string(integer()));
      mpz_class den = 1;
      if (peek() == '/') {
        advance();
        den = mpz_class(std::to_string(integer()));
        if (den == 0) fail("zero denominator");
      }
      base = GradedExpr(Coefficient(mpq_class(num, den)));
    } else if (ident_start(c)) {
      base = atom();
    } else if (at_end()) {
      fail("unexpected end of input");
    } else {
      fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
    }
    if (accept('^')) base = pow(base, exponent());
    return base;
  }

  GradedExpr atom() {
    std::size_t line = line_, col = col_;
    std::string name;
    while (!at_end() && ident_char(peek())) {
      name += static_cast<char>(peek());
      advance();
    }
    if (name == "i") return GradedExpr(Coefficient::imaginary_unit());
    SymbolTable::Info info = table_.lookup(name);
    Atom a;
    a.name = name;
    a.parity = info.parity;
    a.constant = info.constant;
    a.real = info.real;
    if (peek() == '~') {
      if (a.real) throw ParseError("real atom '" + name + "' has no conjugate", line, col);
      a.conjugated = true;
      advance();
    }
    while (peek() == '\'') {
      ++a.dot_order;
      advance();
    }
    return GradedExpr(a);
  }
};

}  // namespace

GradedExpr parse(std::string_view text, const SymbolTable& table) {
  return Parser(text, table).parse_all();
}

}  // namespace sqcas::galg
