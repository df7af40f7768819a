#include "sqcas/expr.hpp"

#include <cctype>
#include <cmath>

#include "sqcas/parse_error.hpp"

namespace sqcas::expr {

namespace {

using Kind = Node::Kind;

bool is_ident_byte(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }

struct Token {
  enum class Type { number, ident, op, end } type = Type::end;
  mpq_class value;
  std::string text;
  std::size_t line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;
    const unsigned char c = src_[pos_];
    if (std::isdigit(c) || (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      t.type = Token::Type::number;
      t.value = read_number(t);
    } else if (is_ident_byte(c)) {
      t.type = Token::Type::ident;
      while (pos_ < src_.size() && (is_ident_byte(src_[pos_]) || std::isdigit(static_cast<unsigned char>(src_[pos_]))))
        t.text += advance();
    } else {
      t.type = Token::Type::op;
      t.text = std::string(1, advance());
      if (std::string_view("+-*/^()").find(t.text[0]) == std::string_view::npos)
        throw ParseError("unexpected character '" + t.text + "'", t.line, t.column);
    }
    return t;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;  // count code points, not continuation bytes
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string digits() {
    std::string out;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) out += advance();
    return out;
  }

  mpq_class read_number(const Token& t) {
    std::string whole = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      const std::string frac = digits();
      mpq_class v{mpz_class((whole.empty() ? "0" : whole) + frac), mpz_class("1" + std::string(frac.size(), '0'))};
      v.canonicalize();
      return v;
    }
    // "p/q" with no blanks is one literal.
    if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      advance();
      const std::string den = digits();
      if (mpz_class(den) == 0) throw ParseError("zero denominator", t.line, t.column);
      mpq_class v{mpz_class(whole), mpz_class(den)};
      v.canonicalize();
      return v;
    }
    return mpq_class(mpz_class(whole));
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { cur_ = lexer_.next(); }

  NodePtr parse() {
    auto n = sum();
    if (cur_.type != Token::Type::end) fail("unexpected '" + describe(cur_) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

  static std::string describe(const Token& t) {
    if (t.type == Token::Type::number) return t.value.get_str();
    return t.text;
  }

  bool at_op(char c) const { return cur_.type == Token::Type::op && cur_.text[0] == c; }
  void bump() { cur_ = lexer_.next(); }
  void expect(char c) {
    if (!at_op(c)) fail(std::string("expected '") + c + "'");
    bump();
  }

  NodePtr sum() {
    auto lhs = product();
    while (at_op('+') || at_op('-')) {
      const Kind k = at_op('+') ? Kind::add : Kind::sub;
      bump();
      lhs = Node::binary(k, lhs, product());
    }
    return lhs;
  }

  NodePtr product() {
    auto lhs = unary();
    while (at_op('*') || at_op('/')) {
      const Kind k = at_op('*') ? Kind::mul : Kind::div;
      bump();
      lhs = Node::binary(k, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (at_op('-')) {
      bump();
      return Node::unary(Kind::neg, unary());
    }
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (!at_op('^')) return base;
    bump();
    return Node::power(base, exponent());
  }

  int exponent() {
    const bool paren = at_op('(');
    if (paren) bump();
    const bool negative = at_op('-');
    if (negative) bump();
    if (cur_.type != Token::Type::number) fail("expected integer exponent");
    const mpq_class v = cur_.value;
    if (v.get_den() != 1) fail("non-integer exponent");
    if (!v.get_num().fits_sint_p()) fail("exponent out of range");
    bump();
    if (paren) {
      if (at_op('*') || at_op('/') || at_op('+') || at_op('-') || at_op('^')) fail("non-integer exponent");
      expect(')');
    }
    const int e = static_cast<int>(v.get_num().get_si());
    return negative ? -e : e;
  }

  NodePtr primary() {
    if (cur_.type == Token::Type::number) {
      auto n = Node::number(cur_.value);
      bump();
      return n;
    }
    if (cur_.type == Token::Type::ident) {
      const std::string name = cur_.text;
      if (name == "x" || name == "Φ" || name == "Phi") {
        bump();
        return Node::variable();
      }
      if (name == "sin" || name == "cos") {
        bump();
        expect('(');
        auto arg = sum();
        expect(')');
        return Node::unary(name == "sin" ? Kind::sin : Kind::cos, arg);
      }
      fail("unknown identifier '" + name + "'");
    }
    if (at_op('(')) {
      bump();
      auto inner = sum();
      expect(')');
      return inner;
    }
    if (cur_.type == Token::Type::end) fail("unexpected end of input");
    fail("unexpected '" + describe(cur_) + "'");
  }

  Lexer lexer_;
  Token cur_;
};

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::neg: return 3;
    case Kind::pow: return 4;
    case Kind::number: return n.value < 0 ? 3 : 5;
    default: return 5;
  }
}

std::string print(const Node& n, int min_prec) {
  std::string s;
  switch (n.kind) {
    case Kind::number: s = n.value.get_str(); break;
    case Kind::variable: s = "x"; break;
    case Kind::add: s = print(*n.args[0], 1) + " + " + print(*n.args[1], 2); break;
    case Kind::sub: s = print(*n.args[0], 1) + " - " + print(*n.args[1], 2); break;
    case Kind::mul: s = print(*n.args[0], 2) + "*" + print(*n.args[1], 3); break;
    // Blanks keep "a / b" from lexing as one rational literal.
    case Kind::div: s = print(*n.args[0], 2) + " / " + print(*n.args[1], 3); break;
    case Kind::neg: s = "-" + print(*n.args[0], 3); break;
    case Kind::pow:
      // Rational bases get parentheses for the reader; the lexer would not need them.
      s = (n.args[0]->kind == Kind::number && n.args[0]->value.get_den() != 1 ? "(" + print(*n.args[0], 0) + ")"
                                                                               : print(*n.args[0], 5)) +
          "^" + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent));
      break;
    case Kind::sin: s = "sin(" + print(*n.args[0], 0) + ")"; break;
    case Kind::cos: s = "cos(" + print(*n.args[0], 0) + ")"; break;
  }
  return precedence(n) < min_prec ? "(" + s + ")" : s;
}

using Poly = std::vector<Coefficient>;

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Coefficient(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

Poly poly_add(Poly a, const Poly& b, long sign) {
  if (a.size() < b.size()) a.resize(b.size(), Coefficient(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + Coefficient(sign) * b[i];
  return a;
}

Poly trimmed(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

std::optional<Poly> as_poly(const Node& n) {
  auto sub = [](const NodePtr& p) { return as_poly(*p); };
  switch (n.kind) {
    case Kind::number: return trimmed({Coefficient(n.value)});
    case Kind::variable: return Poly{Coefficient(0), Coefficient(1)};
    case Kind::add:
    case Kind::sub: {
      auto a = sub(n.args[0]), b = sub(n.args[1]);
      if (!a || !b) return std::nullopt;
      return trimmed(poly_add(*a, *b, n.kind == Kind::add ? 1 : -1));
    }
    case Kind::mul: {
      auto a = sub(n.args[0]), b = sub(n.args[1]);
      if (!a || !b) return std::nullopt;
      return trimmed(poly_mul(*a, *b));
    }
    case Kind::div: {
      auto a = sub(n.args[0]), b = sub(n.args[1]);
      if (!a || !b || b->size() != 1) return std::nullopt;
      const Coefficient inv = b->front().inverse();
      for (auto& c : *a) c = c * inv;
      return a;
    }
    case Kind::neg: {
      auto a = sub(n.args[0]);
      if (!a) return std::nullopt;
      for (auto& c : *a) c = -c;
      return a;
    }
    case Kind::pow: {
      auto a = sub(n.args[0]);
      if (!a) return std::nullopt;
      if (n.exponent < 0) {
        if (a->size() != 1) return std::nullopt;
        const Coefficient inv = a->front().inverse();
        Poly out{Coefficient(1)};
        for (int i = 0; i < -n.exponent; ++i) out = poly_mul(out, {inv});
        return out;
      }
      Poly out{Coefficient(1)};
      for (int i = 0; i < n.exponent; ++i) out = poly_mul(out, *a);
      return trimmed(out);
    }
    case Kind::sin:
    case Kind::cos: return std::nullopt;
  }
  return std::nullopt;
}

bool is_number(const NodePtr& n, long v) { return n->kind == Kind::number && n->value == v; }

NodePtr fold_add(NodePtr a, NodePtr b) {
  if (is_number(a, 0)) return b;
  if (is_number(b, 0)) return a;
  return Node::binary(Kind::add, a, b);
}

NodePtr fold_sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0)) return a;
  if (is_number(a, 0)) return Node::unary(Kind::neg, b);
  return Node::binary(Kind::sub, a, b);
}

NodePtr fold_mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0) || is_number(b, 0)) return Node::number(0);
  if (is_number(a, 1)) return b;
  if (is_number(b, 1)) return a;
  if (a->kind == Kind::number && b->kind == Kind::number) return Node::number(a->value * b->value);
  return Node::binary(Kind::mul, a, b);
}

NodePtr fold_neg(NodePtr a) {
  if (a->kind == Kind::number) return Node::number(-a->value);
  return Node::unary(Kind::neg, a);
}

}  // namespace

NodePtr Node::number(mpq_class v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = std::move(v);
  return n;
}

NodePtr Node::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  return n;
}

NodePtr Node::unary(Kind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = {std::move(a)};
  return n;
}

NodePtr Node::binary(Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = {std::move(a), std::move(b)};
  return n;
}

NodePtr Node::power(NodePtr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->exponent = exponent;
  n->args = {std::move(base)};
  return n;
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == Kind::number && a.value != b.value) return false;
  if (a.kind == Kind::pow && a.exponent != b.exponent) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

NodePtr parse_superpotential(std::string_view source) { return Parser(source).parse(); }

std::string to_string(const Node& n) { return print(n, 0); }

std::optional<reduction::SuperpotentialSeries> to_series(const Node& n) {
  auto p = as_poly(n);
  if (!p) return std::nullopt;
  return reduction::SuperpotentialSeries(std::move(*p));
}

double evaluate(const Node& n, double x) {
  auto arg = [&](std::size_t i) { return evaluate(*n.args[i], x); };
  switch (n.kind) {
    case Kind::number: return n.value.get_d();
    case Kind::variable: return x;
    case Kind::add: return arg(0) + arg(1);
    case Kind::sub: return arg(0) - arg(1);
    case Kind::mul: return arg(0) * arg(1);
    case Kind::div: return arg(0) / arg(1);
    case Kind::neg: return -arg(0);
    case Kind::pow: return std::pow(arg(0), n.exponent);
    case Kind::sin: return std::sin(arg(0));
    case Kind::cos: return std::cos(arg(0));
  }
  return 0.0;
}

NodePtr derivative(const Node& n) {
  auto d = [](const NodePtr& p) { return derivative(*p); };
  const auto& a = n.args;
  switch (n.kind) {
    case Kind::number: return Node::number(0);
    case Kind::variable: return Node::number(1);
    case Kind::add: return fold_add(d(a[0]), d(a[1]));
    case Kind::sub: return fold_sub(d(a[0]), d(a[1]));
    case Kind::mul: return fold_add(fold_mul(d(a[0]), a[1]), fold_mul(a[0], d(a[1])));
    case Kind::div: {
      auto num = fold_sub(fold_mul(d(a[0]), a[1]), fold_mul(a[0], d(a[1])));
      if (is_number(num, 0)) return num;
      return Node::binary(Kind::div, num, Node::power(a[1], 2));
    }
    case Kind::neg: {
      auto inner = d(a[0]);
      return is_number(inner, 0) ? inner : fold_neg(inner);
    }
    case Kind::pow: {
      if (n.exponent == 0) return Node::number(0);
      auto lowered = n.exponent == 1 ? Node::number(1) : Node::power(a[0], n.exponent - 1);
      return fold_mul(fold_mul(Node::number(n.exponent), lowered), d(a[0]));
    }
    case Kind::sin: return fold_mul(Node::unary(Kind::cos, a[0]), d(a[0]));
    case Kind::cos: return fold_mul(fold_neg(Node::unary(Kind::sin, a[0])), d(a[0]));
  }
  return Node::number(0);
}

}  // namespace sqcas::expr
