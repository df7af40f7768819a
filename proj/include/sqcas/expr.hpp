#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "sqcas/reduction.hpp"

namespace sqcas::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Superpotential / potential expression in one variable.
struct Node {
  enum class Kind { number, variable, add, sub, mul, div, neg, pow, sin, cos };

  Kind kind = Kind::number;
  mpq_class value;  // number
  int exponent = 0; // pow
  std::vector<NodePtr> args;

  static NodePtr number(mpq_class v);
  static NodePtr variable();
  static NodePtr unary(Kind k, NodePtr a);
  static NodePtr binary(Kind k, NodePtr a, NodePtr b);
  static NodePtr power(NodePtr base, int exponent);
};

/// Structural equality.
bool equal(const Node& a, const Node& b);

/// Grammar, loosest first: sums, products, unary minus, integer powers,
/// primaries (literal, x / Φ / Phi, sin(...), cos(...), parentheses).
/// "3/2" and "1.25" are single exact literals. Throws ParseError.
NodePtr parse_superpotential(std::string_view source);

/// Prints with the minimal parentheses needed to parse back to the same tree.
std::string to_string(const Node& n);

/// Exact polynomial in x, or nullopt when the tree is not a polynomial
/// (trigonometric factors, division by x, negative powers of x).
std::optional<reduction::SuperpotentialSeries> to_series(const Node& n);

double evaluate(const Node& n, double x);

/// d/dx, with constant folding of trivial zeros and ones.
NodePtr derivative(const Node& n);

}  // namespace sqcas::expr
