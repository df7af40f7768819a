#include <doctest.h>

#include <cmath>
#include <random>

#include "sqcas/expr.hpp"
#include "sqcas/parse_error.hpp"

using namespace sqcas;
using namespace sqcas::expr;
using Kind = Node::Kind;

namespace {

ParseError parse_failure(std::string_view source) {
  try {
    parse_superpotential(source);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no error for '" << std::string(source) << "'");
  return ParseError("", 0, 0);
}

NodePtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_int_distribution<long> num(0, 9), den(1, 4);
  switch (pick(rng)) {
    case 0: {
      mpq_class v(num(rng), den(rng));
      v.canonicalize();
      return Node::number(v);
    }
    case 1: return Node::variable();
    case 2: return Node::binary(Kind::add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 3: return Node::binary(Kind::sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4: return Node::binary(Kind::mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return Node::binary(Kind::div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return Node::unary(Kind::neg, random_tree(rng, depth - 1));
    case 7: return Node::power(random_tree(rng, depth - 1), std::uniform_int_distribution<int>(-3, 4)(rng));
    case 8: return Node::unary(Kind::sin, random_tree(rng, depth - 1));
    default: return Node::unary(Kind::cos, random_tree(rng, depth - 1));
  }
}

// Polynomial trees only: no division by x, no trig, nonnegative powers.
NodePtr random_polynomial_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  std::uniform_int_distribution<long> num(0, 5), den(1, 3);
  switch (pick(rng)) {
    case 0: {
      mpq_class v(num(rng), den(rng));
      v.canonicalize();
      return Node::number(v);
    }
    case 1: return Node::variable();
    case 2: return Node::binary(Kind::add, random_polynomial_tree(rng, depth - 1), random_polynomial_tree(rng, depth - 1));
    case 3: return Node::binary(Kind::sub, random_polynomial_tree(rng, depth - 1), random_polynomial_tree(rng, depth - 1));
    case 4: return Node::binary(Kind::mul, random_polynomial_tree(rng, depth - 1), random_polynomial_tree(rng, depth - 1));
    case 5: return Node::unary(Kind::neg, random_polynomial_tree(rng, depth - 1));
    default: return Node::power(random_polynomial_tree(rng, depth - 1), std::uniform_int_distribution<int>(0, 3)(rng));
  }
}

}  // namespace

TEST_CASE("single variable") {
  const auto n = parse_superpotential("x");
  CHECK(n->kind == Kind::variable);
  CHECK(parse_superpotential("Φ")->kind == Kind::variable);
  CHECK(parse_superpotential("Phi")->kind == Kind::variable);
}

TEST_CASE("polynomial maps to its series") {
  const auto series = to_series(*parse_superpotential("1/2*x^2 - 3*x^4"));
  REQUIRE(series);
  REQUIRE(series->degree() == 4);
  CHECK(series->coefficients()[0].is_zero());
  CHECK(series->coefficients()[1].is_zero());
  CHECK(series->coefficients()[2] == Coefficient::rational(1, 2));
  CHECK(series->coefficients()[3].is_zero());
  CHECK(series->coefficients()[4] == Coefficient(-3));
}

TEST_CASE("rational and decimal literals are exact") {
  const auto a = parse_superpotential("3/2");
  REQUIRE(a->kind == Kind::number);
  CHECK(a->value == mpq_class(3, 2));
  const auto b = parse_superpotential("1.25");
  REQUIRE(b->kind == Kind::number);
  CHECK(b->value == mpq_class(5, 4));
  CHECK(parse_superpotential(".5")->value == mpq_class(1, 2));
  // A blank turns the slash into division.
  CHECK(parse_superpotential("3 / 2")->kind == Kind::div);
  // The literal binds tighter than the power.
  const auto c = parse_superpotential("2/3^2");
  REQUIRE(c->kind == Kind::pow);
  CHECK(c->args[0]->value == mpq_class(2, 3));
}

TEST_CASE("precedence and associativity") {
  const auto s = to_series(*parse_superpotential("1 - x - x^2*2 + -x^3"));
  REQUIRE(s);
  CHECK(s->coefficients()[0] == Coefficient(1));
  CHECK(s->coefficients()[1] == Coefficient(-1));
  CHECK(s->coefficients()[2] == Coefficient(-2));
  CHECK(s->coefficients()[3] == Coefficient(-1));
  // -x^2 is -(x^2).
  const auto n = parse_superpotential("-x^2");
  REQUIRE(n->kind == Kind::neg);
  CHECK(n->args[0]->kind == Kind::pow);
  CHECK(evaluate(*parse_superpotential("8 / 2 / 2"), 0.0) == 2.0);
  CHECK(evaluate(*parse_superpotential("x^-1"), 4.0) == 0.25);
  CHECK(evaluate(*parse_superpotential("x^(-2)"), 2.0) == 0.25);
}

TEST_CASE("parse errors carry positions") {
  auto e = parse_failure("x^(1/2)");
  CHECK(std::string(e.what()).find("non-integer exponent") != std::string::npos);
  CHECK(e.line() == 1);
  CHECK(e.column() == 4);

  e = parse_failure("x^1.5");
  CHECK(std::string(e.what()).find("non-integer exponent") != std::string::npos);

  e = parse_failure("x + y");
  CHECK(std::string(e.what()).find("unknown identifier 'y'") != std::string::npos);
  CHECK(e.column() == 5);

  e = parse_failure("Φ + z");
  CHECK(e.column() == 5);

  e = parse_failure("x +\n  tan(x)");
  CHECK(e.line() == 2);
  CHECK(e.column() == 3);

  e = parse_failure("x^x");
  CHECK(std::string(e.what()).find("expected integer exponent") != std::string::npos);

  CHECK(std::string(parse_failure("1/0").what()).find("zero denominator") != std::string::npos);
  CHECK(std::string(parse_failure("(x").what()).find("expected ')'") != std::string::npos);
  CHECK(std::string(parse_failure("x )").what()).find("unexpected ')'") != std::string::npos);
  CHECK(std::string(parse_failure("").what()).find("unexpected end") != std::string::npos);
  CHECK(std::string(parse_failure("x $ 1").what()).find("unexpected character") != std::string::npos);
  CHECK(std::string(parse_failure("sin x").what()).find("expected '('") != std::string::npos);
}

TEST_CASE("printing") {
  CHECK(to_string(*parse_superpotential("1/2*x^2 - 3*x^4")) == "1/2*x^2 - 3*x^4");
  CHECK(to_string(*parse_superpotential("(x - 1)*(x + 1)")) == "(x - 1)*(x + 1)");
  CHECK(to_string(*parse_superpotential("x - (x - 1)")) == "x - (x - 1)");
  CHECK(to_string(*parse_superpotential("(x - x) - 1")) == "x - x - 1");
  CHECK(to_string(*parse_superpotential("2/3^2")) == "(2/3)^2");
  CHECK(to_string(*parse_superpotential("2 / 3^2")) == "2 / 3^2");
  CHECK(to_string(*parse_superpotential("(-x)^2")) == "(-x)^2");
  CHECK(to_string(*parse_superpotential("x^(-2)")) == "x^(-2)");
  CHECK(to_string(*parse_superpotential("sin(2*Phi)")) == "sin(2*x)");
}

TEST_CASE("parse, print, parse is the identity on a generated corpus") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto tree = random_tree(rng, 5);
    const std::string text = to_string(*tree);
    CAPTURE(text);
    const auto back = parse_superpotential(text);
    REQUIRE(equal(*tree, *back));
    CHECK(to_string(*back) == text);
  }
}

TEST_CASE("series agrees with evaluation") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto tree = random_polynomial_tree(rng, 4);
    CAPTURE(to_string(*tree));
    const auto series = to_series(*tree);
    REQUIRE(series);
    for (double x : {-1.3, -0.4, 0.0, 0.7, 1.1}) {
      double expected = 0.0;
      const auto& c = series->coefficients();
      for (std::size_t k = c.size(); k-- > 0;) expected = expected * x + c[k].real().get_d();
      const double got = evaluate(*tree, x);
      CHECK(std::abs(got - expected) <= 1e-9 * (1.0 + std::abs(expected)));
    }
  }
}

TEST_CASE("non-polynomials have no series") {
  CHECK_FALSE(to_series(*parse_superpotential("sin(x)")));
  CHECK_FALSE(to_series(*parse_superpotential("1 / x")));
  CHECK_FALSE(to_series(*parse_superpotential("x^(-1)")));
  CHECK_FALSE(to_series(*parse_superpotential("x / (x + 1)")));
  const auto s = to_series(*parse_superpotential("x / 2 + 2^(-1)"));
  REQUIRE(s);
  CHECK(s->coefficients()[0] == Coefficient::rational(1, 2));
  CHECK(s->coefficients()[1] == Coefficient::rational(1, 2));
  CHECK(to_series(*parse_superpotential("x - x"))->degree() == -1);
}

TEST_CASE("derivative matches central differences") {
  std::mt19937_64 rng(3);
  int compared = 0;
  for (int i = 0; i < 500; ++i) {
    const auto tree = random_tree(rng, 4);
    const auto d = derivative(*tree);
    CAPTURE(to_string(*tree));
    CAPTURE(to_string(*d));
    for (double x : {-0.9, 0.35, 1.4}) {
      auto stencil = [&](double h) {
        return (evaluate(*tree, x - 2 * h) - 8 * evaluate(*tree, x - h) + 8 * evaluate(*tree, x + h) -
                evaluate(*tree, x + 2 * h)) /
               (12 * h);
      };
      const double coarse = stencil(2e-3), fine = stencil(1e-3);
      const double exact = evaluate(*d, x);
      if (!std::isfinite(coarse + fine + exact)) continue;
      const double scale = 1.0 + std::abs(exact);
      // Only where the stencil has converged; near poles and fast
      // oscillations it says nothing.
      if (std::abs(coarse - fine) > 1e-6 * scale) continue;
      CHECK(std::abs(fine - exact) <= 1e-6 * scale);
      ++compared;
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("derivative of the polynomial series") {
  const auto tree = parse_superpotential("1/2*x^2 - 3*x^4 + 7");
  const auto d = to_series(*derivative(*tree));
  REQUIRE(d);
  CHECK(d->coefficients() == to_series(*tree)->derivative().coefficients());
  CHECK(to_string(*derivative(*parse_superpotential("x"))) == "1");
  CHECK(to_string(*derivative(*parse_superpotential("5"))) == "0");
}
