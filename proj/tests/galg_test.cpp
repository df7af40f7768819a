#include <doctest.h>

#include "galg_properties.hpp"
#include "sqcas/parse_error.hpp"
#include "sqcas/symbols.hpp"

using namespace sqcas;
using namespace sqcas::galg;
using sqcas::symbols::theta;
using sqcas::symbols::theta_star;

namespace {

const Coefficient I = Coefficient::imaginary_unit();
GradedExpr E(std::string_view s) { return parse(s); }

}  // namespace

TEST_CASE("normalize: nilpotency and reordering sign") {
  CHECK(normalize(FactorList{theta(), theta()}).is_zero());
  CHECK(normalize(FactorList{theta_star(), theta()}) == -normalize(FactorList{theta(), theta_star()}));

  // (2θ)(3θ*) + 6θ*θ = 6θθ* - 6θθ*
  std::vector<FactorList> raw = {{Coefficient(2), theta(), Coefficient(3), theta_star()},
                                 {Coefficient(6), theta_star(), theta()}};
  CHECK(normalize(raw).is_zero());
}

TEST_CASE("normalize: odd powers and negative even powers") {
  auto x = symbols::x();
  CHECK(normalize(FactorList{std::pair{theta(), 2}}).is_zero());
  CHECK_THROWS_AS(normalize(FactorList{std::pair{theta(), -1}}), std::invalid_argument);
  CHECK(normalize(FactorList{std::pair{x, 3}, std::pair{x, -3}}) == GradedExpr(1));
}

TEST_CASE("mul") {
  auto th = GradedExpr(theta());
  auto ths = GradedExpr(theta_star());
  auto a = GradedExpr(Atom::even("a"));
  auto thpsi = mul(th, GradedExpr(symbols::psi()));

  CHECK(to_string(mul(th, ths)) == "θ*θ~");
  CHECK(mul(a + thpsi, a - thpsi) == mul(a, a));
  CHECK(mul(mul(th, ths), th).is_zero());
}

TEST_CASE("mul: parity of products is additive") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_homogeneous(rng, Parity::odd);
    auto b = testing::random_homogeneous(rng, Parity::odd);
    CHECK(mul(a, b).is_homogeneous(Parity::even));
    auto c = testing::random_homogeneous(rng, Parity::even);
    CHECK(mul(a, c).is_homogeneous(Parity::odd));
  }
}

TEST_CASE("left_derivative") {
  auto tt = E("θ*θ~");
  CHECK(left_derivative(tt, theta()) == GradedExpr(theta_star()));
  CHECK(left_derivative(tt, theta_star()) == -GradedExpr(theta()));
  CHECK(left_derivative(E("x*ψ~"), theta()).is_zero());
  CHECK_THROWS_AS(left_derivative(tt, symbols::x()), std::invalid_argument);
}

TEST_CASE("time_derivative") {
  auto x = symbols::x();
  CHECK(time_derivative(GradedExpr(x)) == GradedExpr(x.dotted()));
  // d/dt(ψ*ψ) = ψ̇*ψ + ψ*ψ̇
  auto lhs = time_derivative(E("ψ~*ψ"));
  auto rhs = E("ψ~'*ψ + ψ~*ψ'");
  CHECK(lhs == rhs);
  CHECK(time_derivative(E("θ*θ~")).is_zero());
  CHECK(time_derivative(E("ε*ψ")) == E("ε*ψ'"));
  CHECK(time_derivative(E("x^(-1)")) == E("-x^(-2)*x'"));
  CHECK(time_derivative(E("x^3"), 2) == E("6*x*x'^2 + 3*x^2*x''"));
}

TEST_CASE("berezin") {
  const Atom order[] = {theta(), theta_star()};
  const Atom only_theta[] = {theta()};
  CHECK(berezin(GradedExpr(theta()), only_theta) == GradedExpr(1));
  CHECK(berezin(E("x + θ~*D"), only_theta).is_zero());

  // ∫dθ* dθ (A + θB + θ*C + θ*θ E) = -E under the pinned orientation.
  auto e = E("A + θ*B + θ~*C + θ~*θ*F");
  CHECK(berezin(e, order) == -E("F"));
  CHECK(berezin_measure(e, theta(), theta_star()) == -E("F"));

  const Atom repeated[] = {theta(), theta()};
  CHECK_THROWS_AS(berezin(e, repeated), std::invalid_argument);
  const Atom even_atom[] = {symbols::x()};
  CHECK_THROWS_AS(berezin(e, even_atom), std::invalid_argument);
}

TEST_CASE("berezin orientation is pinned") {
  CHECK(kBerezinOrientation == 1);
  CHECK(berezin_measure(E("θ*θ~"), theta(), theta_star()) == GradedExpr(1));
  CHECK(berezin_measure(E("θ~*θ"), theta(), theta_star()) == GradedExpr(-1));
}

TEST_CASE("substitute") {
  auto d = symbols::aux();
  auto f1 = GradedExpr(Atom::even("f1"));
  CHECK(substitute(E("D^2"), d, -f1) == E("f1^2"));
  CHECK(substitute(E("θ*ψ"), symbols::psi(), GradedExpr(symbols::psi_star())) == E("θ*ψ~"));
  CHECK_THROWS_AS(substitute(E("θ*ψ"), symbols::psi(), GradedExpr(symbols::x())), std::invalid_argument);
  // Odd target deep inside a monomial keeps the reordering sign.
  CHECK(substitute(E("ψ*θ~"), symbols::psi(), E("θ")) == E("θ*θ~"));
}

TEST_CASE("substitute commutes with normalization") {
  std::mt19937_64 rng(11);
  const auto psi = symbols::psi();
  for (int i = 0; i < 200; ++i) {
    auto repl = testing::random_homogeneous(rng, Parity::odd);
    std::vector<FactorList> raw;
    for (int k = 0; k < 3; ++k) raw.push_back(testing::random_product(rng));
    // Substituting factor-by-factor before normalizing equals substituting after.
    GradedExpr before;
    for (const auto& f : raw) {
      GradedExpr prod(1);
      for (const auto& factor : f) {
        if (const auto* a = std::get_if<Atom>(&factor))
          prod = mul(prod, *a == psi ? repl : GradedExpr(*a));
        else
          prod = mul(prod, normalize(FactorList{factor}));
      }
      before += prod;
    }
    CHECK(substitute(normalize(raw), psi, repl) == before);
  }
}

TEST_CASE("conjugate") {
  // (iθψ)* = -iψ*θ* = +iθ*ψ*
  auto e = mul(I * GradedExpr(theta()), GradedExpr(symbols::psi()));
  auto c = conjugate(e);
  CHECK(c == E("-i*ψ~*θ~"));
  CHECK(c == E("i*θ~*ψ~"));
  CHECK(conjugate(c) == e);
  CHECK(conjugate(GradedExpr(symbols::x())) == GradedExpr(symbols::x()));

  // Real scalar superfield x + iθψ - iψ*θ* + θ*θD.
  auto phi = E("x + i*θ*ψ - i*ψ~*θ~ + θ~*θ*D");
  CHECK(conjugate(phi) == phi);
}

TEST_CASE("text format round trip and errors") {
  CHECK(to_string(E("(3/2)*x^2*θ*θ~")) == "(3/2)*x^2*θ*θ~");
  CHECK(to_string(GradedExpr()) == "0");
  CHECK(to_string(E("(1/2 + 3/4*i)*x")) == "(1/2+3/4*i)*x");
  CHECK(to_string(E("-i*ψ'")) == "-i*ψ'");

  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto e = testing::random_expr(rng);
    CHECK(parse(to_string(e)) == e);
  }

  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse("x~"), ParseError);
  try {
    parse("x * )");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 1);
    CHECK(err.column() == 5);
  }
}

TEST_CASE("latex output") {
  CHECK(to_latex(E("(1/2)*x'^2")) == "\\frac{1}{2} \\dot{x}^{2}");
  // ψ̇ sorts before ψ*, so the reordering flips the sign.
  CHECK(to_latex(E("-i*ψ~*ψ'")) == "i \\dot{\\psi} \\psi^{*}");
}

TEST_CASE("property: graded identities on random expressions") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    CHECK(testing::check_leibniz(rng));
    CHECK(testing::check_involution(rng));
    CHECK(testing::check_anticommutativity(rng));
    CHECK(testing::check_berezin_top(rng));
    CHECK(testing::check_normal_form(rng));
  }
}
