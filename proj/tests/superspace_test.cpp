#include <doctest.h>

#include "generators.hpp"
#include "sqcas/superspace.hpp"
#include "sqcas/symbols.hpp"

using namespace sqcas;
using namespace sqcas::superspace;
using galg::parse;

TEST_CASE("expand_superfield") {
  auto phi = expand_superfield(Superfield::generic());
  CHECK(phi == parse("x + i*θ*ψ - i*ψ~*θ~ + θ~*θ*D"));
  CHECK(phi.size() == 4);
  CHECK(galg::conjugate(phi) == phi);
  CHECK(expand_superfield(Superfield::bosonic(GradedExpr(symbols::x()))) == parse("x"));
}

TEST_CASE("supercharges on coordinates and fields") {
  CHECK(apply_Q(parse("θ")) == parse("i"));
  CHECK(apply_Q(parse("x")) == parse("-θ~*x'"));
  CHECK(apply_Q_star(parse("θ~")) == parse("-i"));
  CHECK(apply_Q_star(parse("x")) == parse("θ*x'"));
}

TEST_CASE("covariant derivatives") {
  CHECK(apply_D_cov(parse("θ")) == parse("1"));
  CHECK(apply_D_cov(parse("x")) == parse("-i*θ~*x'"));
  CHECK(apply_D_cov_star(parse("θ~")) == parse("1"));
  // D_θΦ = iψ − θ*D − iθ*ẋ + θ*θψ̇ (the last term is −θθ*ψ̇).
  auto dphi = apply_D_cov(expand_superfield(Superfield::generic()));
  CHECK(dphi == parse("i*ψ - θ~*D - i*θ~*x' + θ~*θ*ψ'"));
  CHECK(dphi == parse("i*ψ - θ~*D - i*θ~*x' - θ*θ~*ψ'"));
  // Its conjugate is the left factor of the kinetic product.
  CHECK(galg::conjugate(dphi) == parse("-i*ψ~ - θ*D + i*θ*x' + θ~*θ*ψ~'"));
}

TEST_CASE("algebra_report on a generic superfield") {
  auto report = algebra_report();
  REQUIRE(report.residuals.size() == 6);
  for (const auto& r : report.residuals) {
    INFO(r.name << " = " << galg::to_string(r.value));
    CHECK(r.passed());
  }
  CHECK(report.passed());
}

TEST_CASE("anticommutator {D,D*} equals -2i d/dt") {
  auto phi = expand_superfield(Superfield::generic());
  Operator d = [](const GradedExpr& e) { return apply_D_cov(e); };
  Operator ds = [](const GradedExpr& e) { return apply_D_cov_star(e); };
  CHECK(anticommutator(d, ds, phi) == Coefficient(0, -2) * galg::time_derivative(phi));
}

TEST_CASE("wrong conventions leave residuals") {
  Conventions flipped;
  flipped.q = 1;
  auto report = algebra_report(flipped);
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.residuals[0].passed());
}

TEST_CASE("convention_search pins a unique sign set") {
  auto found = convention_search();
  REQUIRE(found.size() == 1);
  CHECK(found.front() == Conventions{});
  CHECK(found.front().q == -1);
  CHECK(found.front().q_star == 1);
  CHECK(found.front().d == -1);
  CHECK(found.front().d_star == -1);
}

TEST_CASE("property: superalgebra holds on arbitrary expressions") {
  std::mt19937_64 rng(99);
  Operator q = [](const GradedExpr& e) { return apply_Q(e); };
  Operator d = [](const GradedExpr& e) { return apply_D_cov(e); };
  for (int i = 0; i < 200; ++i) {
    auto e = testing::random_expr(rng);
    CHECK(algebra_residuals(e).passed());
    CHECK(anticommutator(d, q, e).is_zero());
  }
}

TEST_CASE("susy_vary: vanishing parameters") {
  auto v = susy_vary(Superfield::generic(), SusyParams::none());
  CHECK(v.delta_phi.is_zero());
  CHECK(v.computed.x.is_zero());
  CHECK(v.computed.psi.is_zero());
  CHECK(v.computed.psi_star.is_zero());
  CHECK(v.computed.d.is_zero());
}

TEST_CASE("susy_vary: generic superfield") {
  auto v = susy_vary(Superfield::generic(), SusyParams::generic());
  CHECK(v.computed.x == parse("i*ε~*ψ~ + i*ε*ψ"));
  CHECK(v.computed.psi == parse("i*ε~*D - ε~*x'"));
  CHECK(v.computed.psi_star == parse("-i*ε*D - ε*x'"));
  CHECK(v.computed.d == parse("ε~*ψ~' - ε*ψ'"));
  CHECK(v.computed.d == -galg::time_derivative(parse("ε*ψ + ψ~*ε~")));

  // Every computed law is the negative of the reference law.
  CHECK(v.sign_x == -1);
  CHECK(v.sign_psi == -1);
  CHECK(v.sign_d == -1);
  CHECK_FALSE(v.matches_reference());

  // δψ* is the conjugate of δψ.
  CHECK(galg::conjugate(v.computed.psi) == v.computed.psi_star);
}

TEST_CASE("susy_vary: bosonic superfield") {
  auto v = susy_vary(Superfield::bosonic(GradedExpr(symbols::x())), SusyParams::generic());
  CHECK(v.computed.x.is_zero());
  CHECK(v.reference.x.is_zero());
  CHECK(v.computed.psi == parse("-ε~*x'"));
  CHECK(v.reference.psi == parse("ε~*x'"));
  CHECK(v.sign_psi == -1);
}

TEST_CASE("susy_vary: variation is real") {
  auto v = susy_vary(Superfield::generic(), SusyParams::generic());
  CHECK(galg::conjugate(v.delta_phi) == v.delta_phi);
}

TEST_CASE("susy_vary rejects even parameters") {
  SusyParams bad{parse("x"), parse("ε~")};
  CHECK_THROWS_AS(susy_vary(Superfield::generic(), bad), std::invalid_argument);
}
