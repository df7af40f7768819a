#include "sqcas/superspace.hpp"

#include <stdexcept>

#include "sqcas/symbols.hpp"

namespace sqcas::superspace {

namespace {

const Coefficient kI = Coefficient::imaginary_unit();

GradedExpr theta() { return GradedExpr(symbols::theta()); }
GradedExpr theta_star() { return GradedExpr(symbols::theta_star()); }

Coefficient sign(int s) { return Coefficient(static_cast<long>(s)); }

int compare_sign(const GradedExpr& computed, const GradedExpr& reference) {
  if (computed == reference) return 1;
  if (computed == -reference) return -1;
  return 0;
}

}  // namespace

Superfield Superfield::generic() {
  return {GradedExpr(symbols::x()), GradedExpr(symbols::psi()), GradedExpr(symbols::psi_star()),
          GradedExpr(symbols::aux())};
}

Superfield Superfield::bosonic(GradedExpr x) { return {std::move(x), {}, {}, {}}; }

GradedExpr expand_superfield(const Superfield& phi) {
  return assemble({phi.x, phi.psi, phi.psi_star, phi.d});
}

GradedExpr assemble(const ComponentVariation& v) {
  return v.x + kI * (theta() * v.psi) - kI * (v.psi_star * theta_star()) + theta_star() * theta() * v.d;
}

GradedExpr apply_Q(const GradedExpr& e, const Conventions& conv) {
  return kI * galg::left_derivative(e, symbols::theta()) +
         sign(conv.q) * (theta_star() * galg::time_derivative(e));
}

GradedExpr apply_Q_star(const GradedExpr& e, const Conventions& conv) {
  return -kI * galg::left_derivative(e, symbols::theta_star()) +
         sign(conv.q_star) * (theta() * galg::time_derivative(e));
}

GradedExpr apply_D_cov(const GradedExpr& e, const Conventions& conv) {
  return galg::left_derivative(e, symbols::theta()) +
         sign(conv.d) * kI * (theta_star() * galg::time_derivative(e));
}

GradedExpr apply_D_cov_star(const GradedExpr& e, const Conventions& conv) {
  return galg::left_derivative(e, symbols::theta_star()) +
         sign(conv.d_star) * kI * (theta() * galg::time_derivative(e));
}

GradedExpr anticommutator(const Operator& a, const Operator& b, const GradedExpr& e) {
  return a(b(e)) + b(a(e));
}

bool AlgebraReport::passed() const {
  for (const auto& r : residuals)
    if (!r.passed()) return false;
  return true;
}

AlgebraReport algebra_residuals(const GradedExpr& probe, const Conventions& conv) {
  Operator q = [&conv](const GradedExpr& e) { return apply_Q(e, conv); };
  Operator qs = [&conv](const GradedExpr& e) { return apply_Q_star(e, conv); };
  Operator d = [&conv](const GradedExpr& e) { return apply_D_cov(e, conv); };
  Operator ds = [&conv](const GradedExpr& e) { return apply_D_cov_star(e, conv); };
  const GradedExpr two_i_dt = Coefficient(0, 2) * galg::time_derivative(probe);

  AlgebraReport report;
  report.residuals = {
      {"{Q,Q*} - 2i d/dt", anticommutator(q, qs, probe) - two_i_dt},
      {"{Q,Q}", anticommutator(q, q, probe)},
      {"{Q*,Q*}", anticommutator(qs, qs, probe)},
      {"{D,Q}", anticommutator(d, q, probe)},
      {"{D,Q*}", anticommutator(d, qs, probe)},
      {"{D,D*} + 2i d/dt", anticommutator(d, ds, probe) + two_i_dt},
  };
  return report;
}

AlgebraReport algebra_report(const Conventions& conv) {
  return algebra_residuals(expand_superfield(Superfield::generic()), conv);
}

std::vector<Conventions> convention_search() {
  const std::vector<GradedExpr> probes = {
      expand_superfield(Superfield::generic()),
      galg::parse("x^2*ψ~*θ + D*θ~*ψ + x'*θ*θ~"),
  };
  std::vector<Conventions> found;
  for (int mask = 0; mask < 16; ++mask) {
    Conventions c{mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1, mask & 8 ? 1 : -1};
    Operator q = [&c](const GradedExpr& e) { return apply_Q(e, c); };
    Operator qs = [&c](const GradedExpr& e) { return apply_Q_star(e, c); };
    Operator ds = [&c](const GradedExpr& e) { return apply_D_cov_star(e, c); };
    bool ok = true;
    for (const auto& p : probes) {
      ok = ok && algebra_residuals(p, c).passed() && anticommutator(ds, q, p).is_zero() &&
           anticommutator(ds, qs, p).is_zero();
    }
    if (ok) found.push_back(c);
  }
  return found;
}

SusyParams SusyParams::generic() {
  return {GradedExpr(symbols::epsilon()), GradedExpr(symbols::epsilon_star())};
}

SusyParams SusyParams::none() { return {}; }

SusyVariation susy_vary(const Superfield& phi, const SusyParams& params, const Conventions& conv) {
  if (!params.epsilon.is_homogeneous(galg::Parity::odd) ||
      !params.epsilon_star.is_homogeneous(galg::Parity::odd))
    throw std::invalid_argument("SUSY parameters must be odd");

  const GradedExpr field = expand_superfield(phi);
  // [Qε, Φ] = Q(Φ)ε and [ε*Q*, Φ] = ε*Q*(Φ) for an even superfield Φ.
  SusyVariation out;
  out.delta_phi =
      kI * (params.epsilon_star * apply_Q_star(field, conv) + apply_Q(field, conv) * params.epsilon);

  const auto th = symbols::theta();
  const auto ths = symbols::theta_star();
  auto part = [&](bool with_theta, bool with_theta_star) {
    return out.delta_phi.filter([&](const galg::Signature& s) {
      return s.contains(th) == with_theta && s.contains(ths) == with_theta_star;
    });
  };
  out.computed.x = part(false, false);
  out.computed.psi = -kI * galg::left_derivative(part(true, false), th);
  out.computed.psi_star = -kI * galg::left_derivative(part(false, true), ths);
  out.computed.d = -galg::berezin_measure(part(true, true), th, ths);

  if (!(assemble(out.computed) == out.delta_phi))
    throw std::runtime_error("variation does not decompose in the superfield basis: " +
                             galg::to_string(out.delta_phi));

  const auto& eps = params.epsilon;
  const auto& eps_s = params.epsilon_star;
  out.reference.x = -kI * (eps_s * phi.psi_star - phi.psi * eps);
  out.reference.psi = -kI * (eps_s * phi.d) + eps_s * galg::time_derivative(phi.x);
  out.reference.d = galg::time_derivative(eps * phi.psi + phi.psi_star * eps_s);

  out.sign_x = compare_sign(out.computed.x, out.reference.x);
  out.sign_psi = compare_sign(out.computed.psi, out.reference.psi);
  out.sign_d = compare_sign(out.computed.d, out.reference.d);
  return out;
}

}  // namespace sqcas::superspace
