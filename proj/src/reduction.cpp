#include "sqcas/reduction.hpp"

#include <map>
#include <stdexcept>

#include "sqcas/symbols.hpp"

namespace sqcas::reduction {

namespace {

using galg::Atom;
using galg::Signature;

const Coefficient kHalf = Coefficient::rational(1, 2);
const Coefficient kI = Coefficient::imaginary_unit();

GradedExpr x() { return GradedExpr(symbols::x()); }
GradedExpr aux() { return GradedExpr(symbols::aux()); }

GradedExpr derivative_by(const GradedExpr& e, const Atom& a) {
  return a.is_odd() ? galg::left_derivative(e, a) : galg::partial_derivative(e, a);
}

template <typename Fn>
void for_each_atom(const Signature& s, Fn&& fn) {
  for (const auto& [a, power] : s.even) fn(a, power);
  for (const auto& a : s.odd) fn(a, 1);
}

ComponentLagrangian map_parts(const ComponentLagrangian& l,
                              const std::function<GradedExpr(const GradedExpr&)>& fn) {
  ComponentLagrangian out = l;
  out.kinetic_bose = fn(l.kinetic_bose);
  out.kinetic_fermi = fn(l.kinetic_fermi);
  out.auxiliary = fn(l.auxiliary);
  out.yukawa = fn(l.yukawa);
  return out;
}

bool is_scalar(const GradedExpr& e) {
  return e.size() == 1 && e.terms().begin()->first == Signature{};
}

}  // namespace

SuperpotentialSeries::SuperpotentialSeries(std::vector<Coefficient> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

bool SuperpotentialSeries::is_real() const {
  for (const auto& c : coefficients_)
    if (!c.is_real()) return false;
  return true;
}

SuperpotentialSeries SuperpotentialSeries::derivative() const {
  std::vector<Coefficient> out;
  for (std::size_t n = 1; n < coefficients_.size(); ++n)
    out.push_back(coefficients_[n] * Coefficient(static_cast<long>(n)));
  return SuperpotentialSeries(std::move(out));
}

GradedExpr SuperpotentialSeries::evaluate(const GradedExpr& arg) const {
  GradedExpr acc;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * arg + GradedExpr(*it);
  return acc;
}

GradedExpr SuperpotentialSeries::in_x() const { return evaluate(x()); }

GradedExpr psi_commutator() {
  const GradedExpr psi(symbols::psi());
  const GradedExpr psi_s(symbols::psi_star());
  return psi_s * psi - psi * psi_s;
}

GradedExpr action_integrand(const superspace::Superfield& phi, const SuperpotentialSeries& f) {
  const GradedExpr field = superspace::expand_superfield(phi);
  const GradedExpr d_phi = superspace::apply_D_cov(field);
  return kHalf * (galg::conjugate(d_phi) * d_phi) - f.evaluate(field);
}

ComponentLagrangian reduce_to_lagrangian(const GradedExpr& integrand) {
  const GradedExpr l = galg::berezin_measure(integrand, symbols::theta(), symbols::theta_star());
  const Atom x_atom = symbols::x();
  const Atom d_atom = symbols::aux();

  ComponentLagrangian out;
  for (const auto& [sig, c] : l.terms()) {
    bool bose = false, fermi = false, has_aux = false, has_psi = false, has_psi_s = false;
    for_each_atom(sig, [&](const Atom& a, int) {
      if (a.constant) return;
      if (a.base() == x_atom && a.dot_order > 0) bose = true;
      if (a.is_odd() && a.dot_order > 0) fermi = true;
      if (a.base() == d_atom) has_aux = true;
      if (a == symbols::psi()) has_psi = true;
      if (a == symbols::psi_star()) has_psi_s = true;
    });
    const bool yukawa = !bose && !fermi && !has_aux && has_psi && has_psi_s;
    const int matched = int(bose) + int(fermi) + int(has_aux) + int(yukawa);
    if (matched != 1)
      throw std::runtime_error("unclassifiable Lagrangian term: " +
                               galg::to_string(GradedExpr::from_monomial({c, sig})));
    GradedExpr& part = bose ? out.kinetic_bose : fermi ? out.kinetic_fermi : has_aux ? out.auxiliary : out.yukawa;
    part.add_term(sig, c);
  }
  return out;
}

ComponentLagrangian reference_lagrangian(const SuperpotentialSeries& f) {
  const GradedExpr xdot(symbols::x().dotted());
  const GradedExpr psi(symbols::psi());
  const GradedExpr psi_s(symbols::psi_star());
  const GradedExpr psi_dot(symbols::psi().dotted());
  const GradedExpr psi_s_dot(symbols::psi_star().dotted());

  ComponentLagrangian out;
  out.kinetic_bose = kHalf * (xdot * xdot);
  out.kinetic_fermi = (kHalf * kI) * (psi_s * psi_dot - psi_s_dot * psi);
  out.auxiliary = kHalf * (aux() * aux()) + aux() * f.derivative().in_x();
  out.yukawa = kHalf * (psi_commutator() * f.derivative().derivative().in_x());
  return out;
}

ComponentLagrangian eliminate_auxiliary(const ComponentLagrangian& lagrangian, const SuperpotentialSeries& f) {
  if (lagrangian.eliminated) throw std::logic_error("auxiliary field already eliminated");
  const GradedExpr solution = -f.derivative().in_x();
  ComponentLagrangian out = map_parts(
      lagrangian, [&](const GradedExpr& e) { return galg::substitute(e, symbols::aux(), solution); });
  out.eliminated = true;
  out.potential = solution;
  return out;
}

ComponentLagrangian extremize_auxiliary(const ComponentLagrangian& lagrangian) {
  if (lagrangian.eliminated) throw std::logic_error("auxiliary field already eliminated");
  const Atom d = symbols::aux();
  const GradedExpr grad = galg::partial_derivative(lagrangian.total(), d);
  const GradedExpr curvature = galg::partial_derivative(grad, d);
  if (!is_scalar(curvature)) throw std::runtime_error("Lagrangian is not quadratic in the auxiliary field");
  const GradedExpr linear = galg::substitute(grad, d, GradedExpr());
  const GradedExpr solution = -linear * curvature.terms().begin()->second.inverse();

  ComponentLagrangian out =
      map_parts(lagrangian, [&](const GradedExpr& e) { return galg::substitute(e, d, solution); });
  out.eliminated = true;
  out.potential = solution;
  return out;
}

GradedExpr hamiltonian_template(const GradedExpr& v, const Coefficient& c) {
  const GradedExpr p(symbols::momentum());
  const GradedExpr v_prime = galg::partial_derivative(v, symbols::x());
  return kHalf * (p * p) + kHalf * (v * v) + c * (psi_commutator() * v_prime);
}

HamiltonianSpec hamiltonian(const ComponentLagrangian& lagrangian) {
  if (!lagrangian.eliminated || lagrangian.total().contains(symbols::aux()))
    throw std::logic_error("Hamiltonian requires the auxiliary field to be eliminated");

  const Atom xdot = symbols::x().dotted();
  const GradedExpr momentum = galg::partial_derivative(lagrangian.kinetic_bose, xdot);
  if (!(momentum == GradedExpr(xdot)))
    throw std::runtime_error("unexpected canonical momentum: " + galg::to_string(momentum));

  const GradedExpr p(symbols::momentum());
  const GradedExpr form =
      galg::substitute(p * GradedExpr(xdot) - lagrangian.kinetic_bose, xdot, p) - lagrangian.auxiliary -
      lagrangian.yukawa;

  HamiltonianSpec out;
  out.potential_v = lagrangian.potential;
  out.potential_v_prime = galg::partial_derivative(lagrangian.potential, symbols::x());
  out.form = form;

  const Coefficient pinned = Coefficient::rational(kCommutatorSign, 2);
  const Coefficient printed = Coefficient::rational(-1, 2);
  if (form == hamiltonian_template(out.potential_v, pinned)) {
    out.commutator_coefficient = pinned;
  } else if (form == hamiltonian_template(out.potential_v, -pinned)) {
    out.commutator_coefficient = -pinned;
  } else {
    throw std::runtime_error("Hamiltonian does not have the expected form: " + galg::to_string(form));
  }
  out.matches_reference_sign = form == hamiltonian_template(out.potential_v, printed);
  return out;
}

GradedExpr total_derivative_primitive(const GradedExpr& e) {
  GradedExpr out;
  for (const auto& [sig, c] : e.terms()) {
    const GradedExpr term = GradedExpr::from_monomial({c, sig});
    int degree = 0;
    std::map<Atom, int> highest;  // base field -> highest derivative present
    for_each_atom(sig, [&](const Atom& a, int power) {
      if (a.constant) return;
      degree += power;
      auto [it, inserted] = highest.emplace(a.base(), a.dot_order);
      if (!inserted && it->second < a.dot_order) it->second = a.dot_order;
    });
    if (degree <= 0) continue;

    GradedExpr piece;
    for (const auto& [base, top] : highest) {
      for (int k = 1; k <= top; ++k) {
        const GradedExpr partial = derivative_by(term, base.dotted(k));
        if (partial.is_zero()) continue;
        for (int i = 0; i < k; ++i) {
          const int m = k - i - 1;
          GradedExpr inner = galg::time_derivative(partial, m);
          if (m % 2) inner = -inner;
          piece += GradedExpr(base.dotted(i)) * inner;
        }
      }
    }
    out += piece * Coefficient::rational(1, degree);
  }
  return out;
}

InvarianceResult invariance_residual(const ComponentLagrangian& lagrangian, const superspace::SusyParams& params) {
  if (lagrangian.eliminated) throw std::logic_error("invariance is checked off shell, before elimination");

  const auto laws = superspace::susy_vary(superspace::Superfield::generic(), params).computed;
  const std::map<Atom, GradedExpr> rules = {
      {symbols::x(), laws.x},
      {symbols::psi(), laws.psi},
      {symbols::psi_star(), laws.psi_star},
      {symbols::aux(), laws.d},
  };
  auto image = [&rules](const Atom& a) -> GradedExpr {
    auto it = rules.find(a.base());
    if (it == rules.end()) return {};
    return galg::time_derivative(it->second, a.dot_order);
  };

  InvarianceResult out;
  out.variation = galg::apply_even_derivation(lagrangian.total(), image);
  out.boundary = total_derivative_primitive(out.variation);
  out.residual = out.variation - galg::time_derivative(out.boundary);
  return out;
}

std::string to_string(const ComponentLagrangian& l) { return galg::to_string(l.total()); }
std::string to_latex(const ComponentLagrangian& l) { return galg::to_latex(l.total()); }
std::string to_string(const HamiltonianSpec& h) { return galg::to_string(h.form); }
std::string to_latex(const HamiltonianSpec& h) { return galg::to_latex(h.form); }

}  // namespace sqcas::reduction
