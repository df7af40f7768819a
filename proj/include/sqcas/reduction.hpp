#pragma once

#include <string>
#include <vector>

#include "sqcas/galg.hpp"
#include "sqcas/superspace.hpp"

namespace sqcas::reduction {

using galg::GradedExpr;

/// f(Φ) = Σ a_n Φ^n with exact coefficients.
class SuperpotentialSeries {
 public:
  SuperpotentialSeries() = default;
  /// Trailing zero coefficients are dropped.
  explicit SuperpotentialSeries(std::vector<Coefficient> coefficients);

  const std::vector<Coefficient>& coefficients() const { return coefficients_; }
  /// -1 for the zero series.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_real() const;

  SuperpotentialSeries derivative() const;
  /// Σ a_n arg^n evaluated in the graded algebra (Horner).
  GradedExpr evaluate(const GradedExpr& arg) const;
  /// The series as a polynomial in the atom x.
  GradedExpr in_x() const;

 private:
  std::vector<Coefficient> coefficients_;
};

/// Component Lagrangian after Berezin integration, split into its four
/// structural parts. `potential` holds V(x) = −f'(x) once the auxiliary field
/// has been eliminated.
struct ComponentLagrangian {
  GradedExpr kinetic_bose;
  GradedExpr kinetic_fermi;
  GradedExpr auxiliary;
  GradedExpr yukawa;
  bool eliminated = false;
  GradedExpr potential;

  GradedExpr total() const { return kinetic_bose + kinetic_fermi + auxiliary + yukawa; }
  friend bool operator==(const ComponentLagrangian&, const ComponentLagrangian&) = default;
};

/// [ψ*, ψ] kept as the antisymmetrized pair ψ*ψ − ψψ*.
GradedExpr psi_commutator();

/// ½ (D_θΦ)* (D_θΦ) − f(Φ).
GradedExpr action_integrand(const superspace::Superfield& phi, const SuperpotentialSeries& f);

/// Berezin-integrates over dθ* dθ and partitions the result. Throws
/// std::runtime_error when a term fits none (or several) of the four parts.
ComponentLagrangian reduce_to_lagrangian(const GradedExpr& integrand);

/// The closed form
///   ½ẋ² + ½i(ψ*ψ̇ − ψ̇*ψ) + ½D² + D f'(x) + ½[ψ*,ψ] f''(x)
/// that the reduction is expected to reproduce.
ComponentLagrangian reference_lagrangian(const SuperpotentialSeries& f);

/// Substitutes D = −f'(x). Throws std::logic_error on a second elimination.
ComponentLagrangian eliminate_auxiliary(const ComponentLagrangian& lagrangian, const SuperpotentialSeries& f);

/// Eliminates D by solving ∂L/∂D = 0 directly on the Lagrangian, without
/// reference to f. Throws std::runtime_error if L is not quadratic in D.
ComponentLagrangian extremize_auxiliary(const ComponentLagrangian& lagrangian);

/// H = ½p² + ½V² + c [ψ*,ψ] V'. The sign c = +½ comes out of the Legendre
/// transform of the reduced Lagrangian and is pinned here; the printed
/// reference form carries c = −½.
inline constexpr int kCommutatorSign = 1;

struct HamiltonianSpec {
  GradedExpr potential_v;
  GradedExpr potential_v_prime;
  GradedExpr form;
  Coefficient commutator_coefficient;
  /// True when c equals the reference form's −½.
  bool matches_reference_sign = false;
};

GradedExpr hamiltonian_template(const GradedExpr& v, const Coefficient& c);

/// Legendre transform of an eliminated Lagrangian. The fermion kinetic term
/// is first order and contributes no independent momentum. Throws
/// std::logic_error if D is still present.
HamiltonianSpec hamiltonian(const ComponentLagrangian& lagrangian);

/// Primitive K with dK/dt = e when e is a total time derivative (1D homotopy
/// operator, graded). For other inputs the result is meaningless; callers
/// check e − dK/dt.
GradedExpr total_derivative_primitive(const GradedExpr& e);

struct InvarianceResult {
  GradedExpr variation;  // δL
  GradedExpr boundary;   // K
  GradedExpr residual;   // δL − dK/dt
  bool passed() const { return residual.is_zero(); }
};

/// Applies the component SUSY transformations to every atom of L. Throws
/// std::logic_error on an eliminated Lagrangian.
InvarianceResult invariance_residual(const ComponentLagrangian& lagrangian, const superspace::SusyParams& params);

/// Text and LaTeX forms of the full Lagrangian / Hamiltonian.
std::string to_string(const ComponentLagrangian& l);
std::string to_latex(const ComponentLagrangian& l);
std::string to_string(const HamiltonianSpec& h);
std::string to_latex(const HamiltonianSpec& h);

}  // namespace sqcas::reduction
