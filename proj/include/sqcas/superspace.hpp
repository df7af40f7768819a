#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sqcas/galg.hpp"

namespace sqcas::superspace {

using galg::GradedExpr;

/// Components of a real scalar superfield on (t, θ, θ*).
struct Superfield {
  GradedExpr x;
  GradedExpr psi;
  GradedExpr psi_star;
  GradedExpr d;

  /// x(t), ψ(t), ψ*(t), D(t) as independent atoms.
  static Superfield generic();
  /// Only the bosonic coordinate is nonzero.
  static Superfield bosonic(GradedExpr x);
};

/// x + iθψ − iψ*θ* + θ*θD.
GradedExpr expand_superfield(const Superfield& phi);

/// Signs of the ∂_t pieces of the superspace operators:
///   Q  = i∂_θ  + q θ*∂_t         D_θ  = ∂_θ  + d i θ*∂_t
///   Q* = −i∂_θ* + q_star θ∂_t    D_θ* = ∂_θ* + d_star i θ∂_t
/// The defaults are the conventions that close the algebra (see
/// convention_search).
struct Conventions {
  int q = -1;
  int q_star = 1;
  int d = -1;
  int d_star = -1;

  friend bool operator==(const Conventions&, const Conventions&) = default;
};

using Operator = std::function<GradedExpr(const GradedExpr&)>;

GradedExpr apply_Q(const GradedExpr& e, const Conventions& conv = {});
GradedExpr apply_Q_star(const GradedExpr& e, const Conventions& conv = {});
GradedExpr apply_D_cov(const GradedExpr& e, const Conventions& conv = {});
GradedExpr apply_D_cov_star(const GradedExpr& e, const Conventions& conv = {});

/// {A, B} e = A(B(e)) + B(A(e)).
GradedExpr anticommutator(const Operator& a, const Operator& b, const GradedExpr& e);

struct Residual {
  std::string name;
  GradedExpr value;
  bool passed() const { return value.is_zero(); }
};

struct AlgebraReport {
  std::vector<Residual> residuals;
  bool passed() const;
};

/// The six superalgebra residuals evaluated on `probe`:
/// {Q,Q*} − 2i∂_t, {Q,Q}, {Q*,Q*}, {D_θ,Q}, {D_θ,Q*}, {D_θ,D_θ*} + 2i∂_t.
AlgebraReport algebra_residuals(const GradedExpr& probe, const Conventions& conv = {});

/// algebra_residuals on the expansion of a fully generic superfield.
AlgebraReport algebra_report(const Conventions& conv = {});

/// All 16 sign choices of Conventions that make every residual vanish, and
/// also {D_θ*,Q}, {D_θ*,Q*}, on a set of probe expressions.
std::vector<Conventions> convention_search();

/// Odd SUSY parameters ε, ε*.
struct SusyParams {
  GradedExpr epsilon;
  GradedExpr epsilon_star;

  static SusyParams generic();
  static SusyParams none();
};

struct ComponentVariation {
  GradedExpr x;
  GradedExpr psi;
  GradedExpr psi_star;
  GradedExpr d;
};

/// Result of δΦ = i[ε*Q* + Qε, Φ] and its comparison with the reference
/// component laws
///   iδx = ε*ψ* − ψε,   δψ = −iε*D + ε*ẋ,   δD = ∂_t(εψ + ψ*ε*).
/// No reference law is available for δψ*; it is only derived.
struct SusyVariation {
  GradedExpr delta_phi;
  ComponentVariation computed;
  ComponentVariation reference;  // psi_star left empty

  /// +1 if computed == reference, −1 if computed == −reference, 0 otherwise.
  int sign_x = 0;
  int sign_psi = 0;
  int sign_d = 0;

  bool matches_reference() const { return sign_x == 1 && sign_psi == 1 && sign_d == 1; }
};

/// Throws std::runtime_error if δΦ does not decompose in the superfield basis.
SusyVariation susy_vary(const Superfield& phi, const SusyParams& params, const Conventions& conv = {});

/// Reassembles x + iθψ − iψ*θ* + θ*θD from a component record.
GradedExpr assemble(const ComponentVariation& v);

}  // namespace sqcas::superspace
