#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "sqcas/galg.hpp"
#include "sqcas/spectra.hpp"

namespace sqcas::soliton {

using complex = std::complex<double>;
using spectra::Grid;

/// Single-qubit amplitudes with |ψ₀|² + |ψ₁|² = 1.
struct QubitState {
  complex amp0;
  complex amp1;

  double probability0() const { return std::norm(amp0); }
  double probability1() const { return std::norm(amp1); }
  /// Basis state |b⟩ for b ∈ {0, 1}.
  static QubitState basis(int b);
};

/// Throws std::invalid_argument for the zero vector.
QubitState qubit_from_amplitudes(complex a0, complex a1);

/// Row-major 2×2 complex matrix.
struct Mat2 {
  std::array<complex, 4> m{};

  complex operator()(int r, int c) const { return m[2 * r + c]; }
  static Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
  Mat2 adjoint() const;
  double max_norm() const;

  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(complex s, const Mat2& a);
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

namespace pauli {
Mat2 sigma1();
Mat2 sigma2();
Mat2 sigma3();
}  // namespace pauli

/// Two-dimensional Dirac matrices for metric η = diag(−1, 1).
struct GammaRep {
  Mat2 gamma0;
  Mat2 gamma1;
  std::string label;

  Mat2 gamma5() const { return gamma0 * gamma1; }
  /// γ⁰ = iσ², γ¹ = σ³.
  static GammaRep standard();
};

inline constexpr std::array<double, 2> kMetric = {-1.0, 1.0};
inline constexpr double kCliffordTolerance = 1e-12;

struct CliffordReport {
  double r00 = 0.0;  // ‖{γ⁰,γ⁰} − 2η⁰⁰I‖
  double r11 = 0.0;  // ‖{γ¹,γ¹} − 2η¹¹I‖
  double r01 = 0.0;  // ‖{γ⁰,γ¹}‖
  bool passed() const { return r00 < kCliffordTolerance && r11 < kCliffordTolerance && r01 < kCliffordTolerance; }
};

CliffordReport clifford_verify(const GammaRep& rep);

struct KinkParams {
  double alpha0 = 1.0;
  double beta = 1.0;

  /// Throws std::invalid_argument unless alpha0 > 0 and beta ≠ 0.
  void validate() const;
  double mass() const;  // √α₀
};

/// φ(x) = (4/β) arctan(e^{√α₀x}).
double kink_profile(const KinkParams& p, double x);
/// φ'(x) = (2√α₀/β) sech(√α₀x).
double kink_slope(const KinkParams& p, double x);
/// U(φ) = (α₀/β²)(1 − cos βφ).
double potential_u(const KinkParams& p, double phi);
/// V(φ) = (2√α₀/β) sin(βφ/2), so that ½V² = U.
double potential_v(const KinkParams& p, double phi);
/// V'(φ) = √α₀ cos(βφ/2).
double potential_v_prime(const KinkParams& p, double phi);

/// 8√α₀/β².
double bps_energy(const KinkParams& p);

/// True when sech²(√α₀·x) at either edge is not below 1e−14.
bool grid_too_narrow(const KinkParams& p, const Grid& grid);

/// Composite Simpson rule; throws std::invalid_argument unless the sample
/// count is odd and at least 3.
double simpson(const std::vector<double>& f, double h);
complex simpson(const std::vector<complex>& f, double h);

/// ∫ ½(φ')² + U(φ) dx over the grid.
double kink_energy(const KinkParams& p, const Grid& grid);

/// Symbolic supersoliton expansion in the graded algebra. Atoms: ϑ (θ),
/// ϑ~ (θ̄), χ (the classical fermion), and opaque real constants
/// √α₀, β, σ = e^{√α₀x}, φ_cl, s_half = sin(βφ_cl/2).
struct SupersolitonComponents {
  galg::GradedExpr expansion;        // S after truncation and substitution
  galg::GradedExpr scalar;           // θ-free part
  galg::GradedExpr fermion;          // part linear in θ̄
  galg::GradedExpr top;              // coefficient of θ̄θ
  galg::GradedExpr printed;          // φ_cl + iθ̄χ + (√α₀/2)θ̄θF with the printed F
  galg::GradedExpr residual;         // expansion − printed
  galg::GradedExpr f_printed;        // (2i√α₀/β) s_half
  galg::GradedExpr f_derived;        // top / (√α₀/2)
  galg::GradedExpr v_classical;      // V(φ_cl) = (2√α₀/β) s_half
  bool truncation_exact = false;     // all second-order Taylor terms vanished
  bool f_printed_is_i_v = false;     // F_printed = i·V(φ_cl)

  bool matches_printed() const { return truncation_exact && residual.is_zero(); }
};

/// Throws std::runtime_error if a second-order nilpotent term survives.
SupersolitonComponents supersoliton_components(bool with_fermion = true);

/// e^{√α₀x}/(1 + e^{2√α₀x}) − ½ sin(βφ_cl(x)/2), maximum over the samples.
double sech_identity_deviation(const KinkParams& p, const std::vector<double>& xs);

/// ψ(x) = C·sech(√α₀x)·(s₀, s₁) with C fixing ∫|ψ|² = 1.
struct SpinorField {
  KinkParams params;
  std::array<complex, 2> phase{1.0, complex(0.0, -1.0)};
  double normalization = 0.0;
  double scale = 1.0;

  std::array<complex, 2> value(double x) const;
  /// Analytic x-derivative.
  std::array<complex, 2> derivative(double x) const;
};

/// The phase pair defaults to the printed (1, −i).
SpinorField zero_mode(const KinkParams& p, std::array<complex, 2> phase = {1.0, complex(0.0, -1.0)});

struct BilinearValues {
  std::vector<complex> scalar;   // ψ†γ⁰ψ
  std::vector<complex> kinetic;  // ψ†γ⁰γ¹ ψ'
  double max_scalar = 0.0;
  double max_kinetic = 0.0;
};

BilinearValues bilinear_values(const GammaRep& rep, const SpinorField& spinor, const std::vector<double>& xs);

struct SearchEntry {
  GammaRep rep;
  complex w;  // phase pair (1, w)
};

/// {±σ¹, ±iσ², ±σ³, ±iσ¹, ±σ², ±iσ³} in that order.
std::vector<std::pair<Mat2, std::string>> candidate_matrices();

/// Every Clifford-valid pair from the candidates, crossed with w ∈ {1, −1, i, −i},
/// for which both bilinear prefactors vanish. Throws std::runtime_error when
/// nothing survives.
std::vector<SearchEntry> representation_search();

struct EnergyDecomposition {
  double bose_energy = 0.0;
  complex fermi_energy;
  double fermi_density_max = 0.0;
  double total = 0.0;
  bool narrow_grid = false;

  bool bag_holds() const { return std::abs(fermi_energy) < 1e-10 * bose_energy; }
};

/// Fermion part ∫ ψ̄ iγ¹ψ' + V'(φ_cl) ψ̄ψ dx with ψ̄ = ψ†γ⁰.
EnergyDecomposition total_energy(const KinkParams& p, const GammaRep& rep, const SpinorField& spinor,
                                 const Grid& grid);

std::string to_json(const EnergyDecomposition& e);
std::string to_json(const std::vector<SearchEntry>& entries);
/// Columns x, phi_cl, psi_norm2, scalar_re, scalar_im, kinetic_re, kinetic_im.
std::string profile_csv(const KinkParams& p, const GammaRep& rep, const SpinorField& spinor, const Grid& grid);

}  // namespace sqcas::soliton
