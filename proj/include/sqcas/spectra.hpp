#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sqcas::spectra {

/// Uniform grid; every point is an unknown and the wavefunction vanishes one
/// spacing beyond either end.
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n_points = 2001;

  /// Throws std::invalid_argument unless n_points ≥ 3 and x_min < x_max.
  void validate() const;
  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double point(std::size_t i) const { return x_min + static_cast<double>(i) * spacing(); }
  /// Same box with the spacing halved (2n − 1 points).
  Grid refined() const { return {x_min, x_max, 2 * n_points - 1}; }
};

/// V(x) together with its formal derivative. Polynomial potentials keep their
/// coefficients (ascending powers) so the ground-state closed form is exact.
struct Potential {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::optional<std::vector<double>> coefficients;

  static Potential polynomial(std::vector<double> coefficients);
  static Potential closed_form(std::function<double(double)> value, std::function<double(double)> derivative);
};

/// Symmetric tridiagonal matrix: `off[i]` couples rows i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
  std::vector<std::vector<double>> to_dense() const;
};

/// ½p² + ½V² ∓ ½V' in the two eigensectors of [ψ*,ψ]. The "−" sector carries
/// −½V' and holds the zero mode exp(−∫V) when that is normalizable.
struct PartnerHamiltonians {
  Tridiagonal h_minus;
  Tridiagonal h_plus;
};

/// Throws std::invalid_argument for a grid with fewer than 3 points.
PartnerHamiltonians discretize(const Potential& v, const Grid& grid);

/// k smallest eigenvalues (ascending) by Sturm-sequence bisection.
std::vector<double> eigen_spectrum(const Tridiagonal& h, std::size_t k);
/// Dense symmetric input is Householder-reduced first. Throws
/// std::invalid_argument if the matrix is not exactly symmetric or k > n.
std::vector<double> eigen_spectrum(const std::vector<std::vector<double>>& h, std::size_t k);

/// Unit-norm eigenvector for an eigenvalue of `h` (inverse iteration).
std::vector<double> eigenvector(const Tridiagonal& h, double eigenvalue);

struct PairingOptions {
  /// Report (4E(h/2) − E(h))/3 instead of the raw grid eigenvalues.
  bool richardson = true;
  /// Zero-mode threshold; by default 10 · gap · h².
  std::optional<double> tol_zero;
};

struct SpectrumReport {
  Grid grid;
  bool extrapolated = false;
  double tol_zero = 0.0;
  std::vector<double> eigenvalues_minus;
  std::vector<double> eigenvalues_plus;
  std::vector<double> raw_eigenvalues_minus;
  std::vector<double> raw_eigenvalues_plus;
  /// |E⁺_n − E⁻_{n+1}|, sector-swapped for index −1, |E⁺_n − E⁻_n| for index 0.
  std::vector<double> pair_residuals;
  std::vector<double> raw_pair_residuals;
  int witten_index = 0;
  double ground_state_energy = 0.0;
  std::vector<double> ground_state_profile;
};

/// Pairing of the two spectra for the residual convention of `witten_index`.
std::vector<double> pair_residuals(const std::vector<double>& minus, const std::vector<double>& plus,
                                   int witten_index);

SpectrumReport pairing_report(const Potential& v, const Grid& grid, std::size_t k, const PairingOptions& options = {});

struct GroundStateReport {
  /// −1 when the closed form is exp(−∫V) (the "−" sector), +1 for exp(+∫V).
  int sector = -1;
  double energy = 0.0;
  double max_deviation = 0.0;
  std::vector<double> numerical;
  std::vector<double> closed_form;
};

/// Compares the lowest eigenvector of the zero-mode sector with exp(∓∫₀ˣV),
/// both normalized on the grid. Throws std::domain_error when neither sign
/// is normalizable.
GroundStateReport ground_state_check(const Potential& v, const Grid& grid);

std::string to_json(const SpectrumReport& report);
/// Columns n, E_minus, E_plus, pair_residual.
std::string to_csv(const SpectrumReport& report);

}  // namespace sqcas::spectra
