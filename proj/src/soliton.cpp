#include "sqcas/soliton.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sqcas/symbols.hpp"

namespace sqcas::soliton {

namespace {

constexpr complex kI{0.0, 1.0};

double sech(double u) { return 1.0 / std::cosh(u); }

complex bilinear(const std::array<complex, 2>& left, const Mat2& m, const std::array<complex, 2>& right) {
  complex acc = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) acc += std::conj(left[r]) * m(r, c) * right[c];
  return acc;
}

std::vector<double> sample_points(const Grid& grid) {
  grid.validate();
  std::vector<double> xs(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) xs[i] = grid.point(i);
  return xs;
}

template <typename T>
T simpson_impl(const std::vector<T>& f, double h) {
  if (f.size() < 3 || f.size() % 2 == 0) throw std::invalid_argument("Simpson's rule needs an odd number (≥ 3) of samples");
  T acc = f.front() + f.back();
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
  return acc * (h / 3.0);
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json complex_json(complex z) { return {z.real(), z.imag()}; }

std::string unit_label(complex w) {
  if (w == complex(1.0)) return "1";
  if (w == complex(-1.0)) return "-1";
  if (w == kI) return "i";
  if (w == -kI) return "-i";
  return format_double(w.real()) + "+" + format_double(w.imag()) + "i";
}

}  // namespace

QubitState QubitState::basis(int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("basis index must be 0 or 1");
  return b == 0 ? QubitState{1.0, 0.0} : QubitState{0.0, 1.0};
}

QubitState qubit_from_amplitudes(complex a0, complex a1) {
  const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
  if (norm == 0.0) throw std::invalid_argument("qubit amplitudes must not both vanish");
  return {a0 / norm, a1 / norm};
}

Mat2 Mat2::adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }

double Mat2::max_norm() const {
  double out = 0.0;
  for (const auto& z : m) out = std::max(out, std::abs(z));
  return out;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

Mat2 operator-(const Mat2& a, const Mat2& b) { return a + complex(-1.0) * b; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.m[2 * r + c] = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
  return out;
}

Mat2 operator*(complex s, const Mat2& a) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.m[i] = s * a.m[i];
  return out;
}

namespace pauli {
Mat2 sigma1() { return {{0.0, 1.0, 1.0, 0.0}}; }
Mat2 sigma2() { return {{0.0, -kI, kI, 0.0}}; }
Mat2 sigma3() { return {{1.0, 0.0, 0.0, -1.0}}; }
}  // namespace pauli

GammaRep GammaRep::standard() { return {kI * pauli::sigma2(), pauli::sigma3(), "(iσ², σ³)"}; }

CliffordReport clifford_verify(const GammaRep& rep) {
  const Mat2 id = Mat2::identity();
  const auto anti = [](const Mat2& a, const Mat2& b) { return a * b + b * a; };
  CliffordReport out;
  out.r00 = (anti(rep.gamma0, rep.gamma0) - complex(2.0 * kMetric[0]) * id).max_norm();
  out.r11 = (anti(rep.gamma1, rep.gamma1) - complex(2.0 * kMetric[1]) * id).max_norm();
  out.r01 = anti(rep.gamma0, rep.gamma1).max_norm();
  return out;
}

void KinkParams::validate() const {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be positive");
  if (beta == 0.0) throw std::invalid_argument("beta must be nonzero");
}

double KinkParams::mass() const { return std::sqrt(alpha0); }

double kink_profile(const KinkParams& p, double x) { return 4.0 / p.beta * std::atan(std::exp(p.mass() * x)); }

double kink_slope(const KinkParams& p, double x) { return 2.0 * p.mass() / p.beta * sech(p.mass() * x); }

double potential_u(const KinkParams& p, double phi) {
  return p.alpha0 / (p.beta * p.beta) * (1.0 - std::cos(p.beta * phi));
}

double potential_v(const KinkParams& p, double phi) { return 2.0 * p.mass() / p.beta * std::sin(0.5 * p.beta * phi); }

double potential_v_prime(const KinkParams& p, double phi) { return p.mass() * std::cos(0.5 * p.beta * phi); }

double bps_energy(const KinkParams& p) { return 8.0 * p.mass() / (p.beta * p.beta); }

bool grid_too_narrow(const KinkParams& p, const Grid& grid) {
  const double edge = std::min(std::abs(grid.x_min), std::abs(grid.x_max));
  const double s = sech(p.mass() * edge);
  return grid.x_min >= 0.0 || grid.x_max <= 0.0 || s * s >= 1e-14;
}

double simpson(const std::vector<double>& f, double h) { return simpson_impl(f, h); }
complex simpson(const std::vector<complex>& f, double h) { return simpson_impl(f, h); }

double kink_energy(const KinkParams& p, const Grid& grid) {
  p.validate();
  const auto xs = sample_points(grid);
  std::vector<double> density(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double slope = kink_slope(p, xs[i]);
    density[i] = 0.5 * slope * slope + potential_u(p, kink_profile(p, xs[i]));
  }
  return simpson(density, grid.spacing());
}

SupersolitonComponents supersoliton_components(bool with_fermion) {
  using galg::Atom;
  using galg::GradedExpr;
  using galg::parse;

  const Atom theta = Atom::odd("ϑ", true);
  const Atom theta_bar = theta.conjugate();
  const Atom atan_sigma = Atom::even("atan_σ", true);
  const Atom datan_sigma = Atom::even("datan_σ", true);

  // Exponent beyond √α₀x: n = iβ/(2 s_half) θ̄χ − (√α₀/2) θ̄θ.
  GradedExpr n = parse("-(1/2)*√α₀*ϑ~*ϑ");
  if (with_fermion) n += parse("(1/2)*i*β*s_half^(-1)*ϑ~*χ");

  SupersolitonComponents out;
  // e^{√α₀x + n} = σ(1 + n) exactly when n² = 0; then arctan(σ + δ) with δ = σn
  // is arctan σ + δ/(1 + σ²) exactly when δ² = 0.
  const GradedExpr sigma = parse("σ");
  const GradedExpr delta = sigma * n;
  out.truncation_exact = galg::pow(n, 2).is_zero() && galg::pow(delta, 2).is_zero();
  if (!out.truncation_exact) throw std::runtime_error("second-order nilpotent term survived");

  GradedExpr s = Coefficient(4) * parse("β^(-1)") * (GradedExpr(atan_sigma) + GradedExpr(datan_sigma) * delta);
  // arctan σ = (β/4)φ_cl and 1/(1 + σ²) = ½ s_half / σ.
  s = galg::substitute(s, atan_sigma, parse("(1/4)*β*φ_cl"));
  s = galg::substitute(s, datan_sigma, parse("(1/2)*s_half*σ^(-1)"));
  out.expansion = s;

  out.scalar = s.filter([&](const galg::Signature& sig) { return !sig.contains(theta) && !sig.contains(theta_bar); });
  out.fermion = s.filter([&](const galg::Signature& sig) { return sig.contains(theta_bar) && !sig.contains(theta); });
  out.top = galg::left_derivative(galg::left_derivative(s, theta_bar), theta).filter(
      [&](const galg::Signature& sig) { return !sig.contains(theta) && !sig.contains(theta_bar); });

  out.f_printed = parse("2*i*√α₀*β^(-1)*s_half");
  out.v_classical = parse("2*√α₀*β^(-1)*s_half");
  out.f_derived = Coefficient(2) * parse("√α₀^(-1)") * out.top;
  out.f_printed_is_i_v = out.f_printed == Coefficient::imaginary_unit() * out.v_classical;

  out.printed = parse("φ_cl") + parse("(1/2)*√α₀*ϑ~*ϑ") * out.f_printed;
  if (with_fermion) out.printed += parse("i*ϑ~*χ");
  out.residual = out.expansion - out.printed;
  return out;
}

double sech_identity_deviation(const KinkParams& p, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    const double lhs = 0.5 * sech(p.mass() * x);  // e^{u}/(1 + e^{2u}) = ½ sech u
    const double direct = std::exp(p.mass() * x) / (1.0 + std::exp(2.0 * p.mass() * x));
    const double rhs = 0.5 * std::sin(0.5 * p.beta * kink_profile(p, x));
    worst = std::max({worst, std::abs(direct - rhs), std::abs(lhs - rhs)});
  }
  return worst;
}

std::array<complex, 2> SpinorField::value(double x) const {
  const double f = scale * normalization * sech(params.mass() * x);
  return {f * phase[0], f * phase[1]};
}

std::array<complex, 2> SpinorField::derivative(double x) const {
  const double u = params.mass() * x;
  const double f = -scale * normalization * params.mass() * sech(u) * std::tanh(u);
  return {f * phase[0], f * phase[1]};
}

SpinorField zero_mode(const KinkParams& p, std::array<complex, 2> phase) {
  p.validate();
  SpinorField out;
  out.params = p;
  out.phase = phase;
  // ∫ sech²(√α₀x) dx = 2/√α₀.
  const double weight = std::norm(phase[0]) + std::norm(phase[1]);
  out.normalization = weight == 0.0 ? 0.0 : std::sqrt(p.mass() / (2.0 * weight));
  return out;
}

BilinearValues bilinear_values(const GammaRep& rep, const SpinorField& spinor, const std::vector<double>& xs) {
  const Mat2 g01 = rep.gamma0 * rep.gamma1;
  BilinearValues out;
  for (double x : xs) {
    const auto v = spinor.value(x);
    const auto dv = spinor.derivative(x);
    out.scalar.push_back(bilinear(v, rep.gamma0, v));
    out.kinetic.push_back(bilinear(v, g01, dv));
    out.max_scalar = std::max(out.max_scalar, std::abs(out.scalar.back()));
    out.max_kinetic = std::max(out.max_kinetic, std::abs(out.kinetic.back()));
  }
  return out;
}

std::vector<std::pair<Mat2, std::string>> candidate_matrices() {
  using namespace pauli;
  const std::vector<std::pair<Mat2, std::string>> base = {
      {sigma1(), "σ¹"}, {kI * sigma2(), "iσ²"}, {sigma3(), "σ³"},
      {kI * sigma1(), "iσ¹"}, {sigma2(), "σ²"}, {kI * sigma3(), "iσ³"},
  };
  std::vector<std::pair<Mat2, std::string>> out;
  for (const auto& [m, name] : base) {
    out.emplace_back(m, name);
    out.emplace_back(complex(-1.0) * m, "-" + name);
  }
  return out;
}

std::vector<SearchEntry> representation_search() {
  const auto candidates = candidate_matrices();
  const std::array<complex, 4> phases = {1.0, -1.0, kI, -kI};
  std::vector<SearchEntry> out;
  for (const auto& [g0, n0] : candidates) {
    for (const auto& [g1, n1] : candidates) {
      GammaRep rep{g0, g1, "(" + n0 + ", " + n1 + ")"};
      if (!clifford_verify(rep).passed()) continue;
      const Mat2 g01 = g0 * g1;
      for (complex w : phases) {
        // The bilinears are sech² · s†γ⁰s and sech·sech' · s†γ⁰γ¹s.
        const std::array<complex, 2> s{1.0, w};
        if (std::abs(bilinear(s, g0, s)) < kCliffordTolerance && std::abs(bilinear(s, g01, s)) < kCliffordTolerance)
          out.push_back({rep, w});
      }
    }
  }
  if (out.empty()) throw std::runtime_error("no representation makes both bilinears vanish");
  return out;
}

EnergyDecomposition total_energy(const KinkParams& p, const GammaRep& rep, const SpinorField& spinor,
                                 const Grid& grid) {
  EnergyDecomposition out;
  out.bose_energy = kink_energy(p, grid);
  out.narrow_grid = grid_too_narrow(p, grid);

  const auto xs = sample_points(grid);
  const auto b = bilinear_values(rep, spinor, xs);
  std::vector<complex> density(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    density[i] = kI * b.kinetic[i] + potential_v_prime(p, kink_profile(p, xs[i])) * b.scalar[i];
    out.fermi_density_max = std::max(out.fermi_density_max, std::abs(density[i]));
  }
  out.fermi_energy = simpson(density, grid.spacing());
  out.total = out.bose_energy + out.fermi_energy.real();
  return out;
}

std::string to_json(const EnergyDecomposition& e) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["bose_energy"] = e.bose_energy;
  j["fermi_energy"] = complex_json(e.fermi_energy);
  j["fermi_density_max"] = e.fermi_density_max;
  j["total"] = e.total;
  j["bag_holds"] = e.bag_holds();
  j["narrow_grid"] = e.narrow_grid;
  return j.dump(2);
}

std::string to_json(const std::vector<SearchEntry>& entries) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["count"] = entries.size();
  auto& list = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) list.push_back({{"rep", e.rep.label}, {"w", unit_label(e.w)}});
  return j.dump(2);
}

std::string profile_csv(const KinkParams& p, const GammaRep& rep, const SpinorField& spinor, const Grid& grid) {
  const auto xs = sample_points(grid);
  const auto b = bilinear_values(rep, spinor, xs);
  std::ostringstream os;
  os << "x,phi_cl,psi_norm2,scalar_re,scalar_im,kinetic_re,kinetic_im\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto v = spinor.value(xs[i]);
    os << format_double(xs[i]) << ',' << format_double(kink_profile(p, xs[i])) << ','
       << format_double(std::norm(v[0]) + std::norm(v[1])) << ',' << format_double(b.scalar[i].real()) << ','
       << format_double(b.scalar[i].imag()) << ',' << format_double(b.kinetic[i].real()) << ','
       << format_double(b.kinetic[i].imag()) << '\n';
  }
  return os.str();
}

}  // namespace sqcas::soliton
