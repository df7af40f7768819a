#include "sqcas/spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sqcas::spectra {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t n = 1; n < c.size(); ++n) out.push_back(c[n] * static_cast<double>(n));
  return out;
}

std::vector<double> antiderivative(const std::vector<double>& c) {
  std::vector<double> out{0.0};
  for (std::size_t n = 0; n < c.size(); ++n) out.push_back(c[n] / static_cast<double>(n + 1));
  return out;
}

/// Number of eigenvalues of `h` strictly below `lambda`.
std::size_t sturm_count(const Tridiagonal& h, double lambda) {
  std::size_t count = 0;
  double q = 1.0;
  const double tiny = kEps * kEps;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : h.off[i - 1] * h.off[i - 1];
    q = h.diag[i] - lambda - (i == 0 ? 0.0 : coupling / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin(const Tridiagonal& h) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < h.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(h.off[i - 1]);
    if (i + 1 < h.size()) r += std::abs(h.off[i]);
    lo = std::min(lo, h.diag[i] - r);
    hi = std::max(hi, h.diag[i] + r);
  }
  return {lo, hi};
}

Tridiagonal householder(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += a[i][k] * a[i][k];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[k + 1][k] > 0 ? -norm : norm;

    std::vector<double> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a[i][k];
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += v[i] * v[i];
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // A ← A − 2vwᵀ − 2wvᵀ with p = Av, w = p − (vᵀp)v, on the trailing block.
    std::vector<double> p(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) p[i] += a[i][j] * v[j];
    double vp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vp += v[i] * p[i];
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= vp * v[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= 2.0 * (v[i] * p[j] + p[i] * v[j]);

    a[k + 1][k] = a[k][k + 1] = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a[i][k] = a[k][i] = 0.0;
  }
  Tridiagonal t;
  for (std::size_t i = 0; i < n; ++i) t.diag.push_back(a[i][i]);
  for (std::size_t i = 0; i + 1 < n; ++i) t.off.push_back(a[i + 1][i]);
  return t;
}

/// Solves (h − shift) y = b in place by LU with partial pivoting.
void shifted_solve(const Tridiagonal& h, double shift, std::vector<double>& b) {
  const std::size_t n = h.size();
  std::vector<double> d(n), dl(h.off), du(h.off), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<bool> swapped(n, false);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = h.diag[i] - shift;
    scale = std::max(scale, std::abs(h.diag[i]) + (i < h.off.size() ? std::abs(h.off[i]) : 0.0));
  }
  const double tiny = kEps * std::max(scale, 1.0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      b[i + 1] -= dl[i] * b[i];
    } else {
      const double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - dl[i] * b[i];
    }
  }
  b[n - 1] /= d[n - 1];
  if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
}

void normalize_l2(std::vector<double>& v) {
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (auto& x : v) x /= norm;
}

/// Scales to Σψ²h = 1 and makes the largest-magnitude entry positive.
void normalize_on_grid(std::vector<double>& v, double h) {
  normalize_l2(v);
  const auto peak = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double s = (*peak < 0 ? -1.0 : 1.0) / std::sqrt(h);
  for (auto& x : v) x *= s;
}

std::size_t count_below(const std::vector<double>& e, double tol) {
  return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [tol](double x) { return std::abs(x) < tol; }));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

void Grid::validate() const {
  if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(x_min < x_max)) throw std::invalid_argument("grid needs x_min < x_max");
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  while (!coefficients.empty() && coefficients.back() == 0.0) coefficients.pop_back();
  auto derived = differentiate(coefficients);
  Potential v;
  v.value = [c = coefficients](double x) { return horner(c, x); };
  v.derivative = [c = std::move(derived)](double x) { return horner(c, x); };
  v.coefficients = std::move(coefficients);
  return v;
}

Potential Potential::closed_form(std::function<double(double)> value, std::function<double(double)> derivative) {
  return {std::move(value), std::move(derivative), std::nullopt};
}

std::vector<std::vector<double>> Tridiagonal::to_dense() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = off[i];
  return m;
}

PartnerHamiltonians discretize(const Potential& v, const Grid& grid) {
  grid.validate();
  const double h = grid.spacing();
  const double kinetic_diag = 1.0 / (h * h);
  const double kinetic_off = -0.5 / (h * h);

  PartnerHamiltonians out;
  for (auto* t : {&out.h_minus, &out.h_plus}) {
    t->diag.resize(grid.n_points);
    t->off.assign(grid.n_points - 1, kinetic_off);
  }
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    const double value = v.value(x);
    const double slope = v.derivative(x);
    const double base = kinetic_diag + 0.5 * value * value;
    out.h_minus.diag[i] = base - 0.5 * slope;
    out.h_plus.diag[i] = base + 0.5 * slope;
  }
  return out;
}

std::vector<double> eigen_spectrum(const Tridiagonal& h, std::size_t k) {
  if (k > h.size()) throw std::invalid_argument("more eigenvalues requested than the matrix has");
  const auto [lo0, hi0] = gershgorin(h);
  const double width = std::max(std::abs(lo0), std::abs(hi0));
  std::vector<double> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    double lo = out.empty() ? lo0 - kEps * width : out.back() - kEps * width;
    double hi = hi0 + kEps * width;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (sturm_count(h, mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<double> eigen_spectrum(const std::vector<std::vector<double>>& h, std::size_t k) {
  const std::size_t n = h.size();
  for (const auto& row : h)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (h[i][j] != h[j][i]) throw std::invalid_argument("matrix is not symmetric");
  if (k > n) throw std::invalid_argument("more eigenvalues requested than the matrix has");
  if (n == 0) return {};
  return eigen_spectrum(householder(h), k);
}

std::vector<double> eigenvector(const Tridiagonal& h, double eigenvalue) {
  std::vector<double> v(h.size(), 1.0);
  for (int it = 0; it < 4; ++it) {
    shifted_solve(h, eigenvalue, v);
    normalize_l2(v);
  }
  const auto peak = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*peak < 0)
    for (auto& x : v) x = -x;
  return v;
}

std::vector<double> pair_residuals(const std::vector<double>& minus, const std::vector<double>& plus,
                                   int witten_index) {
  const auto& lower = witten_index < 0 ? minus : plus;   // sector without the zero mode
  const auto& upper = witten_index < 0 ? plus : minus;   // sector with it
  const std::size_t shift = witten_index == 0 ? 0 : 1;
  std::vector<double> out;
  for (std::size_t n = 0; n + shift < upper.size() && n < lower.size(); ++n)
    out.push_back(std::abs(lower[n] - upper[n + shift]));
  return out;
}

SpectrumReport pairing_report(const Potential& v, const Grid& grid, std::size_t k, const PairingOptions& options) {
  grid.validate();
  const std::size_t kk = std::min(std::max<std::size_t>(k, 2), grid.n_points);
  k = std::min(k, grid.n_points);

  SpectrumReport out;
  out.grid = grid;
  const auto coarse = discretize(v, grid);
  auto raw_minus = eigen_spectrum(coarse.h_minus, kk);
  auto raw_plus = eigen_spectrum(coarse.h_plus, kk);

  auto minus = raw_minus;
  auto plus = raw_plus;
  if (options.richardson) {
    const auto fine = discretize(v, grid.refined());
    const auto fine_minus = eigen_spectrum(fine.h_minus, kk);
    const auto fine_plus = eigen_spectrum(fine.h_plus, kk);
    for (std::size_t i = 0; i < kk; ++i) {
      minus[i] = (4.0 * fine_minus[i] - raw_minus[i]) / 3.0;
      plus[i] = (4.0 * fine_plus[i] - raw_plus[i]) / 3.0;
    }
    out.extrapolated = true;
  }

  const double h = grid.spacing();
  const double gap = std::max(raw_minus[1] - raw_minus[0], raw_plus[1] - raw_plus[0]);
  out.tol_zero = options.tol_zero.value_or(10.0 * gap * h * h);
  out.witten_index = static_cast<int>(count_below(minus, out.tol_zero)) - static_cast<int>(count_below(plus, out.tol_zero));

  // Ground state: smallest eigenvalue overall; ties go to the "−" sector.
  const bool in_plus = plus[0] < minus[0];
  out.ground_state_energy = in_plus ? plus[0] : minus[0];
  out.ground_state_profile = eigenvector(in_plus ? coarse.h_plus : coarse.h_minus, in_plus ? raw_plus[0] : raw_minus[0]);
  normalize_on_grid(out.ground_state_profile, h);

  for (auto* e : {&minus, &plus, &raw_minus, &raw_plus}) e->resize(k);
  out.pair_residuals = pair_residuals(minus, plus, out.witten_index);
  out.raw_pair_residuals = pair_residuals(raw_minus, raw_plus, out.witten_index);
  out.eigenvalues_minus = std::move(minus);
  out.eigenvalues_plus = std::move(plus);
  out.raw_eigenvalues_minus = std::move(raw_minus);
  out.raw_eigenvalues_plus = std::move(raw_plus);
  return out;
}

GroundStateReport ground_state_check(const Potential& v, const Grid& grid) {
  grid.validate();
  const double h = grid.spacing();
  const std::size_t n = grid.n_points;

  std::vector<double> w(n);
  GroundStateReport out;
  if (v.coefficients) {
    const auto& c = *v.coefficients;
    if (c.empty() || c.size() % 2 == 1)
      throw std::domain_error("closed-form ground state is not normalizable (even-degree potential)");
    out.sector = c.back() > 0 ? -1 : 1;
    const auto prim = antiderivative(c);
    for (std::size_t i = 0; i < n; ++i) w[i] = horner(prim, grid.point(i));
  } else {
    // Cumulative trapezoid; normalizable when the exponent rises by a wide
    // margin towards both edges of the box.
    w[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) w[i] = w[i - 1] + 0.5 * h * (v.value(grid.point(i - 1)) + v.value(grid.point(i)));
    const double margin = 20.0;
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    if (w.front() - *lo > margin && w.back() - *lo > margin)
      out.sector = -1;
    else if (*hi - w.front() > margin && *hi - w.back() > margin)
      out.sector = 1;
    else
      throw std::domain_error("closed-form ground state is not normalizable on this box");
  }

  const double sign = out.sector < 0 ? -1.0 : 1.0;
  double peak = -std::numeric_limits<double>::infinity();
  for (double wi : w) peak = std::max(peak, sign * wi);
  out.closed_form.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.closed_form[i] = std::exp(sign * w[i] - peak);
  normalize_on_grid(out.closed_form, h);

  const auto hs = discretize(v, grid);
  const auto& sector = out.sector < 0 ? hs.h_minus : hs.h_plus;
  out.energy = eigen_spectrum(sector, 1).front();
  out.numerical = eigenvector(sector, out.energy);
  normalize_on_grid(out.numerical, h);

  for (std::size_t i = 0; i < n; ++i)
    out.max_deviation = std::max(out.max_deviation, std::abs(out.numerical[i] - out.closed_form[i]));
  return out;
}

std::string to_json(const SpectrumReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["grid"] = {{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"n_points", r.grid.n_points}, {"h", r.grid.spacing()}};
  j["extrapolated"] = r.extrapolated;
  j["tol_zero"] = r.tol_zero;
  j["eigenvalues_minus"] = r.eigenvalues_minus;
  j["eigenvalues_plus"] = r.eigenvalues_plus;
  j["raw_eigenvalues_minus"] = r.raw_eigenvalues_minus;
  j["raw_eigenvalues_plus"] = r.raw_eigenvalues_plus;
  j["pair_residuals"] = r.pair_residuals;
  j["raw_pair_residuals"] = r.raw_pair_residuals;
  j["witten_index"] = r.witten_index;
  j["ground_state_energy"] = r.ground_state_energy;
  j["ground_state_profile"] = r.ground_state_profile;
  return j.dump(2);
}

std::string to_csv(const SpectrumReport& r) {
  std::ostringstream os;
  os << "n,E_minus,E_plus,pair_residual\n";
  const std::size_t rows = std::max(r.eigenvalues_minus.size(), r.eigenvalues_plus.size());
  for (std::size_t i = 0; i < rows; ++i) {
    os << i << ',';
    if (i < r.eigenvalues_minus.size()) os << format_double(r.eigenvalues_minus[i]);
    os << ',';
    if (i < r.eigenvalues_plus.size()) os << format_double(r.eigenvalues_plus[i]);
    os << ',';
    if (i < r.pair_residuals.size()) os << format_double(r.pair_residuals[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace sqcas::spectra
