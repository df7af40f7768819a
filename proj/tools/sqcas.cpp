#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqcas/cli.hpp"

namespace {

void add_output_flags(CLI::App* sub, std::string& format, std::string& out) {
  sub->add_option("--format", format, "json, csv, latex or text");
  sub->add_option("--out", out, "directory for JSON/CSV/LaTeX artifacts");
}

void add_grid_flag(CLI::App* sub, std::string& grid) {
  sub->add_option("--grid", grid, "min:max:n_points");
}

}  // namespace

int main(int argc, char** argv) {
  sqcas::cli::RunConfig config;
  try {
    sqcas::cli::apply_environment(config, [](const char* name) { return std::getenv(name); });
  } catch (const std::exception& e) {
    sqcas::cli::write_error(std::cerr, "usage", e.what());
    return sqcas::cli::kExitUsage;
  }

  CLI::App app{"Symbolic and numerical checks for one-dimensional supersymmetric models"};
  app.require_subcommand(1);

  std::string format, out, grid, f, v;
  std::optional<double> tol_pair, tol_zero, tol_bag;

  auto* derive = app.add_subcommand("derive", "superpotential to component Lagrangian and Hamiltonian");
  derive->add_option("--f", f, "polynomial superpotential f(x)")->required();
  add_output_flags(derive, format, out);

  auto* susy = app.add_subcommand("check-susy", "superalgebra residuals and off-shell invariance");
  susy->add_option("--f", f, "polynomial superpotential f(x), default 1/2*x^2");
  add_output_flags(susy, format, out);

  auto* spectrum = app.add_subcommand("spectrum", "finite-difference partner spectra and pairing");
  auto* v_opt = spectrum->add_option("--V", v, "potential V(x)");
  spectrum->add_option("--f", f, "superpotential f(x); V = -f'")->excludes(v_opt);
  add_grid_flag(spectrum, grid);
  spectrum->add_option("--k", config.k, "eigenvalues per sector")->check(CLI::PositiveNumber);
  spectrum->add_flag("!--no-richardson", config.richardson, "report raw grid eigenvalues");
  spectrum->add_option("--tol-pair", tol_pair, "pair residual tolerance");
  spectrum->add_option("--tol-zero", tol_zero, "zero-mode threshold");
  add_output_flags(spectrum, format, out);

  auto* soliton = app.add_subcommand("soliton", "kink, supersoliton and bag-property checks");
  soliton->add_option("--alpha0", config.alpha0, "alpha0 > 0");
  soliton->add_option("--beta", config.beta, "beta != 0");
  add_grid_flag(soliton, grid);
  soliton->add_option("--tol-bag", tol_bag, "relative fermion energy tolerance");
  add_output_flags(soliton, format, out);

  auto* qubit = app.add_subcommand("qubit", "normalize a two-level state");
  qubit->add_option("--amp0", config.amp0, "amplitude of |0>, e.g. 3 or 1+2i");
  qubit->add_option("--amp1", config.amp1, "amplitude of |1>");
  add_output_flags(qubit, format, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sqcas::cli::kExitUsage;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!f.empty()) config.f_source = f;
  if (!v.empty()) config.v_source = v;
  if (tol_pair) config.tol_pair = *tol_pair;
  if (tol_zero) config.tol_zero = *tol_zero;
  if (tol_bag) config.tol_bag = *tol_bag;
  if (!out.empty()) config.out_dir = out;
  try {
    if (!grid.empty()) config.grid = sqcas::cli::parse_grid(grid);
    if (!format.empty()) config.format = sqcas::cli::parse_format(format);
  } catch (const std::exception& e) {
    sqcas::cli::write_error(std::cerr, "usage", e.what());
    return sqcas::cli::kExitUsage;
  }
  return sqcas::cli::run(config, std::cout, std::cerr);
}
