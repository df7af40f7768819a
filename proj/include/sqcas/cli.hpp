#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "sqcas/spectra.hpp"

namespace sqcas::cli {

enum class Format { automatic, json, csv, latex, text };

struct RunConfig {
  std::string command;
  std::optional<std::string> f_source;
  std::optional<std::string> v_source;
  std::optional<spectra::Grid> grid;
  std::size_t k = 6;
  bool richardson = true;
  double tol_pair = 1e-6;
  std::optional<double> tol_zero;
  double tol_bag = 1e-10;
  Format format = Format::automatic;
  std::optional<std::filesystem::path> out_dir;
  double alpha0 = 1.0;
  double beta = 1.0;
  std::string amp0 = "1";
  std::string amp1 = "0";

  /// Throws std::invalid_argument for non-positive tolerances or k = 0.
  void validate() const;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// "min:max:n".
spectra::Grid parse_grid(std::string_view text);
Format parse_format(std::string_view text);
/// "3", "-0.5", "4i", "-i", "1+2i", "1.5-0.25i".
std::complex<double> parse_complex(std::string_view text);

using EnvLookup = std::function<const char*(const char*)>;

/// SQCAS_TOL_PAIR, SQCAS_TOL_ZERO, SQCAS_TOL_BAG. Apply before command-line
/// flags so that flags win.
void apply_environment(RunConfig& config, const EnvLookup& lookup);

/// Runs one subcommand (derive, check-susy, spectrum, soliton, qubit).
/// The report goes to `out`; artifacts are also written to out_dir when set.
/// Input errors produce a JSON error report on `err` and kExitUsage.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// {"schema_version": 1, "error": {"kind": ..., "message": ...}}.
void write_error(std::ostream& err, const std::string& kind, const std::string& message);

}  // namespace sqcas::cli
