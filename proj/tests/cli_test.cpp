#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sqcas/cli.hpp"

using namespace sqcas::cli;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const RunConfig& config) {
  std::ostringstream out, err;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig command(const std::string& name) {
  RunConfig c;
  c.command = name;
  return c;
}

bool check_passed(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return c["passed"].get<bool>();
  FAIL("no check named " << name);
  return false;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("config parsing helpers") {
  const auto g = parse_grid("-10:10:2001");
  CHECK(g.x_min == -10.0);
  CHECK(g.x_max == 10.0);
  CHECK(g.n_points == 2001);
  CHECK(parse_grid("-1.5:2.5e0:11").x_max == 2.5);
  CHECK_THROWS_AS(parse_grid("-10:10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:10:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:2.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:0:10"), std::invalid_argument);

  CHECK(parse_format("latex") == Format::latex);
  CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);

  CHECK(parse_complex("3") == std::complex<double>(3, 0));
  CHECK(parse_complex("4i") == std::complex<double>(0, 4));
  CHECK(parse_complex("-i") == std::complex<double>(0, -1));
  CHECK(parse_complex("i") == std::complex<double>(0, 1));
  CHECK(parse_complex("1+2i") == std::complex<double>(1, 2));
  CHECK(parse_complex("1.5 - 0.25i") == std::complex<double>(1.5, -0.25));
  CHECK(parse_complex("1e-3-1e+2i") == std::complex<double>(1e-3, -1e2));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+j"), std::invalid_argument);

  RunConfig bad;
  bad.tol_pair = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = RunConfig{};
  bad.k = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("environment overrides tolerances") {
  std::map<std::string, std::string> env{{"SQCAS_TOL_PAIR", "1e-3"}, {"SQCAS_TOL_BAG", "2e-9"}};
  auto lookup = [&](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  RunConfig c;
  apply_environment(c, lookup);
  CHECK(c.tol_pair == 1e-3);
  CHECK(c.tol_bag == 2e-9);
  CHECK_FALSE(c.tol_zero);

  env["SQCAS_TOL_ZERO"] = "oops";
  CHECK_THROWS_AS(apply_environment(c, lookup), std::invalid_argument);
}

TEST_CASE("derive on the harmonic superpotential") {
  auto c = command("derive");
  c.f_source = "1/2*x^2";
  const auto r = invoke(c);
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("H = ψ*ψ~ + (1/2)*p^2 + (1/2)*x^2") != std::string::npos);
  CHECK(r.out.find("[PASS] hamiltonian_template") != std::string::npos);

  c.format = Format::json;
  const auto j = json::parse(invoke(c).out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["hamiltonian"]["commutator_coefficient"] == "(1/2)");
  CHECK(j["hamiltonian"]["matches_printed_sign"] == false);
  CHECK(j["passed"] == true);

  c.format = Format::latex;
  const auto latex = invoke(c).out;
  CHECK(latex.rfind("\\begin{align}", 0) == 0);
  CHECK(latex.find("H &=") != std::string::npos);

  c.format = Format::csv;
  CHECK(invoke(c).code == kExitUsage);
}

TEST_CASE("derive input errors") {
  auto c = command("derive");
  auto r = invoke(c);
  CHECK(r.code == kExitUsage);
  CHECK(json::parse(r.err)["error"]["kind"] == "usage");

  c.f_source = "x^(1/2)";
  r = invoke(c);
  CHECK(r.code == kExitUsage);
  const auto e = json::parse(r.err)["error"];
  CHECK(e["kind"] == "parse");
  CHECK(e["column"] == 4);

  c.f_source = "sin(x)";
  CHECK(invoke(c).code == kExitUsage);
  CHECK(invoke(command("nonsense")).code == kExitUsage);
}

TEST_CASE("check-susy reports six zero residuals") {
  const auto r = invoke(command("check-susy"));
  CHECK(r.code == kExitPass);
  const auto j = json::parse(r.out);
  REQUIRE(j["residuals"].size() == 6);
  for (const auto& res : j["residuals"]) CHECK(res["value"] == "0");
  CHECK(j["invariance"]["residual"] == "0");
  CHECK(check_passed(j, "unique_convention_set"));
  CHECK(check_passed(j, "off_shell_invariance"));

  auto c = command("check-susy");
  c.f_source = "x^3 - 2/3*x^5";
  CHECK(invoke(c).code == kExitPass);
}

TEST_CASE("spectrum of the harmonic oscillator") {
  auto c = command("spectrum");
  c.v_source = "x";
  c.grid = parse_grid("-10:10:2001");
  const auto r = invoke(c);
  CHECK(r.code == kExitPass);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,E_minus,E_plus,pair_residual");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 6);

  c.format = Format::json;
  const auto j = json::parse(invoke(c).out);
  CHECK(std::abs(j["report"]["witten_index"].get<int>()) == 1);
  CHECK(check_passed(j, "pair_residuals_below_tol_pair"));
  CHECK(j["ground_state"]["max_deviation"].get<double>() < 1e-4);

  // Same potential through V = -f'.
  auto via_f = c;
  via_f.v_source.reset();
  via_f.f_source = "-1/2*x^2";
  const auto jf = json::parse(invoke(via_f).out);
  CHECK(jf["report"] == j["report"]);

  // Without extrapolation the raw grid residuals exceed the default tolerance.
  c.richardson = false;
  const auto raw = invoke(c);
  CHECK(raw.code == kExitCheckFailed);
  const auto jr = json::parse(raw.out);
  CHECK(jr["passed"] == false);
  CHECK_FALSE(check_passed(jr, "pair_residuals_below_tol_pair"));

  c.tol_pair = 1e-3;
  CHECK(invoke(c).code == kExitPass);
}

TEST_CASE("spectrum argument errors") {
  auto c = command("spectrum");
  CHECK(invoke(c).code == kExitUsage);
  c.v_source = "x";
  c.f_source = "x";
  CHECK(invoke(c).code == kExitUsage);
  c.f_source.reset();
  c.format = Format::latex;
  CHECK(invoke(c).code == kExitUsage);
}

TEST_CASE("spectrum with a closed-form potential") {
  auto c = command("spectrum");
  c.v_source = "sin(x)";
  c.grid = parse_grid("-10:10:401");
  c.format = Format::json;
  const auto r = invoke(c);
  const auto j = json::parse(r.out);
  CHECK(j["potential"] == "sin(x)");
  CHECK(j["ground_state"].is_null());
  CHECK(j["report"]["eigenvalues_minus"].size() == 6);
}

TEST_CASE("soliton pipeline") {
  auto c = command("soliton");
  c.format = Format::json;
  const auto r = invoke(c);
  const auto j = json::parse(r.out);
  CHECK(check_passed(j, "kink_energy_matches_bps"));
  CHECK(check_passed(j, "bps_pointwise"));
  CHECK(check_passed(j, "sech_identity"));
  CHECK(check_passed(j, "printed_f_equals_i_v"));
  CHECK(check_passed(j, "representation_search_nonempty"));
  CHECK(check_passed(j, "bag_property"));
  // The printed auxiliary component and the negative control do not hold;
  // see the README.
  CHECK_FALSE(check_passed(j, "supersoliton_matches_printed"));
  CHECK_FALSE(check_passed(j, "negative_control_nonzero"));
  CHECK(r.code == kExitCheckFailed);
  CHECK(j["representation_search"]["count"] == 32);

  c.alpha0 = -1;
  CHECK(invoke(c).code == kExitUsage);
  c.alpha0 = 1;
  c.grid = parse_grid("-20:20:4000");
  CHECK(invoke(c).code == kExitUsage);
}

TEST_CASE("qubit normalization") {
  auto c = command("qubit");
  c.amp0 = "3";
  c.amp1 = "4i";
  const auto r = invoke(c);
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("P(0) = 0.36, P(1) = 0.64") != std::string::npos);

  c.format = Format::json;
  const auto j = json::parse(invoke(c).out);
  CHECK(j["probability0"].get<double>() == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(j["amp1"][1].get<double>() == doctest::Approx(0.8).epsilon(1e-15));

  c.amp0 = "0";
  c.amp1 = "0";
  CHECK(invoke(c).code == kExitUsage);
  c.amp0 = "x";
  CHECK(invoke(c).code == kExitUsage);
}

TEST_CASE("artifacts are written and deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "sqcas_cli_test";
  std::filesystem::remove_all(dir);

  auto c = command("spectrum");
  c.v_source = "x^3";
  c.grid = parse_grid("-6:6:801");
  c.out_dir = dir / "a";
  const auto first = invoke(c);
  c.out_dir = dir / "b";
  const auto second = invoke(c);
  CHECK(first.out == second.out);
  for (const char* name : {"spectrum.json", "spectrum.csv"}) {
    CHECK(std::filesystem::exists(dir / "a" / name));
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }

  auto s = command("soliton");
  s.out_dir = dir / "s";
  invoke(s);
  for (const char* name : {"soliton.json", "soliton_profile.csv", "representation_search.json"})
    CHECK(std::filesystem::exists(dir / "s" / name));

  auto d = command("derive");
  d.f_source = "x^3";
  d.out_dir = dir / "d";
  invoke(d);
  CHECK(slurp(dir / "d" / "derive.tex").find("\\end{align}") != std::string::npos);
  CHECK(json::parse(slurp(dir / "d" / "derive.json"))["command"] == "derive");

  std::filesystem::remove_all(dir);
}
