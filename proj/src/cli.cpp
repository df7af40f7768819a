#include "sqcas/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "sqcas/expr.hpp"
#include "sqcas/parse_error.hpp"
#include "sqcas/reduction.hpp"
#include "sqcas/soliton.hpp"
#include "sqcas/superspace.hpp"

namespace sqcas::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Check {
  std::string name;
  bool passed = false;
  json detail;
};

struct Outcome {
  json report;
  std::string text;
  std::string csv;
  std::string latex;
  std::vector<std::pair<std::string, std::string>> artifacts;
  bool passed = true;
};

double parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

json envelope(const std::string& command) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  return j;
}

void finish(Outcome& o, const std::vector<Check>& checks) {
  json list = json::array();
  std::ostringstream text;
  o.passed = true;
  for (const auto& c : checks) {
    json entry{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.is_null()) entry["detail"] = c.detail;
    list.push_back(entry);
    o.passed = o.passed && c.passed;
    text << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.is_null()) text << "  " << (c.detail.is_string() ? c.detail.get<std::string>() : c.detail.dump());
    text << '\n';
  }
  o.report["checks"] = list;
  o.report["passed"] = o.passed;
  o.text += text.str();
}

std::string text_of(const galg::GradedExpr& e) { return galg::to_string(e); }

expr::NodePtr parse_source(const std::string& source) { return expr::parse_superpotential(source); }

Outcome derive(const RunConfig& c) {
  if (!c.f_source) throw UsageError("derive needs --f");
  const auto tree = parse_source(*c.f_source);
  const auto series = expr::to_series(*tree);
  if (!series) throw UsageError("derive needs a polynomial superpotential");

  const auto l = reduction::reduce_to_lagrangian(reduction::action_integrand(superspace::Superfield::generic(), *series));
  const auto le = reduction::eliminate_auxiliary(l, *series);
  std::vector<Check> checks;
  checks.push_back({"lagrangian_matches_reference", l == reduction::reference_lagrangian(*series), {}});
  checks.push_back({"elimination_paths_agree", le == reduction::extremize_auxiliary(l), {}});

  std::optional<reduction::HamiltonianSpec> h;
  try {
    h = reduction::hamiltonian(le);
    checks.push_back({"hamiltonian_template", true, {}});
  } catch (const std::runtime_error& e) {
    checks.push_back({"hamiltonian_template", false, e.what()});
  }

  Outcome o;
  o.report = envelope("derive");
  o.report["superpotential"] = {{"source", expr::to_string(*tree)}, {"series", text_of(series->in_x())}};
  o.report["lagrangian"] = {{"text", reduction::to_string(l)},
                            {"latex", reduction::to_latex(l)},
                            {"kinetic_bose", text_of(l.kinetic_bose)},
                            {"kinetic_fermi", text_of(l.kinetic_fermi)},
                            {"auxiliary", text_of(l.auxiliary)},
                            {"yukawa", text_of(l.yukawa)}};
  o.report["eliminated"] = {{"text", reduction::to_string(le)}, {"potential_v", text_of(le.potential)}};

  std::ostringstream text, latex;
  text << "f(x) = " << text_of(series->in_x()) << '\n'
       << "L = " << reduction::to_string(l) << '\n'
       << "V(x) = " << text_of(le.potential) << '\n'
       << "L(D = V) = " << reduction::to_string(le) << '\n';
  latex << "\\begin{align}\n"
        << "f(x) &= " << galg::to_latex(series->in_x()) << " \\\\\n"
        << "L &= " << reduction::to_latex(l) << " \\\\\n"
        << "V(x) &= " << galg::to_latex(le.potential);
  if (h) {
    o.report["hamiltonian"] = {{"text", reduction::to_string(*h)},
                               {"latex", reduction::to_latex(*h)},
                               {"potential_v", text_of(h->potential_v)},
                               {"potential_v_prime", text_of(h->potential_v_prime)},
                               {"commutator_coefficient", galg::to_string(h->commutator_coefficient)},
                               {"matches_printed_sign", h->matches_reference_sign}};
    text << "H = " << reduction::to_string(*h) << '\n'
         << "c = " << galg::to_string(h->commutator_coefficient)
         << (h->matches_reference_sign ? " (agrees with the printed -1/2)" : " (printed form has -1/2)") << '\n';
    latex << " \\\\\nH &= " << reduction::to_latex(*h);
  }
  latex << "\n\\end{align}\n";
  o.text = text.str();
  o.latex = latex.str();
  finish(o, checks);
  o.artifacts = {{"derive.json", o.report.dump(2) + "\n"}, {"derive.tex", o.latex}};
  return o;
}

Outcome check_susy(const RunConfig& c) {
  const std::string source = c.f_source.value_or("1/2*x^2");
  const auto tree = parse_source(source);
  const auto series = expr::to_series(*tree);
  if (!series) throw UsageError("check-susy needs a polynomial superpotential");

  Outcome o;
  o.report = envelope("check-susy");
  std::vector<Check> checks;
  json residuals = json::array();
  for (const auto& r : superspace::algebra_report().residuals) {
    residuals.push_back({{"name", r.name}, {"value", text_of(r.value)}});
    checks.push_back({r.name, r.passed(), text_of(r.value)});
  }
  o.report["residuals"] = residuals;

  const auto conventions = superspace::convention_search();
  checks.push_back({"unique_convention_set", conventions.size() == 1 && conventions.front() == superspace::Conventions{},
                    static_cast<int>(conventions.size())});

  const auto l = reduction::reduce_to_lagrangian(reduction::action_integrand(superspace::Superfield::generic(), *series));
  const auto inv = reduction::invariance_residual(l, superspace::SusyParams::generic());
  o.report["superpotential"] = expr::to_string(*tree);
  o.report["invariance"] = {{"variation", text_of(inv.variation)},
                            {"boundary", text_of(inv.boundary)},
                            {"residual", text_of(inv.residual)}};
  checks.push_back({"off_shell_invariance", inv.passed(), text_of(inv.residual)});

  finish(o, checks);
  o.artifacts = {{"check_susy.json", o.report.dump(2) + "\n"}};
  return o;
}

struct BuiltPotential {
  expr::NodePtr tree;
  spectra::Potential potential;
};

BuiltPotential build_potential(const RunConfig& c) {
  if (c.v_source && c.f_source) throw UsageError("give either --V or --f, not both");
  if (!c.v_source && !c.f_source) throw UsageError("spectrum needs --V or --f");
  expr::NodePtr v;
  if (c.v_source) {
    v = parse_source(*c.v_source);
  } else {
    const auto df = expr::derivative(*parse_source(*c.f_source));
    v = df->kind == expr::Node::Kind::neg ? df->args.front() : expr::Node::unary(expr::Node::Kind::neg, df);
  }
  if (auto series = expr::to_series(*v)) {
    std::vector<double> coeffs;
    for (const auto& a : series->coefficients()) {
      if (!a.is_real()) throw UsageError("potential must be real");
      coeffs.push_back(a.real().get_d());
    }
    return {v, spectra::Potential::polynomial(std::move(coeffs))};
  }
  const auto dv = expr::derivative(*v);
  return {v, spectra::Potential::closed_form([v](double x) { return expr::evaluate(*v, x); },
                                             [dv](double x) { return expr::evaluate(*dv, x); })};
}

Outcome spectrum(const RunConfig& c) {
  const auto built = build_potential(c);
  const spectra::Grid grid = c.grid.value_or(spectra::Grid{});
  grid.validate();
  spectra::PairingOptions options{c.richardson, c.tol_zero};
  const auto r = spectra::pairing_report(built.potential, grid, c.k, options);

  Outcome o;
  o.report = envelope("spectrum");
  o.report["potential"] = expr::to_string(*built.tree);
  o.report["tol_pair"] = c.tol_pair;
  o.report["report"] = json::parse(spectra::to_json(r));

  const double worst = r.pair_residuals.empty() ? 0.0 : *std::max_element(r.pair_residuals.begin(), r.pair_residuals.end());
  std::vector<Check> checks;
  checks.push_back({"pair_residuals_below_tol_pair", worst < c.tol_pair, worst});
  checks.push_back({"witten_index_in_range", std::abs(r.witten_index) <= 1, r.witten_index});

  if (built.potential.coefficients && built.potential.coefficients->size() % 2 == 0) {
    const auto g = spectra::ground_state_check(built.potential, grid);
    o.report["ground_state"] = {{"sector", g.sector}, {"energy", g.energy}, {"max_deviation", g.max_deviation}};
  } else {
    o.report["ground_state"] = nullptr;
  }

  std::ostringstream text;
  text << "V(x) = " << expr::to_string(*built.tree) << '\n'
       << "grid = [" << grid.x_min << ", " << grid.x_max << "] x " << grid.n_points << '\n'
       << "witten_index = " << r.witten_index << '\n';
  for (std::size_t n = 0; n < r.eigenvalues_minus.size(); ++n)
    text << "E-[" << n << "] = " << r.eigenvalues_minus[n] << "   E+[" << n << "] = " << r.eigenvalues_plus[n] << '\n';
  o.text = text.str();
  o.csv = spectra::to_csv(r);
  finish(o, checks);
  o.artifacts = {{"spectrum.json", o.report.dump(2) + "\n"}, {"spectrum.csv", o.csv}};
  return o;
}

Outcome soliton_run(const RunConfig& c) {
  using namespace soliton;
  const KinkParams p{c.alpha0, c.beta};
  p.validate();
  const Grid grid = c.grid.value_or(Grid{-20.0 / p.mass(), 20.0 / p.mass(), 4001});
  grid.validate();
  if (grid.n_points % 2 == 0) throw UsageError("soliton quadrature needs an odd number of grid points");

  std::vector<Check> checks;
  Outcome o;
  o.report = envelope("soliton");
  o.report["params"] = {{"alpha0", p.alpha0}, {"beta", p.beta}};
  o.report["grid"] = {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_points", grid.n_points}};

  const double energy = kink_energy(p, grid);
  const double rel = std::abs(energy / bps_energy(p) - 1.0);
  double pointwise = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    pointwise = std::max(pointwise, std::abs(0.5 * std::pow(kink_slope(p, x), 2) - potential_u(p, kink_profile(p, x))));
  }
  o.report["kink"] = {{"energy", energy}, {"bps_energy", bps_energy(p)}, {"relative_error", rel},
                      {"bps_pointwise_max", pointwise}, {"narrow_grid", grid_too_narrow(p, grid)}};
  checks.push_back({"kink_energy_matches_bps", rel < 1e-8, rel});
  checks.push_back({"bps_pointwise", pointwise < 1e-10, pointwise});

  std::vector<double> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(-5.0 + 10.0 * i / 99.0);
  const double sech_dev = sech_identity_deviation(p, xs);
  checks.push_back({"sech_identity", sech_dev < 1e-12, sech_dev});

  const auto comps = supersoliton_components();
  o.report["supersoliton"] = {{"expansion", text_of(comps.expansion)}, {"printed", text_of(comps.printed)},
                              {"residual", text_of(comps.residual)}, {"f_derived", text_of(comps.f_derived)},
                              {"f_printed", text_of(comps.f_printed)}};
  checks.push_back({"supersoliton_matches_printed", comps.matches_printed(), text_of(comps.residual)});
  checks.push_back({"printed_f_equals_i_v", comps.f_printed_is_i_v, {}});

  std::vector<SearchEntry> found;
  try {
    found = representation_search();
  } catch (const std::runtime_error&) {
  }
  checks.push_back({"representation_search_nonempty", !found.empty(), static_cast<int>(found.size())});
  o.report["representation_search"] = json::parse(to_json(found));

  double worst_ratio = 0.0;
  bool bag = !found.empty();
  for (const auto& e : found) {
    const auto spinor = zero_mode(p, {1.0, e.w});
    for (const auto& g : {grid, grid.refined()}) {
      const auto d = total_energy(p, e.rep, spinor, g);
      worst_ratio = std::max(worst_ratio, std::abs(d.fermi_energy) / d.bose_energy);
      bag = bag && std::abs(d.fermi_energy) < c.tol_bag * d.bose_energy;
    }
  }
  checks.push_back({"bag_property", bag, worst_ratio});

  // Negative control: a surviving representation paired with a phase the
  // search rejected for it.
  const complex control_w = 1.0;
  const auto control = std::find_if(found.begin(), found.end(), [&](const SearchEntry& e) {
    return std::none_of(found.begin(), found.end(),
                        [&](const SearchEntry& f) { return f.rep.label == e.rep.label && f.w == control_w; });
  });
  if (control != found.end()) {
    const auto d = total_energy(p, control->rep, zero_mode(p, {1.0, control_w}), grid);
    o.report["negative_control"] = {{"rep", control->rep.label}, {"w", "1"},
                                    {"fermi_energy", {d.fermi_energy.real(), d.fermi_energy.imag()}},
                                    {"fermi_density_max", d.fermi_density_max}};
    checks.push_back({"negative_control_nonzero", std::abs(d.fermi_energy) >= c.tol_bag * d.bose_energy,
                      std::abs(d.fermi_energy)});
  } else {
    checks.push_back({"negative_control_nonzero", false, "no representation rejects w = 1"});
  }

  std::ostringstream text;
  text << "kink energy = " << energy << " (BPS " << bps_energy(p) << ")\n"
       << "supersoliton S = " << text_of(comps.expansion) << '\n'
       << "representations with vanishing bilinears: " << found.size() << '\n';
  o.text = text.str();
  if (!found.empty()) o.csv = profile_csv(p, found.front().rep, zero_mode(p, {1.0, found.front().w}), grid);
  finish(o, checks);
  o.artifacts = {{"soliton.json", o.report.dump(2) + "\n"},
                 {"representation_search.json", to_json(found) + "\n"}};
  if (!o.csv.empty()) o.artifacts.emplace_back("soliton_profile.csv", o.csv);
  return o;
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

Outcome qubit(const RunConfig& c) {
  const auto a0 = parse_complex(c.amp0);
  const auto a1 = parse_complex(c.amp1);
  const auto q = soliton::qubit_from_amplitudes(a0, a1);
  const double total = q.probability0() + q.probability1();

  Outcome o;
  o.report = envelope("qubit");
  o.report["amp0"] = {q.amp0.real(), q.amp0.imag()};
  o.report["amp1"] = {q.amp1.real(), q.amp1.imag()};
  o.report["probability0"] = q.probability0();
  o.report["probability1"] = q.probability1();
  std::ostringstream text;
  text << "psi = (" << complex_text(q.amp0) << ")|0> + (" << complex_text(q.amp1) << ")|1>\n"
       << "P(0) = " << q.probability0() << ", P(1) = " << q.probability1() << '\n';
  o.text = text.str();
  finish(o, {{"normalized", std::abs(total - 1.0) < 1e-12, total}});
  o.artifacts = {{"qubit.json", o.report.dump(2) + "\n"}};
  return o;
}

Format resolve_format(const std::string& command, Format requested) {
  struct Allowed {
    const char* command;
    Format fallback;
    std::vector<Format> formats;
  };
  static const std::vector<Allowed> table = {
      {"derive", Format::text, {Format::text, Format::latex, Format::json}},
      {"check-susy", Format::json, {Format::json, Format::text}},
      {"spectrum", Format::csv, {Format::csv, Format::json, Format::text}},
      {"soliton", Format::json, {Format::json, Format::csv, Format::text}},
      {"qubit", Format::text, {Format::text, Format::json}},
  };
  for (const auto& a : table) {
    if (command != a.command) continue;
    if (requested == Format::automatic) return a.fallback;
    if (std::find(a.formats.begin(), a.formats.end(), requested) == a.formats.end())
      throw UsageError("format not available for " + command);
    return requested;
  }
  throw UsageError("unknown command '" + command + "'");
}

void write_artifacts(const std::filesystem::path& dir, const Outcome& o) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : o.artifacts) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << content;
  }
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, const json& extra = {}) {
  json j;
  j["schema_version"] = 1;
  j["error"] = {{"kind", kind}, {"message", message}};
  if (!extra.is_null())
    for (const auto& [k, v] : extra.items()) j["error"][k] = v;
  err << j.dump(2) << '\n';
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol_pair > 0.0)) throw std::invalid_argument("tol-pair must be positive");
  if (!(tol_bag > 0.0)) throw std::invalid_argument("tol-bag must be positive");
  if (tol_zero && !(*tol_zero > 0.0)) throw std::invalid_argument("tol-zero must be positive");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

spectra::Grid parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw std::invalid_argument("grid must be min:max:n");
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) throw std::invalid_argument("grid point count must be an integer");
  spectra::Grid g{parse_double(parts[0]), parse_double(parts[1]), n};
  g.validate();
  return g;
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "latex") return Format::latex;
  if (text == "text") return Format::text;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  const std::string im = split == std::string::npos ? body : body.substr(split);
  const double im_value = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_double(im);
  return {re.empty() ? 0.0 : parse_double(re), im_value};
}

void apply_environment(RunConfig& config, const EnvLookup& lookup) {
  auto read = [&](const char* name) -> std::optional<double> {
    const char* v = lookup(name);
    if (!v || !*v) return std::nullopt;
    try {
      return parse_double(v);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(std::string(name) + " is not a number");
    }
  };
  if (auto v = read("SQCAS_TOL_PAIR")) config.tol_pair = *v;
  if (auto v = read("SQCAS_TOL_ZERO")) config.tol_zero = *v;
  if (auto v = read("SQCAS_TOL_BAG")) config.tol_bag = *v;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  Format format;
  try {
    config.validate();
    format = resolve_format(config.command, config.format);
    if (config.command == "derive")
      o = derive(config);
    else if (config.command == "check-susy")
      o = check_susy(config);
    else if (config.command == "spectrum")
      o = spectrum(config);
    else if (config.command == "soliton")
      o = soliton_run(config);
    else
      o = qubit(config);
  } catch (const ParseError& e) {
    report_error(err, "parse", e.what(), json{{"line", e.line()}, {"column", e.column()}});
    return kExitUsage;
  } catch (const UsageError& e) {
    report_error(err, "usage", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    report_error(err, "invalid_argument", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    report_error(err, "domain", e.what());
    return kExitUsage;
  }

  switch (format) {
    case Format::json: out << o.report.dump(2) << '\n'; break;
    case Format::csv: out << o.csv; break;
    case Format::latex: out << o.latex; break;
    default: out << o.text; break;
  }
  if (config.out_dir) {
    try {
      write_artifacts(*config.out_dir, o);
    } catch (const std::exception& e) {
      report_error(err, "io", e.what());
      return kExitUsage;
    }
  }
  return o.passed ? kExitPass : kExitCheckFailed;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
  report_error(err, kind, message);
}

}  // namespace sqcas::cli
