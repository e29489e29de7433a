// fracvar command-line driver.
//
// Exit codes: 0 success, 1 config/usage error, 2 inadmissible regime,
// 3 non-convergence, 4 verification failures.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracvar/diagnostics.hpp"
#include "fracvar/io.hpp"
#include "fracvar/regime.hpp"
#include "fracvar/suites.hpp"
#include "fracvar/variational.hpp"

namespace fs = std::filesystem;
using namespace fracvar;

namespace {

enum Exit : int { kOk = 0, kConfig = 1, kRegime = 2, kNotConverged = 3, kVerifyFailed = 4 };

std::vector<double> parse_list(const std::string& text) {
  // "a,b,c" or "lo:hi:count" (log-spaced)
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto p1 = text.find(':'), p2 = text.rfind(':');
    return log_spaced(std::stod(text.substr(0, p1)), std::stod(text.substr(p1 + 1, p2 - p1 - 1)),
                      std::stoul(text.substr(p2 + 1)));
  }
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw ConfigError("bad list entry: " + item);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int regime_failure(const RegimeError& e) {
  std::cerr << "inadmissible regime: " << e.what() << "\n";
  if (e.report().regime == Regime::supercritical)
    std::cerr << "hint: `fracvar scaling` traces E(u_lambda) -> -infinity along u_lambda(x) = "
                 "lambda^{N/2} u(lambda x)\n";
  print_json(Json{{"error", e.what()}, {"regime", to_json(e.report())}});
  return kRegime;
}

int cmd_solve(const std::string& config_path) {
  const RunConfig rc = run_config_from_text(read_file(config_path));
  const SolveResult r = solve_pc(rc.solve);
  Json out = to_json(r, rc.echo);
  out["threads"] = rc.solve.threads;
  const fs::path dir = rc.output.dir;
  if (rc.output.emit_json) write_file(dir / "result.json", out.dump(2) + "\n");
  if (rc.output.emit_profile) write_file(dir / "profile.csv", field_to_csv(r.minimizer));
  print_json(out);
  if (r.truncation_warning) std::cerr << "warning: minimizer carries mass near the box edge (truncation)\n";
  return r.converged ? kOk : kNotConverged;
}

int cmd_regime(const std::string& ell, const std::string& s, int N) {
  print_json(to_json(classify_regime(Rational::parse(ell), Rational::parse(s), N)));
  return kOk;
}

int cmd_verify(const std::string& suite, std::size_t trials, std::uint64_t seed, bool adversarial) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    std::cerr << "unknown suite '" << suite << "'\n";
    return kConfig;
  }
  if (trials == 0) {
    std::cerr << "--trials must be >= 1\n";
    return kConfig;
  }
  const SuiteVerdict v = run_suite(suite, trials, seed, adversarial);
  print_json(to_json(v));
  return v.pass() ? kOk : kVerifyFailed;
}

int cmd_gn(double s, double alpha, std::size_t n, double L, const std::string& out_dir) {
  if (s < 1.0 && !(alpha > 0.0 && alpha < alpha_max_frank_lenzmann(s))) {
    std::cerr << "alpha outside the admissible window (0, alpha_max(s))\n";
    RegimeReport rep = classify_regime(alpha, s, 1);
    print_json(Json{{"error", "alpha outside the admissible window"}, {"regime", to_json(rep)}});
    return kRegime;
  }
  WeinsteinConfig wc;
  wc.grid = GridSpec(1, n, L);
  wc.s = s;
  wc.alpha = alpha;
  const auto w = minimize_weinstein(wc);
  Json j{{"s", s},
               {"alpha", alpha},
               {"J_min", w.J_min},
               {"Kprime", gn_constant(w.J_min, s, alpha)},
               {"theta", gn_theta(1, s, alpha)},
               {"iterations", w.iterations},
               {"converged", w.converged},
               {"residual", w.residual},
               {"symmetry_defect", symmetry_defect(w.Q)}};
  if (s == 1.0 && alpha == 2.0) j["sech_profile_error"] = sech_profile_error(w.Q);
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "gn.json", j.dump(2) + "\n");
    write_file(fs::path(out_dir) / "gn_profile.csv", field_to_csv(w.Q));
  }
  print_json(j);
  return w.converged ? kOk : kNotConverged;
}

int cmd_scaling(const ScalingConfig& cfg, const std::string& out_dir) {
  const auto table = scaling_family(cfg);
  const std::string csv = scaling_to_csv(table);
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "scaling.csv", csv);
    write_file(fs::path(out_dir) / "scaling.json", to_json(table).dump(2) + "\n");
  }
  std::cout << csv;
  if (table.truncation_warning) std::cerr << "warning: some dilated profiles have fewer than 8 points per width\n";
  return kOk;
}

int cmd_scan(const std::string& config_path, const std::string& c_grid) {
  const RunConfig rc = run_config_from_text(read_file(config_path));
  const auto scan = scan_mass(rc.solve, parse_list(c_grid));
  const fs::path dir = rc.output.dir;
  write_file(dir / "scan.csv", scan_to_csv(scan));
  Json j = to_json(scan);
  j["threads"] = rc.solve.threads;
  j["config_echo"] = rc.echo;
  if (rc.output.emit_json) write_file(dir / "scan.json", j.dump(2) + "\n");
  print_json(j);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained fractional variational problems: solver and verification suites"};
  app.require_subcommand(1);

  std::string config_path;
  auto* solve = app.add_subcommand("solve", "Minimize E on the mass sphere from a JSON run config");
  solve->add_option("config", config_path, "Run config (JSON)")->required();

  std::string ell_text, s_text;
  int dim = 1;
  auto* regime = app.add_subcommand("regime", "Classify l against 4s/N (exact for rational input)");
  regime->add_option("--ell", ell_text, "Growth exponent, e.g. 2 or 3/2")->required();
  regime->add_option("--s", s_text, "Fractional order, e.g. 1/2 or 0.25")->required();
  regime->add_option("--N", dim, "Dimension")->check(CLI::IsMember({1, 2}));

  std::string suite;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool adversarial = false;
  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  verify->add_option("--suite", suite, "polya-szego|riesz|gn|supermodular|gradient|decay")->required();
  verify->add_option("--trials", trials, "Number of trials (>= 1)");
  verify->add_option("--seed", seed, "Base seed");
  verify->add_flag("--adversarial", adversarial, "supermodular: use the increasing weight e^{+r}");

  double gn_s = 0.5, gn_alpha = 1.0, gn_L = 40.0;
  std::size_t gn_n = 1024;
  std::string out_dir;
  auto* gn = app.add_subcommand("gn", "Minimize the Weinstein quotient and report the sharp GN constant");
  gn->add_option("--s", gn_s, "Fractional order in (0, 1], 1 = classical oracle");
  gn->add_option("--alpha", gn_alpha, "Exponent alpha");
  gn->add_option("--n", gn_n, "Grid points");
  gn->add_option("--L", gn_L, "Box length");
  gn->add_option("--out", out_dir, "Directory for gn.json and gn_profile.csv");

  ScalingConfig sc;
  sc.s = 0.5;
  sc.c = 3.0;
  std::string profile = "gaussian", lambda_grid = "1:64:10", kind = "pure_power";
  double sc_ell = 3.0, sc_amp = 1.0, sc_omega = 0.0, sc_L = 40.0;
  std::size_t sc_n = 16384;
  auto* scaling = app.add_subcommand("scaling", "Energies along the mass-preserving dilation family");
  scaling->add_option("--profile", profile, "gaussian|sech");
  scaling->add_option("--lambda-grid", lambda_grid, "lo:hi:count (log-spaced) or a,b,c");
  scaling->add_option("--s", sc.s, "Fractional order");
  scaling->add_option("--ell", sc_ell, "Growth exponent");
  scaling->add_option("--kind", kind, "pure_power|weighted_power|zero");
  scaling->add_option("--amplitude", sc_amp, "Nonlinearity amplitude");
  scaling->add_option("--weight-rate", sc_omega, "Weight decay rate (weighted_power)");
  scaling->add_option("--c", sc.c, "Mass level c (int u^2 = c^2)");
  scaling->add_option("--N", dim, "Dimension")->check(CLI::IsMember({1, 2}));
  scaling->add_option("--n", sc_n, "Grid points per axis");
  scaling->add_option("--L", sc_L, "Box length");
  scaling->add_option("--out", out_dir, "Directory for scaling.csv and scaling.json");

  std::string c_grid;
  auto* scan = app.add_subcommand("scan", "Relaxed-problem infimum over a grid of mass levels");
  scan->add_option("config", config_path, "Run config (JSON); problem.c is ignored")->required();
  scan->add_option("--c-grid", c_grid, "Increasing mass levels a,b,c")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) return cmd_solve(config_path);
    if (*regime) return cmd_regime(ell_text, s_text, dim);
    if (*verify) return cmd_verify(suite, trials, seed, adversarial);
    if (*gn) return cmd_gn(gn_s, gn_alpha, gn_n, gn_L, out_dir);
    if (*scaling) {
      sc.grid = GridSpec(dim, sc_n, sc_L);
      sc.profile = parse_profile_kind(profile);
      const auto k = parse_nonlinearity_kind(kind);
      sc.spec = k == NonlinearityKind::pure_power      ? NonlinearitySpec::pure_power(sc_ell, sc_amp)
                : k == NonlinearityKind::weighted_power ? NonlinearitySpec::weighted_power(sc_ell, sc_amp, sc_omega)
                                                        : NonlinearitySpec::zero(sc_ell);
      sc.lambdas = parse_list(lambda_grid);
      return cmd_scaling(sc, out_dir);
    }
    if (*scan) return cmd_scan(config_path, c_grid);
  } catch (const RegimeError& e) {
    return regime_failure(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
