#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "fracvar/diagnostics.hpp"
#include "fracvar/regime.hpp"
#include "fracvar/variational.hpp"

namespace fracvar {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

inline double number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + ": expected a number");
  return v.get<double>();
}

inline std::uint64_t unsigned_int(const Json& v, const std::string& what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ConfigError(what + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline bool boolean(const Json& v, const std::string& what) {
  if (!v.is_boolean()) throw ConfigError(what + ": expected true/false");
  return v.get<bool>();
}

inline std::string text(const Json& v, const std::string& what) {
  if (!v.is_string()) throw ConfigError(what + ": expected a string");
  return v.get<std::string>();
}

/// JSON has no Inf/NaN; those become null.
inline Json num_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace detail

// ---------------------------------------------------------------------------
// NonlinearitySpec

/// {"kind", "ell", "amplitude", "weight_rate", "K"}; kind and ell are required,
/// amplitude defaults to 1, weight_rate to 0 and K to amplitude/(ell+2).
inline NonlinearitySpec nonlinearity_from_json(const Json& j) {
  const std::string where = "nonlinearity";
  detail::reject_unknown(j, {"kind", "ell", "amplitude", "weight_rate", "K"}, where);
  NonlinearitySpec spec;
  try {
    spec.kind = parse_nonlinearity_kind(detail::text(detail::require(j, "kind", where), where + ".kind"));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  spec.ell = detail::number(detail::require(j, "ell", where), where + ".ell");
  spec.amplitude = j.contains("amplitude") ? detail::number(j["amplitude"], where + ".amplitude")
                                           : (spec.kind == NonlinearityKind::zero ? 0.0 : 1.0);
  spec.weight_rate = j.contains("weight_rate") ? detail::number(j["weight_rate"], where + ".weight_rate") : 0.0;
  spec.K = j.contains("K") ? detail::number(j["K"], where + ".K") : spec.amplitude / (spec.ell + 2.0);
  try {
    return spec.validated();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

inline Json to_json(const NonlinearitySpec& spec) {
  return Json{{"kind", std::string(to_string(spec.kind))},
              {"ell", spec.ell},
              {"amplitude", spec.amplitude},
              {"weight_rate", spec.weight_rate},
              {"K", spec.K}};
}

// ---------------------------------------------------------------------------
// RunConfig

struct OutputOptions {
  std::string dir = "out";
  bool emit_profile = true;
  bool emit_json = true;
};

struct RunConfig {
  SolveConfig solve;
  OutputOptions output;
  Json echo;  // the document as given
};

inline InitKind parse_init(const std::string& v) {
  if (v == "gaussian") return InitKind::gaussian;
  if (v == "constant") return InitKind::constant;
  if (v == "seeded_noise") return InitKind::seeded_noise;
  throw ConfigError("solver.init: unknown value '" + v + "'");
}

inline std::string_view to_string(InitKind k) {
  switch (k) {
    case InitKind::gaussian: return "gaussian";
    case InitKind::constant: return "constant";
    case InitKind::seeded_noise: return "seeded_noise";
  }
  return "?";
}

inline ConstraintMode parse_mode(const std::string& v) {
  if (v == "sphere") return ConstraintMode::sphere;
  if (v == "ball") return ConstraintMode::ball;
  throw ConfigError("solver.inequality_mode: unknown value '" + v + "'");
}

/// Validates the whole document before anything is computed; unknown keys are errors.
inline RunConfig run_config_from_json(const Json& doc) {
  using namespace detail;
  reject_unknown(doc, {"grid", "problem", "solver", "output"}, "config");
  RunConfig rc;
  rc.echo = doc;

  const Json& grid = require(doc, "grid", "config");
  reject_unknown(grid, {"dim", "n", "box_length"}, "grid");
  const auto dim = unsigned_int(require(grid, "dim", "grid"), "grid.dim");
  const auto n = unsigned_int(require(grid, "n", "grid"), "grid.n");
  const double L = number(require(grid, "box_length", "grid"), "grid.box_length");
  try {
    rc.solve.grid = GridSpec(static_cast<int>(dim), n, L);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  const Json& problem = require(doc, "problem", "config");
  reject_unknown(problem, {"s", "c", "nonlinearity"}, "problem");
  rc.solve.s = number(require(problem, "s", "problem"), "problem.s");
  rc.solve.c = number(require(problem, "c", "problem"), "problem.c");
  rc.solve.spec = nonlinearity_from_json(require(problem, "nonlinearity", "problem"));

  if (doc.contains("solver")) {
    const Json& s = doc["solver"];
    reject_unknown(s,
                   {"step", "max_iters", "tol_energy", "tol_residual", "symmetrize_every", "seed", "init",
                    "inequality_mode", "threads"},
                   "solver");
    auto& c = rc.solve;
    if (s.contains("step")) c.step = number(s["step"], "solver.step");
    if (s.contains("max_iters")) c.max_iters = unsigned_int(s["max_iters"], "solver.max_iters");
    if (s.contains("tol_energy")) c.tol_energy = number(s["tol_energy"], "solver.tol_energy");
    if (s.contains("tol_residual")) c.tol_residual = number(s["tol_residual"], "solver.tol_residual");
    if (s.contains("symmetrize_every"))
      c.symmetrize_every = unsigned_int(s["symmetrize_every"], "solver.symmetrize_every");
    if (s.contains("seed")) c.seed = unsigned_int(s["seed"], "solver.seed");
    if (s.contains("init")) c.init = parse_init(text(s["init"], "solver.init"));
    if (s.contains("inequality_mode"))
      c.inequality_mode = parse_mode(text(s["inequality_mode"], "solver.inequality_mode"));
    if (s.contains("threads")) c.threads = static_cast<int>(unsigned_int(s["threads"], "solver.threads"));
  }

  if (doc.contains("output")) {
    const Json& o = doc["output"];
    reject_unknown(o, {"dir", "emit_profile", "emit_json"}, "output");
    if (o.contains("dir")) rc.output.dir = text(o["dir"], "output.dir");
    if (o.contains("emit_profile")) rc.output.emit_profile = boolean(o["emit_profile"], "output.emit_profile");
    if (o.contains("emit_json")) rc.output.emit_json = boolean(o["emit_json"], "output.emit_json");
  }

  try {
    rc.solve.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return rc;
}

inline RunConfig run_config_from_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return run_config_from_json(doc);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const EnergyBreakdown& e) {
  return Json{{"kinetic", e.kinetic}, {"potential", e.potential}, {"total", e.total}, {"mass", e.mass}};
}

inline Json to_json(const SolveResult& r, const Json& config_echo) {
  return Json{{"energy", to_json(r.energy)},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"residual", r.residual},
              {"lagrange_multiplier", r.lagrange_multiplier},
              {"symmetry_defect", r.symmetry_defect},
              {"truncation_warning", r.truncation_warning},
              {"config_echo", config_echo}};
}

inline Json to_json(const RegimeReport& r) {
  Json j{{"regime", std::string(to_string(r.regime))},
         {"threshold_ell", r.threshold_ell},
         {"alpha_max_fl", detail::num_or_null(r.alpha_max_fl)},
         {"alpha_max_fl_infinite", std::isinf(r.alpha_max_fl)},
         {"alpha_max_corrected", detail::num_or_null(r.alpha_max_corrected)}};
  j["critical_mass"] = r.critical_mass ? Json(*r.critical_mass) : Json(nullptr);
  j["critical_mass_literal"] = r.critical_mass_literal ? Json(*r.critical_mass_literal) : Json(nullptr);
  return j;
}

/// `c,I_c,converged`
inline std::string scan_to_csv(const ScanResult& scan) {
  std::string out = "c,I_c,converged\n";
  for (const auto& r : scan.rows)
    out += format_number(r.c) + "," + format_number(r.I) + "," + (r.converged ? "true" : "false") + "\n";
  return out;
}

inline Json to_json(const ScanResult& scan) {
  Json rows = Json::array();
  for (const auto& r : scan.rows)
    rows.push_back(Json{{"c", r.c}, {"I_c", r.I}, {"converged", r.converged}, {"iterations", r.iterations}});
  Json j{{"verdict", scan.pass ? "PASS" : "FAIL"},
         {"strictly_decreasing", scan.strictly_decreasing},
         {"weakly_monotone", scan.weakly_monotone},
         {"tainted", scan.tainted},
         {"rows", rows}};
  if (!scan.warning.empty()) j["warning"] = scan.warning;
  return j;
}

/// `lambda,kinetic,potential,total`
inline std::string scaling_to_csv(const ScalingTable& table) {
  std::string out = "lambda,kinetic,potential,total\n";
  for (const auto& r : table.rows)
    out += format_number(r.lambda) + "," + format_number(r.energy.kinetic) + "," + format_number(r.energy.potential) +
           "," + format_number(r.energy.total) + "\n";
  return out;
}

inline Json to_json(const ScalingTable& table) {
  return Json{{"kinetic_slope", detail::num_or_null(table.kinetic_slope)},
              {"potential_slope", detail::num_or_null(table.potential_slope)},
              {"truncation_warning", table.truncation_warning},
              {"final_total", table.rows.empty() ? Json(nullptr) : Json(table.rows.back().energy.total)}};
}

}  // namespace fracvar
