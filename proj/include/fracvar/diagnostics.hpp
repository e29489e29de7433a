#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "fracvar/regime.hpp"
#include "fracvar/variational.hpp"

namespace fracvar {

// ---------------------------------------------------------------------------
// Mass-preserving dilation family u_lambda(x) = lambda^{N/2} u(lambda x)

enum class ProfileKind { gaussian, sech };

inline ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "gaussian") return ProfileKind::gaussian;
  if (name == "sech") return ProfileKind::sech;
  throw DomainError("unknown profile: " + std::string(name));
}

inline std::string_view to_string(ProfileKind p) { return p == ProfileKind::gaussian ? "gaussian" : "sech"; }

/// Unit-width radial profile: e^{-r^2/2} or sech(r).
inline double profile_value(ProfileKind kind, double r) {
  return kind == ProfileKind::gaussian ? std::exp(-0.5 * r * r) : 1.0 / std::cosh(r);
}

struct ScalingRow {
  double lambda = 1.0;
  EnergyBreakdown energy;
  double points_per_width = 0.0;
  bool under_resolved = false;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  double kinetic_slope = NAN;    // least-squares slope of log kinetic vs log lambda
  double potential_slope = NAN;  // same for the potential (NaN when it vanishes)
  bool truncation_warning = false;
};

struct ScalingConfig {
  GridSpec grid{1, 4096, 40.0};
  ProfileKind profile = ProfileKind::gaussian;
  double s = 0.5;
  NonlinearitySpec spec;
  double c = 1.0;
  std::vector<double> lambdas;
};

/// `count` log-spaced points from lo to hi inclusive.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo) || count == 0) throw DomainError("log_spaced: need 0 < lo <= hi and count >= 1");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  out.front() = lo;
  if (count > 1) out.back() = hi;
  return out;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return NAN;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Evaluates E along u_lambda. Each member is sampled analytically at the
/// dilated argument and re-projected to S_c to absorb quadrature error.
inline ScalingTable scaling_family(const ScalingConfig& cfg) {
  if (!(cfg.c > 0.0)) throw DomainError("scaling_family: c must be > 0");
  if (cfg.lambdas.empty()) throw DomainError("scaling_family: empty lambda grid");
  const int N = cfg.grid.dim();
  ScalingTable table;
  std::vector<double> ll, lk, lp;
  for (double lambda : cfg.lambdas) {
    if (!(lambda >= 1.0)) throw DomainError("scaling_family: lambda must be >= 1");
    Field u(cfg.grid);
    const double amp = std::pow(lambda, 0.5 * N);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = amp * profile_value(cfg.profile, lambda * cfg.grid.radius(i));
    u = project_to_sphere(u, cfg.c);
    ScalingRow row;
    row.lambda = lambda;
    row.energy = energy(u, cfg.s, cfg.spec);
    row.points_per_width = 2.0 / lambda / cfg.grid.spacing();
    row.under_resolved = row.points_per_width < 8.0;
    table.truncation_warning = table.truncation_warning || row.under_resolved;
    ll.push_back(std::log(lambda));
    lk.push_back(std::log(row.energy.kinetic));
    if (row.energy.potential > 0.0) lp.push_back(std::log(row.energy.potential));
    table.rows.push_back(row);
  }
  table.kinetic_slope = fit_slope(ll, lk);
  if (lp.size() == ll.size()) table.potential_slope = fit_slope(ll, lp);
  return table;
}

/// Relative L-inf distance of an N = 1 field from A sech(mu (x - x0)), the s = 1 cubic
/// ground-state shape. x0 is the interpolated peak, mu^2 = 3 D/M and A^2 = mu M/2 match the
/// field's own kinetic energy and mass.
inline double sech_profile_error(const Field& u) {
  const GridSpec& g = u.grid();
  if (g.dim() != 1) throw DomainError("sech_profile_error: only N = 1 is supported");
  const double M = mass(u);
  if (!(M > 0.0)) throw DomainError("sech_profile_error: zero field");
  const double mu = std::sqrt(3.0 * dirichlet_energy(u, 1.0) / M);
  const double A = std::sqrt(0.5 * mu * M);
  const Field a = abs_field(u);
  const std::size_t peak = argmax(a), n = g.n();
  const double sign = u[peak] < 0.0 ? -1.0 : 1.0;
  // sub-grid peak from the parabola through the three sites around the maximum
  const double fl = a[(peak + n - 1) % n], fc = a[peak], fr = a[(peak + 1) % n];
  const double curv = fl - 2.0 * fc + fr;
  const double x0 = g.coord(peak) + (curv < 0.0 ? 0.5 * (fl - fr) / curv * g.spacing() : 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = g.coord(i) - x0;
    worst = std::max(worst, std::abs(sign * u[i] - A / std::cosh(mu * x)));
  }
  return worst / A;
}

// ---------------------------------------------------------------------------
// Relaxed-problem scan over mass levels

struct ScanRow {
  double c = 0.0;
  double I = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  bool pass = false;             // strict decrease with margin, all members converged
  bool strictly_decreasing = false;
  bool weakly_monotone = false;  // I_{i+1} <= I_i + tolerance
  bool tainted = false;          // some member failed to converge
  std::string warning;
};

/// Runs the relaxed (ball-mode) solve at each mass level and checks
/// I_{c_{i+1}} < I_{c_i} - max(tol_energy |I_{c_i}|, 1e-10) on every gap.
/// Rows run concurrently when `base.threads > 1`; results keep input order.
/// `observe` receives (row, iteration, iterate, energy) and is then called from worker threads.
using ScanObserver = std::function<void(std::size_t, std::size_t, const Field&, const EnergyBreakdown&)>;

inline ScanResult scan_mass(const SolveConfig& base, const std::vector<double>& c_grid,
                            const ScanObserver& observe = {}) {
  if (c_grid.empty()) throw DomainError("scan_mass: empty c grid");
  for (std::size_t i = 1; i < c_grid.size(); ++i)
    if (!(c_grid[i] > c_grid[i - 1])) throw DomainError("scan_mass: c grid must be increasing");

  ScanResult out;
  out.rows.resize(c_grid.size());
  auto run_row = [&](std::size_t i) {
    SolveConfig cfg = base;
    cfg.c = c_grid[i];
    cfg.inequality_mode = ConstraintMode::ball;
    IterateObserver row_observer;
    if (observe)
      row_observer = [&, i](std::size_t it, const Field& u, const EnergyBreakdown& e) { observe(i, it, u, e); };
    const SolveResult r = solve_pc(cfg, row_observer);
    out.rows[i] = {c_grid[i], r.energy.total, r.converged, r.iterations};
  };
  const auto workers = static_cast<std::size_t>(std::max(1, base.threads));
  if (workers == 1) {
    for (std::size_t i = 0; i < c_grid.size(); ++i) run_row(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < c_grid.size(); i += workers) run_row(i);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  out.strictly_decreasing = true;
  out.weakly_monotone = true;
  for (std::size_t i = 0; i + 1 < out.rows.size(); ++i) {
    const double cur = out.rows[i].I, next = out.rows[i + 1].I;
    const double margin = std::max(base.tol_energy * std::abs(cur), 1e-10);
    if (!(next < cur - margin)) out.strictly_decreasing = false;
    if (!(next <= cur + margin)) out.weakly_monotone = false;
  }
  for (const auto& r : out.rows) out.tainted = out.tainted || !r.converged;
  if (out.rows.size() == 1) out.warning = "single mass level: strict-decrease verdict is vacuous";
  out.pass = out.strictly_decreasing && !out.tainted;
  return out;
}

}  // namespace fracvar
