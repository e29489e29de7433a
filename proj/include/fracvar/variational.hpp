#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracvar/grid.hpp"
#include "fracvar/nonlinearity.hpp"
#include "fracvar/rearrange.hpp"
#include "fracvar/regime.hpp"
#include "fracvar/spectral.hpp"

namespace fracvar {

/// E(u) = kinetic - potential with kinetic = 1/2 |(-Delta)^{s/2} u|_2^2.
struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double mass = 0.0;
};

inline EnergyBreakdown energy(const Field& u, double s, const NonlinearitySpec& spec) {
  EnergyBreakdown e;
  e.kinetic = 0.5 * dirichlet_energy(u, s);
  e.potential = potential_energy(u, spec);
  e.total = e.kinetic - e.potential;
  e.mass = mass(u);
  return e;
}

/// L2 gradient of E: (-Delta)^s u - f(|x|, u).
inline Field energy_gradient(const Field& u, double s, const NonlinearitySpec& spec) {
  Field g = fractional_laplacian(u, s);
  if (spec.kind != NonlinearityKind::zero) g -= density_field(u, spec);
  return g;
}

/// u * c / sqrt(mass(u)).
inline Field project_to_sphere(const Field& u, double c) {
  if (!(c > 0.0)) throw DomainError("project_to_sphere: c must be > 0");
  const double m = mass(u);
  if (!(m > 0.0)) throw DomainError("project_to_sphere: zero field cannot be normalized");
  Field out = u;
  out *= c / std::sqrt(m);
  return out;
}

/// Nearest point of {u >= 0, mass(u) <= c^2}: clip negatives, then shrink radially if needed.
inline Field project_to_ball(const Field& u, double c) {
  Field out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::max(u[i], 0.0);
  const double m = mass(out);
  if (m > c * c) out *= c / std::sqrt(m);
  return out;
}

enum class InitKind { gaussian, constant, seeded_noise };
enum class ConstraintMode { sphere, ball };

/// Thrown when the requested problem is outside the regime where the
/// constrained infimum is finite (supercritical, or critical above c*).
class RegimeError : public std::runtime_error {
 public:
  RegimeError(const std::string& what, RegimeReport report) : std::runtime_error(what), report_(report) {}
  const RegimeReport& report() const { return report_; }

 private:
  RegimeReport report_;
};

struct SolveConfig {
  GridSpec grid{1, 256, 20.0};
  double s = 0.5;  // s == 1 is the classical oracle mode
  NonlinearitySpec spec;
  double c = 1.0;
  double step = 0.1;
  std::size_t max_iters = 20000;
  double tol_energy = 1e-12;
  double tol_residual = 1e-7;
  std::size_t symmetrize_every = 10;
  std::uint64_t seed = 0;
  InitKind init = InitKind::gaussian;
  ConstraintMode inequality_mode = ConstraintMode::sphere;
  int threads = 1;
  /// Critical-regime admissibility bound; computed from the sharp GN constant when absent.
  std::optional<double> critical_mass;

  void validate() const {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("solve: s must lie in (0, 1), or equal 1 in oracle mode");
    if (!(c > 0.0)) throw DomainError("solve: c must be > 0");
    if (!(step > 0.0)) throw DomainError("solve: step must be > 0");
    if (!(tol_energy > 0.0) || !(tol_residual > 0.0)) throw DomainError("solve: tolerances must be > 0");
    if (max_iters == 0) throw DomainError("solve: max_iters must be >= 1");
    if (threads < 1) throw DomainError("solve: threads must be >= 1");
    spec.validated();
  }
};

struct SolveResult {
  Field minimizer;
  EnergyBreakdown energy;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
  double lagrange_multiplier = 0.0;
  double symmetry_defect = 0.0;
  bool truncation_warning = false;
  std::vector<double> energy_history;  // total energy of every accepted iterate, start included
};

/// Called with every accepted iterate (iteration 0 is the initial field).
using IterateObserver = std::function<void(std::size_t iteration, const Field& u, const EnergyBreakdown& e)>;

/// ||u - u*||_2 / ||u||_2 after moving the maximum of |u| onto the origin.
inline double symmetry_defect(const Field& u) {
  const double norm = std::sqrt(mass(u));
  if (norm == 0.0) return 0.0;
  const Field a = abs_field(u);
  const Field centred = circular_shift(a, argmax(a), a.grid().origin());
  return std::sqrt(mass(centred - schwarz_symmetrize(centred))) / norm;
}

/// Unit-height Gaussian of width L/10, or a constant, optionally with seeded noise.
inline Field initial_field(const GridSpec& grid, InitKind init, std::uint64_t seed, double width_fraction = 0.1) {
  const double w = width_fraction * grid.box_length();
  Field u(grid);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = grid.radius(i);
    u[i] = init == InitKind::constant ? 1.0 : std::exp(-r * r / (w * w));
  }
  if (init == InitKind::seeded_noise) {
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += 1e-2 * rng.uniform(-1.0, 1.0);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Weinstein quotient

/// J(u) = D^{a} M^{a(2s-1)+1} / |u|_{alpha+2}^{alpha+2}, a = alpha/(4s), N = 1.
inline double weinstein_quotient(const Field& u, double s, double alpha) {
  if (u.grid().dim() != 1) throw DomainError("weinstein_quotient: only N = 1 is supported");
  if (!(alpha > 0.0)) throw DomainError("weinstein_quotient: alpha must be > 0");
  const double M = mass(u);
  if (!(M > 0.0)) throw DomainError("weinstein_quotient: zero field");
  const double a = alpha / (4.0 * s);
  const double D = dirichlet_energy(u, s);
  const double P = std::pow(lp_norm(u, alpha + 2.0), alpha + 2.0);
  return std::exp(a * std::log(D) + (a * (2.0 * s - 1.0) + 1.0) * std::log(M) - std::log(P));
}

struct WeinsteinConfig {
  GridSpec grid{1, 1024, 40.0};
  double s = 0.5;
  double alpha = 1.0;
  double step = 0.5;
  std::size_t max_iters = 50000;
  double tol = 1e-12;           // relative change of J over 10 iterations
  double tol_residual = 1e-5;   // L2 norm of the objective gradient at unit mass
  double width = 1.0;           // initial Gaussian width; fixes the dilation gauge
  std::size_t symmetrize_every = 10;
};

struct WeinsteinResult {
  double J_min = 0.0;
  Field Q;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

namespace detail {

// Objective log J + beta (log D - log D0)^2 and its gradient. The penalty pins the
// dilation gauge: on R^N it vanishes along the minimizing orbit, while on the
// torus it stops the flow from drifting towards flat fields (zero kinetic energy).
struct WeinsteinObjective {
  double s, alpha, log_D0, beta;

  double value(const Field& u, double* J_out = nullptr) const {
    const double J = weinstein_quotient(u, s, alpha);
    if (J_out) *J_out = J;
    const double dev = std::log(dirichlet_energy(u, s)) - log_D0;
    return std::log(J) + beta * dev * dev;
  }

  Field gradient(const Field& u) const {
    const double a = alpha / (4.0 * s);
    const double b = a * (2.0 * s - 1.0) + 1.0;
    const double D = dirichlet_energy(u, s);
    const double M = mass(u);
    const double P = std::pow(lp_norm(u, alpha + 2.0), alpha + 2.0);
    const double dev = std::log(D) - log_D0;
    Field g = fractional_laplacian(u, s);
    g *= 2.0 * (a + 2.0 * beta * dev) / D;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double v = u[i];
      g[i] += 2.0 * b * v / M - (alpha + 2.0) * std::pow(std::abs(v), alpha) * v / P;
    }
    return g.axpy(-inner(g, u) / inner(u, u), u);
  }
};

}  // namespace detail

/// Gradient flow on log J at unit mass (renormalized every step), with the
/// dilation gauge fixed by a penalty on log D. The reported profile is
/// Schwarz-symmetrized, which never raises D and keeps M and P.
inline WeinsteinResult minimize_weinstein(const WeinsteinConfig& cfg) {
  if (cfg.grid.dim() != 1) throw DomainError("minimize_weinstein: only N = 1 is supported");
  if (!(cfg.s > 0.0 && cfg.s <= 1.0)) throw DomainError("minimize_weinstein: s must lie in (0, 1]");
  if (!(cfg.alpha > 0.0)) throw DomainError("minimize_weinstein: alpha must be > 0");
  if (cfg.s < 1.0 && !(cfg.alpha < alpha_max_frank_lenzmann(cfg.s)))
    throw DomainError("minimize_weinstein: alpha outside the admissible window (0, alpha_max)");

  Field u = project_to_sphere(initial_field(cfg.grid, InitKind::gaussian, 0, cfg.width / cfg.grid.box_length()), 1.0);
  const detail::WeinsteinObjective obj{cfg.s, cfg.alpha, std::log(dirichlet_energy(u, cfg.s)), 1.0};
  double J = 0.0;
  double phi = obj.value(u, &J);
  std::vector<double> history{J};
  WeinsteinResult res{J, u, 0, false, 0.0};
  // Backtracking restarts from a small multiple of the last accepted step.
  double last_tau = cfg.step;

  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    const Field g = obj.gradient(u);
    res.residual = std::sqrt(mass(g));
    if (history.size() > 10) {
      const double old = history[history.size() - 11];
      if (std::abs(old - J) <= cfg.tol * J && res.residual < cfg.tol_residual) {
        res.converged = true;
        break;
      }
    }
    double tau = std::min(cfg.step, 4.0 * last_tau);
    std::optional<Field> trial;
    double Jt = J, phit = phi;
    while (tau >= 1e-14) {
      Field cand = project_to_sphere(u.axpy(-tau, g), 1.0);
      phit = obj.value(cand, &Jt);
      if (phit <= phi) {
        trial = std::move(cand);
        break;
      }
      tau *= 0.5;
    }
    if (!trial) break;
    last_tau = tau;
    if (cfg.symmetrize_every > 0 && it % cfg.symmetrize_every == 0) {
      Field cand = project_to_sphere(schwarz_symmetrize(*trial), 1.0);
      double Jc = 0.0;
      const double phic = obj.value(cand, &Jc);
      if (phic <= phit) {
        trial = std::move(cand);
        Jt = Jc;
        phit = phic;
      }
    }
    u = std::move(*trial);
    J = Jt;
    phi = phit;
    history.push_back(J);
    res.iterations = it;
  }

  Field sym = project_to_sphere(schwarz_symmetrize(u), 1.0);
  const double Js = weinstein_quotient(sym, cfg.s, cfg.alpha);
  if (Js <= J) {
    res.Q = std::move(sym);
    res.J_min = Js;
  } else {
    res.Q = u;
    res.J_min = J;
  }
  return res;
}

/// Sharp GN constant K' = J_min^{-1/(alpha+2)}.
inline double gn_constant(double J_min, double /*s*/, double alpha) {
  if (!(J_min > 0.0)) throw DomainError("gn_constant: J_min must be > 0");
  return std::pow(J_min, -1.0 / (alpha + 2.0));
}

/// Critical-regime admissibility threshold c* from a fresh Weinstein minimization on `grid`.
inline double critical_mass_for(const GridSpec& grid, double s, const NonlinearitySpec& spec) {
  WeinsteinConfig wc;
  wc.grid = GridSpec(1, grid.n(), grid.box_length());
  wc.s = s;
  wc.alpha = spec.ell;
  const auto w = minimize_weinstein(wc);
  const double Kp = gn_constant(w.J_min, s, spec.ell);
  return critical_mass_bound(spec.K, std::pow(Kp, spec.ell + 2.0), 1, s);
}

namespace detail {

inline void ensure_admissible(const SolveConfig& cfg) {
  if (cfg.spec.kind == NonlinearityKind::zero) return;
  const int N = cfg.grid.dim();
  const Regime r = regime_of(cfg.spec.ell, cfg.s, N);
  RegimeReport rep = cfg.s < 1.0 ? classify_regime(cfg.spec.ell, cfg.s, N) : RegimeReport{};
  rep.regime = r;
  rep.threshold_ell = 4.0 * cfg.s / N;
  if (r == Regime::supercritical)
    throw RegimeError("supercritical regime (l > 4s/N): the constrained infimum is -infinity; see the scaling family",
                      rep);
  if (r == Regime::critical) {
    if (N != 1 && !cfg.critical_mass)
      throw RegimeError("critical regime in N = 2 needs an explicit critical mass bound", rep);
    const double cstar = cfg.critical_mass ? *cfg.critical_mass : critical_mass_for(cfg.grid, cfg.s, cfg.spec);
    rep.critical_mass = cstar;
    if (!(cfg.c < cstar))
      throw RegimeError("critical regime (l = 4s/N) with c >= c* = " + format_number(cstar), rep);
  }
}

}  // namespace detail

/// Projected gradient descent for min E on the mass sphere (or the ball, in ball mode).
///
/// Each step moves along the tangential gradient, re-projects, and halves the step
/// until the energy does not increase; the step resets to `cfg.step` every iteration.
/// Every `symmetrize_every`-th iterate is replaced by its Schwarz symmetrization when
/// that does not raise the energy.
inline SolveResult solve_pc(const SolveConfig& cfg, const IterateObserver& observe = {}) {
  cfg.validate();
  detail::ensure_admissible(cfg);
  const bool ball = cfg.inequality_mode == ConstraintMode::ball;
  auto project = [&](const Field& v) { return ball ? project_to_ball(v, cfg.c) : project_to_sphere(v, cfg.c); };

  Field u = project_to_sphere(initial_field(cfg.grid, cfg.init, cfg.seed), cfg.c);
  if (ball) u = project(u);
  EnergyBreakdown e = energy(u, cfg.s, cfg.spec);
  SolveResult res{.minimizer = u, .energy = e, .energy_history = {}};
  res.energy_history.push_back(e.total);
  if (observe) observe(0, u, e);

  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    const Field g = energy_gradient(u, cfg.s, cfg.spec);
    Field dir = g;
    if (ball) {
      res.residual = std::sqrt(mass(u - project(u - g)));
    } else {
      dir = g.axpy(-inner(g, u) / inner(u, u), u);
      res.residual = std::sqrt(mass(dir));
    }
    const auto& hist = res.energy_history;
    if (hist.size() > 10) {
      const double change = std::abs(hist[hist.size() - 11] - e.total);
      if (change <= cfg.tol_energy * std::abs(e.total) && res.residual < cfg.tol_residual) {
        res.converged = true;
        break;
      }
    }

    double tau = cfg.step;
    std::optional<Field> trial;
    EnergyBreakdown et;
    while (tau >= 1e-12) {
      Field cand = project(u.axpy(-tau, dir));
      et = energy(cand, cfg.s, cfg.spec);
      if (et.total <= e.total) {
        trial = std::move(cand);
        break;
      }
      tau *= 0.5;
    }
    if (!trial) break;  // step floor reached

    if (cfg.symmetrize_every > 0 && it % cfg.symmetrize_every == 0) {
      Field cand = project(schwarz_symmetrize(*trial));
      const EnergyBreakdown ec = energy(cand, cfg.s, cfg.spec);
      if (ec.total <= et.total) {
        trial = std::move(cand);
        et = ec;
      }
    }
    u = std::move(*trial);
    e = et;
    res.energy_history.push_back(e.total);
    res.iterations = it;
    if (observe) observe(it, u, e);
  }

  if (!res.converged) {
    // Final residual at the returned iterate.
    const Field g = energy_gradient(u, cfg.s, cfg.spec);
    res.residual = ball ? std::sqrt(mass(u - project(u - g))) : std::sqrt(mass(g.axpy(-inner(g, u) / inner(u, u), u)));
  }
  res.lagrange_multiplier = inner(energy_gradient(u, cfg.s, cfg.spec), u) / (cfg.c * cfg.c);
  res.symmetry_defect = symmetry_defect(u);
  res.truncation_warning = edge_mass_fraction(u) >= kEdgeMassLimit;
  res.energy = e;
  res.minimizer = std::move(u);
  return res;
}

}  // namespace fracvar
