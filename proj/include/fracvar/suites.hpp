#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fracvar/io.hpp"
#include "fracvar/nonlinearity.hpp"
#include "fracvar/rearrange.hpp"
#include "fracvar/variational.hpp"

namespace fracvar {

/// Seeded property suites. Trial i uses seed S + i, and every random choice of a
/// trial (including its fractional order) derives from that seed alone, so a
/// failure reruns in isolation with `--seed <reported seed> --trials 1`.
struct SuiteFailure {
  std::uint64_t seed = 0;
  Json witness;
};

struct SuiteVerdict {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteFailure> failures;

  bool pass() const { return failures.empty(); }
};

inline Json to_json(const SuiteVerdict& v) {
  Json failures = Json::array();
  for (const auto& f : v.failures) failures.push_back(Json{{"seed", f.seed}, {"witness", f.witness}});
  return Json{{"suite", v.suite}, {"trials", v.trials}, {"seed", v.seed}, {"failures", failures}};
}

inline constexpr std::array<double, 3> kSuiteOrders{0.3, 0.5, 0.7};

/// Nonnegative N = 1 field vanishing on |x| >= 0.38 L: either i.i.d. uniform
/// values on a random window, or a sum of Gaussian bumps.
inline Field random_nonnegative_field(const GridSpec& grid, SplitMix64& rng) {
  const double L = grid.box_length();
  Field u(grid);
  if (rng.uniform() < 0.5) {
    const double a = rng.uniform(-0.35, 0.0) * L, b = rng.uniform(0.0, 0.35) * L;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double x = grid.coord(i);
      u[i] = (x >= a && x <= b) ? rng.uniform() : 0.0;
    }
  } else {
    const int bumps = 1 + static_cast<int>(rng.next() % 4);
    for (int k = 0; k < bumps; ++k) {
      const double centre = rng.uniform(-0.22, 0.22) * L;
      const double width = rng.uniform(0.015, 0.05) * L;
      const double amp = rng.uniform(0.2, 2.0);
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double z = (grid.coord(i) - centre) / width;
        u[i] += amp * std::exp(-0.5 * z * z);
      }
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::abs(grid.coord(i)) >= 0.38 * L) u[i] = 0.0;
  return u;
}

/// Smooth signed field: random Fourier modes under a Gaussian envelope.
inline Field random_smooth_field(const GridSpec& grid, SplitMix64& rng) {
  const double L = grid.box_length();
  const double width = rng.uniform(0.05, 0.1) * L;
  std::array<double, 6> amp{}, phase{};
  for (std::size_t m = 0; m < amp.size(); ++m) {
    amp[m] = rng.uniform(-1.0, 1.0) / static_cast<double>(m + 1);
    phase[m] = rng.uniform(0.0, 2.0 * M_PI);
  }
  return Field::sample(grid, [&](double x) {
    double v = 0.5;
    for (std::size_t m = 0; m < amp.size(); ++m) v += amp[m] * std::cos(2.0 * M_PI * m * x / width + phase[m]);
    return v * std::exp(-x * x / (width * width));
  });
}

namespace detail {

template <class Trial>
SuiteVerdict run_trials(const std::string& name, std::size_t trials, std::uint64_t seed, Trial&& trial) {
  if (trials == 0) throw DomainError("verify: trials must be >= 1");
  SuiteVerdict v{name, trials, seed, {}};
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t ts = seed + i;
    if (auto witness = trial(ts)) v.failures.push_back({ts, std::move(*witness)});
  }
  return v;
}

}  // namespace detail

/// Exact lattice Gagliardo inequality and spectral Polya-Szego on random nonnegative fields (N = 1, n = 256).
inline SuiteVerdict verify_polya_szego(std::size_t trials, std::uint64_t seed) {
  const GridSpec grid(1, 256, 20.0);
  return detail::run_trials("polya-szego", trials, seed, [&](std::uint64_t ts) -> std::optional<Json> {
    SplitMix64 rng(ts);
    const double s = kSuiteOrders[ts % kSuiteOrders.size()];
    const Field u = random_nonnegative_field(grid, rng);
    const auto r = check_polya_szego(u, s);
    if (r.pass) return std::nullopt;
    return Json{{"s", s},
                {"gagliardo_u", r.gagliardo_u},
                {"gagliardo_star", r.gagliardo_star},
                {"spectral_u", r.spectral_u},
                {"spectral_star", r.spectral_star}};
  });
}

/// int F(|x|,u*) >= int F(|x|,|u|) for weighted_power (omega = 1), plus mass and L^p invariance.
inline SuiteVerdict verify_riesz(std::size_t trials, std::uint64_t seed) {
  const GridSpec grid(1, 256, 20.0);
  const auto spec = NonlinearitySpec::weighted_power(1.0, 1.0, 1.0);
  return detail::run_trials("riesz", trials, seed, [&](std::uint64_t ts) -> std::optional<Json> {
    SplitMix64 rng(ts);
    Field u = random_nonnegative_field(grid, rng);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (rng.uniform() < 0.5) u[i] = -u[i];
    const auto r = check_riesz_F(u, spec);
    Json w;
    if (!r.pass) w["riesz"] = Json{{"potential_abs", r.potential_abs}, {"potential_star", r.potential_star}};
    const auto m = check_mass_invariance(u);
    if (!m.pass) w["mass"] = Json{{"mass_u", m.mass_u}, {"mass_star", m.mass_star}};
    const Field star = schwarz_symmetrize(u);
    for (double p : {1.0, 2.0, 3.0, 4.0, 6.0}) {
      const double a = lp_norm(u, p), b = lp_norm(star, p);
      if (std::abs(a - b) > 1e-12 * a) w["lp_" + format_number(p)] = Json{{"u", a}, {"star", b}};
    }
    if (w.is_null()) return std::nullopt;
    return w;
  });
}

/// Sharp GN inequality |u|_{a+2} <= K' M^{(1-theta)/2} D^{theta/2} on random fields,
/// with K' from a Weinstein minimization at (s, alpha) = (0.5, 1).
inline SuiteVerdict verify_gn(std::size_t trials, std::uint64_t seed, double s = 0.5, double alpha = 1.0) {
  WeinsteinConfig wc;
  wc.grid = GridSpec(1, 1024, 40.0);
  wc.s = s;
  wc.alpha = alpha;
  const auto w = minimize_weinstein(wc);
  const double Kp = gn_constant(w.J_min, s, alpha);
  const double theta = gn_theta(1, s, alpha);
  return detail::run_trials("gn", trials, seed, [&](std::uint64_t ts) -> std::optional<Json> {
    SplitMix64 rng(ts);
    const Field u = rng.uniform() < 0.5 ? random_smooth_field(wc.grid, rng) : random_nonnegative_field(wc.grid, rng);
    const double lhs = lp_norm(u, alpha + 2.0);
    const double rhs = Kp * std::pow(mass(u), 0.5 * (1.0 - theta)) * std::pow(dirichlet_energy(u, s), 0.5 * theta);
    if (lhs <= rhs * (1.0 + 1e-9)) return std::nullopt;
    return Json{{"lhs", lhs}, {"rhs", rhs}, {"Kprime", Kp}};
  });
}

/// Supermodularity of the weighted integrand on random ordered quadruples. The
/// adversarial variant swaps in the increasing weight e^{+r}, which must fail.
inline SuiteVerdict verify_supermodular(std::size_t trials, std::uint64_t seed, bool adversarial = false) {
  const auto spec = NonlinearitySpec::weighted_power(1.0, 1.0, 1.0);
  auto F = [&](double r, double t) {
    return adversarial ? std::exp(r) * std::pow(std::abs(t), 3.0) / 3.0 : F_eval(spec, r, t);
  };
  return detail::run_trials("supermodular", trials, seed, [&](std::uint64_t ts) -> std::optional<Json> {
    SplitMix64 rng(ts);
    std::vector<Quadruple> quads;
    for (int k = 0; k < 64; ++k) {
      const double r = rng.uniform(0.0, 5.0), R = r + rng.uniform(0.01, 5.0);
      const double a = rng.uniform(0.0, 3.0), A = a + rng.uniform(0.01, 3.0);
      quads.push_back({r, R, a, A});
    }
    const auto res = check_supermodular(F, quads);
    if (res.pass) return std::nullopt;
    const auto& q = *res.witness;
    return Json{{"quadruple", Json::array({q.r, q.R, q.a, q.A})}, {"lhs", res.lhs}, {"rhs", res.rhs}};
  });
}

/// Central difference (E(u+eps v) - E(u-eps v))/(2 eps) against <grad E(u), v>, eps = 1e-5.
inline SuiteVerdict verify_gradient(std::size_t trials, std::uint64_t seed) {
  const GridSpec grid(1, 256, 20.0);
  return detail::run_trials("gradient", trials, seed, [&](std::uint64_t ts) -> std::optional<Json> {
    SplitMix64 rng(ts);
    const double s = kSuiteOrders[ts % kSuiteOrders.size()];
    const auto spec = ts % 2 == 0 ? NonlinearitySpec::pure_power(1.0) : NonlinearitySpec::weighted_power(1.0, 1.0, 1.0);
    const Field u = random_smooth_field(grid, rng);
    const Field v = random_smooth_field(grid, rng);
    constexpr double eps = 1e-5;
    const double analytic = inner(energy_gradient(u, s, spec), v);
    const double numeric =
        (energy(u.axpy(eps, v), s, spec).total - energy(u.axpy(-eps, v), s, spec).total) / (2.0 * eps);
    const double rel = std::abs(analytic - numeric) / std::max(std::abs(analytic), std::abs(numeric));
    if (rel <= 1e-6) return std::nullopt;
    return Json{{"s", s}, {"analytic", analytic}, {"numeric", numeric}, {"relative_error", rel}};
  });
}

/// u* <= c/(V_N^{1/2} |x|^{N/2}) for symmetrized random fields scaled to mass c^2.
inline SuiteVerdict verify_decay(std::size_t trials, std::uint64_t seed) {
  const GridSpec grid(1, 256, 20.0);
  return detail::run_trials("decay", trials, seed, [&](std::uint64_t ts) -> std::optional<Json> {
    SplitMix64 rng(ts);
    const double c = rng.uniform(0.1, 5.0);
    const Field u = project_to_sphere(schwarz_symmetrize(random_nonnegative_field(grid, rng)), c);
    const auto r = check_radial_decay(u, c);
    if (r.pass) return std::nullopt;
    return Json{{"c", c}, {"worst_x", grid.coord(r.worst_site)}, {"worst_ratio", r.worst_ratio}};
  });
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"polya-szego", "riesz", "gn", "supermodular", "gradient", "decay"};
  return names;
}

inline SuiteVerdict run_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                              bool adversarial = false) {
  if (name == "polya-szego") return verify_polya_szego(trials, seed);
  if (name == "riesz") return verify_riesz(trials, seed);
  if (name == "gn") return verify_gn(trials, seed);
  if (name == "supermodular") return verify_supermodular(trials, seed, adversarial);
  if (name == "gradient") return verify_gradient(trials, seed);
  if (name == "decay") return verify_decay(trials, seed);
  throw DomainError("unknown suite: " + name);
}

}  // namespace fracvar
