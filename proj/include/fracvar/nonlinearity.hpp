#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracvar/grid.hpp"

namespace fracvar {

enum class NonlinearityKind { pure_power, weighted_power, zero };

inline std::string_view to_string(NonlinearityKind k) {
  switch (k) {
    case NonlinearityKind::pure_power: return "pure_power";
    case NonlinearityKind::weighted_power: return "weighted_power";
    case NonlinearityKind::zero: return "zero";
  }
  return "?";
}

inline NonlinearityKind parse_nonlinearity_kind(std::string_view name) {
  if (name == "pure_power") return NonlinearityKind::pure_power;
  if (name == "weighted_power") return NonlinearityKind::weighted_power;
  if (name == "zero") return NonlinearityKind::zero;
  throw DomainError("unknown nonlinearity kind: " + std::string(name));
}

/// Integrand F(r,t) = a w(r) |t|^{l+2}/(l+2), w(r) = e^{-omega r} (weighted) or 1 (pure).
/// `K` is the growth constant claimed for 0 <= F <= K (t^2 + t^{l+2}).
struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::pure_power;
  double ell = 1.0;
  double amplitude = 1.0;
  double weight_rate = 0.0;
  double K = 1.0;

  static NonlinearitySpec pure_power(double ell, double amplitude = 1.0) {
    return NonlinearitySpec{NonlinearityKind::pure_power, ell, amplitude, 0.0, amplitude / (ell + 2.0)}.validated();
  }
  static NonlinearitySpec weighted_power(double ell, double amplitude, double weight_rate) {
    return NonlinearitySpec{NonlinearityKind::weighted_power, ell, amplitude, weight_rate, amplitude / (ell + 2.0)}
        .validated();
  }
  static NonlinearitySpec zero(double ell = 1.0) {
    return NonlinearitySpec{NonlinearityKind::zero, ell, 0.0, 0.0, 0.0}.validated();
  }

  NonlinearitySpec validated() const {
    if (!(ell >= 0.0) || !std::isfinite(ell)) throw DomainError("nonlinearity: ell must be >= 0");
    if (kind != NonlinearityKind::zero && !(amplitude > 0.0)) throw DomainError("nonlinearity: amplitude must be > 0");
    if (!(weight_rate >= 0.0) || !std::isfinite(weight_rate))
      throw DomainError("nonlinearity: weight_rate must be >= 0");
    if (!(K >= 0.0) || !std::isfinite(K)) throw DomainError("nonlinearity: K must be >= 0");
    return *this;
  }

  double weight(double r) const {
    return kind == NonlinearityKind::weighted_power ? std::exp(-weight_rate * r) : 1.0;
  }

  friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;
};

namespace detail {
inline void check_radius(double r) {
  if (!(r >= 0.0)) throw DomainError("nonlinearity: radius must be >= 0");
}
}  // namespace detail

/// F(r,t).
inline double F_eval(const NonlinearitySpec& spec, double r, double t) {
  detail::check_radius(r);
  if (spec.kind == NonlinearityKind::zero) return 0.0;
  const double p = spec.ell + 2.0;
  return spec.amplitude * spec.weight(r) * std::pow(std::abs(t), p) / p;
}

/// f(r,t) = dF/dt = a w(r) |t|^l t.
inline double f_eval(const NonlinearitySpec& spec, double r, double t) {
  detail::check_radius(r);
  if (spec.kind == NonlinearityKind::zero || t == 0.0) return 0.0;
  return spec.amplitude * spec.weight(r) * std::pow(std::abs(t), spec.ell) * t;
}

/// h^N sum_j F(|x_j|, u_j).
inline double potential_energy(const Field& u, const NonlinearitySpec& spec) {
  u.require_finite("potential_energy");
  if (spec.kind == NonlinearityKind::zero) return 0.0;
  const auto& g = u.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += F_eval(spec, g.radius(i), u[i]);
  return acc * g.cell_volume();
}

/// Pointwise f(|x_j|, u_j).
inline Field density_field(const Field& u, const NonlinearitySpec& spec) {
  const auto& g = u.grid();
  Field out(g);
  if (spec.kind == NonlinearityKind::zero) return out;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f_eval(spec, g.radius(i), u[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Sampling-based hypothesis checks. Each works on an arbitrary integrand
// callable F(r, t) so that tests can feed deliberately broken integrands; the
// NonlinearitySpec overloads forward to them.

struct SampleWitness {
  double r = 0.0;
  double t = 0.0;
};

struct GrowthCheck {
  bool pass = true;
  std::optional<SampleWitness> witness;
};

inline constexpr std::array<double, 3> kGrowthRadii{0.0, 1.0, 10.0};

/// 0 <= F(r,t) <= K (t^2 + t^{l+2}) on t_samples x {0, 1, 10}.
template <std::invocable<double, double> Integrand>
GrowthCheck check_growth(Integrand&& F, double ell, double K, const std::vector<double>& t_samples) {
  if (t_samples.empty()) throw DomainError("check_growth: empty sample set");
  for (double t : t_samples) {
    if (!(t >= 0.0)) throw DomainError("check_growth: samples must be >= 0");
    for (double r : kGrowthRadii) {
      const double v = F(r, t);
      if (!(v >= 0.0) || v > K * (t * t + std::pow(t, ell + 2.0))) return {false, SampleWitness{r, t}};
    }
  }
  return {};
}

inline GrowthCheck check_growth(const NonlinearitySpec& spec, const std::vector<double>& t_samples) {
  return check_growth([&](double r, double t) { return F_eval(spec, r, t); }, spec.ell, spec.K, t_samples);
}

/// Witness pair for F(r,t) <= eps t^2 whenever r >= R0 and 0 <= t <= t0.
struct VanishingWitness {
  double R0 = 0.0;
  double t0 = 0.0;
};

namespace detail {
inline bool vanishing_holds(auto&& F, double eps, double R0, double t0) {
  for (double dr : {0.0, 0.5, 1.0, 10.0, 100.0}) {
    for (int k = 0; k <= 40; ++k) {
      const double t = t0 * std::ldexp(1.0, -k / 2) * (k % 2 == 0 ? 1.0 : 0.75);
      if (F(R0 + dr, t) > eps * t * t * (1.0 + 1e-12)) return false;
    }
  }
  return true;
}
}  // namespace detail

/// Searches R0 in {0, 1, 2, 4, ..., 1024} and t0 in {1, 1/2, ..., 2^-30} for a pair
/// satisfying the sampled bound; nullopt when none does (a quadratic component).
template <std::invocable<double, double> Integrand>
std::optional<VanishingWitness> check_vanishing(Integrand&& F, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("check_vanishing: epsilon must be > 0");
  for (int j = 0; j <= 30; ++j) {
    const double t0 = std::ldexp(1.0, -j);
    for (int i = -1; i <= 10; ++i) {
      const double R0 = i < 0 ? 0.0 : std::ldexp(1.0, i);
      if (detail::vanishing_holds(F, epsilon, R0, t0)) return VanishingWitness{R0, t0};
    }
  }
  return std::nullopt;
}

/// Built-ins get the closed form t0 = (eps (l+2)/a)^{1/l}, R0 = 0 (w <= 1 everywhere).
inline std::optional<VanishingWitness> check_vanishing(const NonlinearitySpec& spec, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("check_vanishing: epsilon must be > 0");
  auto F = [&](double r, double t) { return F_eval(spec, r, t); };
  if (spec.kind == NonlinearityKind::zero) return VanishingWitness{0.0, 1.0};
  if (spec.ell > 0.0) {
    const VanishingWitness w{0.0, std::pow(epsilon * (spec.ell + 2.0) / spec.amplitude, 1.0 / spec.ell)};
    if (detail::vanishing_holds(F, epsilon, w.R0, w.t0)) return w;
  }
  return check_vanishing(F, epsilon);
}

/// Ordered quadruple r < R, a < A.
struct Quadruple {
  double r, R, a, A;
};

struct SupermodularCheck {
  bool pass = true;
  std::optional<Quadruple> witness;
  double lhs = 0.0;  // at the witness, F(r,A) + F(R,a)
  double rhs = 0.0;  // at the witness, F(r,a) + F(R,A)
};

/// F(r,A) + F(R,a) >= F(r,a) + F(R,A): supermodularity of (v,y) -> F(1/v, y).
/// Strict mode demands strict inequality on every quadruple.
template <std::invocable<double, double> Integrand>
SupermodularCheck check_supermodular(Integrand&& F, const std::vector<Quadruple>& quads, bool strict = false) {
  for (const auto& q : quads) {
    if (!(q.r >= 0.0 && q.r < q.R && q.a >= 0.0 && q.a < q.A))
      throw DomainError("check_supermodular: quadruple must satisfy 0 <= r < R and 0 <= a < A");
  }
  for (const auto& q : quads) {
    const double lhs = F(q.r, q.A) + F(q.R, q.a);
    const double rhs = F(q.r, q.a) + F(q.R, q.A);
    const bool ok = strict ? lhs > rhs : lhs >= rhs;
    if (!ok) return {false, q, lhs, rhs};
  }
  return {};
}

inline SupermodularCheck check_supermodular(const NonlinearitySpec& spec, const std::vector<Quadruple>& quads,
                                            bool strict = false) {
  return check_supermodular([&](double r, double t) { return F_eval(spec, r, t); }, quads, strict);
}

/// All ordered quadruples over radii {0, 0.5, 1, 2, 5} and amplitudes {0, 0.5, 1, 2, 4}.
inline std::vector<Quadruple> canonical_quadruples() {
  constexpr std::array<double, 5> radii{0.0, 0.5, 1.0, 2.0, 5.0};
  constexpr std::array<double, 5> amps{0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<Quadruple> out;
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = i + 1; j < radii.size(); ++j)
      for (std::size_t k = 0; k < amps.size(); ++k)
        for (std::size_t l = k + 1; l < amps.size(); ++l) out.push_back({radii[i], radii[j], amps[k], amps[l]});
  return out;
}

}  // namespace fracvar
