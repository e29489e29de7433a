#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracvar/grid.hpp"

namespace fracvar {

enum class Regime { subcritical, critical, supercritical };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "?";
}

/// Exact nonnegative rational; parsed from "p/q" or a plain decimal ("0.25" -> 1/4).
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational parse(std::string_view text) {
    auto fail = [&] { return DomainError("not a rational number: " + std::string(text)); };
    auto read_int = [&](std::string_view part) {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) throw fail();
      return v;
    };
    Rational r;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      r = {read_int(text.substr(0, slash)), read_int(text.substr(slash + 1))};
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
      if (frac.size() > 15) throw fail();
      long long den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      const long long w = whole.empty() ? 0 : read_int(whole);
      const long long f = frac.empty() ? 0 : read_int(frac);
      r = {w * den + f, den};
    } else {
      r = {read_int(text), 1};
    }
    if (r.den <= 0 || r.num < 0) throw fail();
    const long long g = std::gcd(r.num, r.den);
    if (g > 1) r = {r.num / g, r.den / g};
    return r;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Outcome of comparing the growth exponent l against the mass-critical value 4s/N.
struct RegimeReport {
  Regime regime = Regime::subcritical;
  double threshold_ell = 0.0;             // 4s/N
  double alpha_max_fl = NAN;              // Frank-Lenzmann value, N = 1 only
  double alpha_max_corrected = NAN;  // corrected bound 4s, N = 1 only
  std::optional<double> critical_mass;    // c*, once K and the GN constant are known
  std::optional<double> critical_mass_literal;  // (1/(2KC))^{4/N}, reported alongside c*
};

/// Frank-Lenzmann exponent window: 4s/(1-2s) for s < 1/2, infinite otherwise.
inline double alpha_max_frank_lenzmann(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("alpha_max: s must lie in (0, 1)");
  return s < 0.5 ? 4.0 * s / (1.0 - 2.0 * s) : std::numeric_limits<double>::infinity();
}

/// The corrected existence bound alpha < 4s.
inline double alpha_max_corrected(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("alpha_max: s must lie in (0, 1)");
  return 4.0 * s;
}

namespace detail {

inline void check_regime_domain(double ell, double s, int N, bool allow_unit_order) {
  if (!(ell > 0.0)) throw DomainError("regime: ell must be > 0");
  if (!(s > 0.0 && (s < 1.0 || (allow_unit_order && s == 1.0)))) throw DomainError("regime: s must lie in (0, 1)");
  if (N != 1 && N != 2) throw DomainError("regime: N must be 1 or 2");
}

inline RegimeReport make_report(Regime regime, double s, int N) {
  RegimeReport rep;
  rep.regime = regime;
  rep.threshold_ell = 4.0 * s / N;
  if (N == 1 && s < 1.0) {
    rep.alpha_max_fl = alpha_max_frank_lenzmann(s);
    rep.alpha_max_corrected = alpha_max_corrected(s);
  }
  return rep;
}

inline Regime classify_floating(double ell, double s, int N) {
  const double thr = 4.0 * s / N;
  if (std::abs(ell - thr) <= 1e-12 * std::max(1.0, thr)) return Regime::critical;
  return ell < thr ? Regime::subcritical : Regime::supercritical;
}

}  // namespace detail

/// Floating comparison of l with 4s/N, 1e-12 relative margin for "critical".
inline RegimeReport classify_regime(double ell, double s, int N) {
  detail::check_regime_domain(ell, s, N, false);
  return detail::make_report(detail::classify_floating(ell, s, N), s, N);
}

/// Exact comparison: l_num s_den N  vs  4 s_num l_den.
inline RegimeReport classify_regime(Rational ell, Rational s, int N) {
  detail::check_regime_domain(ell.value(), s.value(), N, false);
  const long long lhs = ell.num * s.den * N;
  const long long rhs = 4 * s.num * ell.den;
  const Regime r = lhs < rhs ? Regime::subcritical : (lhs == rhs ? Regime::critical : Regime::supercritical);
  return detail::make_report(r, s.value(), N);
}

/// Regime classification that also admits the classical order s = 1.
inline Regime regime_of(double ell, double s, int N) {
  detail::check_regime_domain(ell, s, N, true);
  return detail::classify_floating(ell, s, N);
}

/// GN interpolation exponent theta = N l / (2s (l+2)).
inline double gn_theta(int N, double s, double ell) { return N * ell / (2.0 * s * (ell + 2.0)); }

/// Constants of the Young-inequality lower bound for E on the mass sphere.
///
/// `Kprime` is the sharp GN constant for |u|_{l+2} <= K' |u|_2^{1-theta} |grad_s u|_2^theta;
/// the chain constant multiplying int |u|^{l+2} is therefore K'^{l+2}.
struct CoercivityParams {
  double K = 0.0;
  double Kprime = 0.0;
  double epsilon = 1.0;
  double ell = 0.0;
  double p = 0.0;      // 4s/(N l)
  double q = 0.0;      // p/(p-1); infinite at the critical exponent
  double theta = 0.0;  // N l / (2s (l+2))

  static CoercivityParams make(double K, double Kprime, double ell, double s, int N, double epsilon = 1.0) {
    if (!(K >= 0.0) || !(Kprime > 0.0) || !(ell > 0.0) || !(epsilon > 0.0) || !(s > 0.0 && s <= 1.0) ||
        (N != 1 && N != 2))
      throw DomainError("coercivity: invalid parameters");
    CoercivityParams cp;
    cp.K = K;
    cp.Kprime = Kprime;
    cp.epsilon = epsilon;
    cp.ell = ell;
    cp.p = 4.0 * s / (N * ell);
    if (cp.p < 1.0 - 1e-12) throw DomainError("coercivity: supercritical exponent has no lower bound");
    if (std::abs(cp.p - 1.0) <= 1e-12) cp.p = 1.0;
    cp.q = cp.p == 1.0 ? std::numeric_limits<double>::infinity() : cp.p / (cp.p - 1.0);
    cp.theta = gn_theta(N, s, ell);
    return cp;
  }

  bool critical() const { return p == 1.0; }
  double chain_constant() const { return std::pow(Kprime, ell + 2.0); }
  /// Coefficient of |grad_s u|^2 in the bound.
  double kinetic_coefficient(double c) const {
    if (critical()) return 0.5 - K * chain_constant() * std::pow(c, ell);
    return 0.5 - K * chain_constant() / p * std::pow(epsilon, p);
  }
  /// Largest epsilon keeping the kinetic coefficient nonnegative.
  double epsilon_max() const {
    if (critical()) return std::numeric_limits<double>::infinity();
    const double kc = K * chain_constant();
    return kc > 0.0 ? std::pow(p / (2.0 * kc), 1.0 / p) : std::numeric_limits<double>::infinity();
  }
};

/// Lower bound for E(u) over u in S_c given dirichlet = |grad_s u|_2^2:
///   (1/2 - (K C/p) eps^p) D - K c^2 - (K C/(q eps^q)) c^{q (1-theta)(l+2)},  C = K'^{l+2}.
/// At the critical exponent (p = 1) the Young step is vacuous and the bound is
///   (1/2 - K C c^l) D - K c^2.
inline double coercivity_lower_bound(const CoercivityParams& cp, double c, double dirichlet) {
  if (!(c >= 0.0) || !(dirichlet >= 0.0)) throw DomainError("coercivity: c and dirichlet must be >= 0");
  const double kc = cp.K * cp.chain_constant();
  const double base = cp.kinetic_coefficient(c) * dirichlet - cp.K * c * c;
  if (cp.critical()) return base;
  if (c == 0.0) return base;
  return base - kc / (cp.q * std::pow(cp.epsilon, cp.q)) * std::pow(c, cp.q * (1.0 - cp.theta) * (cp.ell + 2.0));
}

/// Golden-section maximizer of the bound over epsilon in (0, epsilon_max] at fixed (c, dirichlet).
inline double optimal_epsilon(CoercivityParams cp, double c, double dirichlet) {
  if (cp.critical()) return cp.epsilon;
  const double hi = cp.epsilon_max();
  if (!std::isfinite(hi)) return cp.epsilon;
  // Work in log(epsilon): the bound is unimodal there.
  double a = std::log(hi) - 60.0, b = std::log(hi);
  auto value = [&](double le) {
    cp.epsilon = std::exp(le);
    return coercivity_lower_bound(cp, c, dirichlet);
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = value(x1);
    }
  }
  const double best = 0.5 * (a + b);
  return value(best) >= value(std::log(hi)) ? std::exp(best) : hi;
}

/// c* with (1/2 - K C c^{4s/N}) = 0, i.e. c* = (1/(2 K C))^{N/(4s)}, C the chain constant.
inline double critical_mass_bound(double K, double chain_constant, int N, double s) {
  if (!(K > 0.0) || !(chain_constant > 0.0)) throw DomainError("critical_mass_bound: K and constant must be > 0");
  if (N != 1 && N != 2) throw DomainError("critical_mass_bound: N must be 1 or 2");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("critical_mass_bound: s must lie in (0, 1]");
  return std::pow(1.0 / (2.0 * K * chain_constant), N / (4.0 * s));
}

/// The display value (1/(2KC))^{4/N}, kept for side-by-side reporting only.
inline double critical_mass_literal(double K, double chain_constant, int N) {
  return std::pow(1.0 / (2.0 * K * chain_constant), 4.0 / N);
}

}  // namespace fracvar
