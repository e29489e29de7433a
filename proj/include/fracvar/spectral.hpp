#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "fracvar/grid.hpp"

namespace fracvar {

namespace detail {

// Plans are created once per (dim, n, direction) and then executed through the
// new-array interface, which FFTW guarantees to be thread-safe.
class FftPlans {
 public:
  static fftw_plan get(int dim, std::size_t n, int sign) {
    static FftPlans instance;
    return instance.lookup(dim, n, sign);
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan lookup(int dim, std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::tuple{dim, n, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = dim == 1 ? n : n * n;
    std::vector<std::complex<double>> in(total), out(total);
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(static_cast<int>(n), pin, pout, sign, flags)
                              : fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), pin, pout, sign, flags);
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

inline void check_order(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("fractional order s must lie in (0, 1]");
}

}  // namespace detail

/// Unnormalized forward DFT of a real field, sum_j u_j e^{-i k.j}.
inline std::vector<std::complex<double>> forward_transform(const Field& u) {
  const auto& g = u.grid();
  std::vector<std::complex<double>> in(u.size()), out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) in[i] = u[i];
  fftw_execute_dft(detail::FftPlans::get(g.dim(), g.n(), FFTW_FORWARD), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

/// Inverse of forward_transform (includes the 1/n^N factor); returns the real part.
inline std::vector<double> inverse_transform_real(const GridSpec& g, std::vector<std::complex<double>> spec) {
  std::vector<std::complex<double>> out(spec.size());
  fftw_execute_dft(detail::FftPlans::get(g.dim(), g.n(), FFTW_BACKWARD), reinterpret_cast<fftw_complex*>(spec.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(g.size());
  std::vector<double> re(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) re[i] = out[i].real() * scale;
  return re;
}

/// (-Delta)^s u as the Fourier multiplier |k|^{2s}. s = 1 gives the classical Laplacian.
inline Field fractional_laplacian(const Field& u, double s) {
  detail::check_order(s);
  u.require_finite("fractional_laplacian");
  const auto& g = u.grid();
  auto spec = forward_transform(u);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= std::pow(g.k_squared(i), s);
  return Field(g, inverse_transform_real(g, std::move(spec)));
}

/// |(-Delta)^{s/2} u|_2^2 = (1/L^N) sum_k |k|^{2s} |u_hat_k|^2 with u_hat_k = h^N sum_j u_j e^{-i k x_j}.
inline double dirichlet_energy(const Field& u, double s) {
  detail::check_order(s);
  u.require_finite("dirichlet_energy");
  const auto& g = u.grid();
  const auto spec = forward_transform(u);
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double k2 = g.k_squared(i);
    if (k2 == 0.0) continue;
    acc += std::pow(k2, s) * std::norm(spec[i]);
  }
  const double hN = g.cell_volume();
  return acc * hN * hN / g.volume();
}

/// h^N sum_j u_j^2.
inline double mass(const Field& u) {
  u.require_finite("mass");
  double acc = 0.0;
  for (double v : u.values()) acc += v * v;
  return acc * u.grid().cell_volume();
}

/// (h^N sum_j |u_j|^p)^{1/p}.
inline double lp_norm(const Field& u, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
  u.require_finite("lp_norm");
  double acc = 0.0;
  for (double v : u.values()) acc += std::pow(std::abs(v), p);
  return std::pow(acc * u.grid().cell_volume(), 1.0 / p);
}

/// Fraction of mass carried by the outer 10% shell of the box.
inline double edge_mass_fraction(const Field& u) {
  double edge = 0.0, total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = u[i] * u[i];
    total += w;
    if (u.grid().in_edge_shell(i)) edge += w;
  }
  return total > 0.0 ? edge / total : 0.0;
}

inline constexpr double kEdgeMassLimit = 1e-6;

/// Hurwitz zeta sum_{m>=0} (a+m)^{-sigma}, sigma > 1, a >= 1 (Euler-Maclaurin after a direct head).
inline double hurwitz_zeta(double sigma, double a) {
  constexpr int head = 12;
  double acc = 0.0;
  for (int m = 0; m < head; ++m) acc += std::pow(a + m, -sigma);
  const double N = a + head;
  acc += std::pow(N, 1.0 - sigma) / (sigma - 1.0) + 0.5 * std::pow(N, -sigma);
  // B_{2k}/(2k)!
  constexpr double coeff[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
  double rising = sigma;  // sigma (sigma+1) ... (sigma+2k-2)
  for (int k = 1; k <= 5; ++k) {
    acc += coeff[k - 1] * rising * std::pow(N, -sigma - 2.0 * k + 1.0);
    rising *= (sigma + 2.0 * k - 1.0) * (sigma + 2.0 * k);
  }
  return acc;
}

/// Discrete Gagliardo double sum h^2 sum_{i != j} |u_i - u_j|^2 / |x_i - x_j|^{1+2s}, N = 1.
///
/// The field is extended by zero outside the box (no periodic images), so pairs
/// with one site outside contribute u_i^2 times the exact lattice tail of the
/// kernel. This keeps the sum a rearrangement-monotone quantity on the full
/// lattice hZ. Proportional, not equal, to dirichlet_energy; the constant is not fixed.
inline double gagliardo_seminorm(const Field& u, double s) {
  detail::check_order(s);
  u.require_finite("gagliardo_seminorm");
  const auto& g = u.grid();
  if (g.dim() != 1) throw DomainError("gagliardo_seminorm: only N = 1 is supported");
  if (edge_mass_fraction(u) >= kEdgeMassLimit)
    throw DomainError("gagliardo_seminorm: field carries non-negligible mass near the box edge");

  const std::size_t n = g.n();
  const double h = g.spacing();
  const double sigma = 1.0 + 2.0 * s;
  std::vector<double> kernel(n);
  for (std::size_t d = 1; d < n; ++d) kernel[d] = std::pow(static_cast<double>(d) * h, -sigma);

  double pairs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = u[i];
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = ui - u[j];
      row += diff * diff * kernel[j - i];
    }
    pairs += row;
  }

  // tail[a] = sum_{d >= a} d^{-sigma}
  std::vector<double> tail(n + 1);
  for (std::size_t a = 1; a <= n; ++a) tail[a] = hurwitz_zeta(sigma, static_cast<double>(a));
  double outside = 0.0;
  const double hs = std::pow(h, -sigma);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0.0) continue;
    outside += u[i] * u[i] * hs * (tail[i + 1] + tail[n - i]);
  }

  return h * h * (2.0 * pairs + 2.0 * outside);
}

}  // namespace fracvar
