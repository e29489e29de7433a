#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracvar {

/// Raised for violated preconditions of any numerical entry point.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform periodic box [-L/2, L/2)^N with n points per axis.
/// Sites sit at x_j = -L/2 + j*h, so j = n/2 is the origin.
class GridSpec {
 public:
  GridSpec(int dim, std::size_t n, double box_length) : dim_(dim), n_(n), box_length_(box_length) {
    if (dim != 1 && dim != 2) throw DomainError("grid: dim must be 1 or 2");
    if (n < 16 || !std::has_single_bit(n)) throw DomainError("grid: n must be a power of two >= 16");
    if (!(box_length > 0.0) || !std::isfinite(box_length)) throw DomainError("grid: box_length must be > 0");
  }

  int dim() const { return dim_; }
  std::size_t n() const { return n_; }
  double box_length() const { return box_length_; }
  double spacing() const { return box_length_ / static_cast<double>(n_); }
  double cell_volume() const { return dim_ == 1 ? spacing() : spacing() * spacing(); }
  double volume() const { return dim_ == 1 ? box_length_ : box_length_ * box_length_; }
  std::size_t size() const { return dim_ == 1 ? n_ : n_ * n_; }

  /// Coordinate of index j along one axis.
  double coord(std::size_t j) const { return -0.5 * box_length_ + static_cast<double>(j) * spacing(); }

  /// Signed wavenumber of FFT index m along one axis: (2pi/L) * {-n/2, ..., n/2-1}.
  double wavenumber(std::size_t m) const {
    const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
    auto mm = static_cast<std::ptrdiff_t>(m);
    if (mm >= half) mm -= static_cast<std::ptrdiff_t>(n_);
    return 2.0 * M_PI * static_cast<double>(mm) / box_length_;
  }

  /// Squared wavenumber magnitude for flat (row-major) spectral index.
  double k_squared(std::size_t flat) const {
    if (dim_ == 1) {
      const double k = wavenumber(flat);
      return k * k;
    }
    const double k1 = wavenumber(flat / n_);
    const double k2 = wavenumber(flat % n_);
    return k1 * k1 + k2 * k2;
  }

  /// Euclidean distance of site `flat` from the origin.
  double radius(std::size_t flat) const {
    if (dim_ == 1) return std::abs(coord(flat));
    return std::hypot(coord(flat / n_), coord(flat % n_));
  }

  /// Flat index of the origin site.
  std::size_t origin() const { return dim_ == 1 ? n_ / 2 : (n_ / 2) * n_ + n_ / 2; }

  /// True when site lies in the outer 10% shell of the box (max-norm >= 0.4 L).
  bool in_edge_shell(std::size_t flat) const {
    const double edge = 0.4 * box_length_;
    if (dim_ == 1) return std::abs(coord(flat)) >= edge;
    return std::max(std::abs(coord(flat / n_)), std::abs(coord(flat % n_))) >= edge;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  std::size_t n_;
  double box_length_;
};

/// Real grid function; the discrete stand-in for u in H^s(R^N).
class Field {
 public:
  explicit Field(GridSpec grid) : grid_(grid), values_(grid.size(), 0.0) {}

  Field(GridSpec grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw DomainError("field: value count does not match grid");
    for (double v : values_)
      if (!std::isfinite(v)) throw DomainError("field: non-finite value");
  }

  /// Samples `fn(x)` (N=1) or `fn(x1, x2)` (N=2) at every site.
  template <class Fn>
  static Field sample(const GridSpec& grid, Fn&& fn) {
    std::vector<double> v(grid.size());
    const std::size_t n = grid.n();
    if (grid.dim() == 1) {
      if constexpr (std::is_invocable_r_v<double, Fn, double>)
        for (std::size_t j = 0; j < n; ++j) v[j] = fn(grid.coord(j));
      else
        throw DomainError("field: 1D sampler expects fn(x)");
    } else {
      if constexpr (std::is_invocable_r_v<double, Fn, double, double>)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) v[i * n + j] = fn(grid.coord(i), grid.coord(j));
      else
        throw DomainError("field: 2D sampler expects fn(x1, x2)");
    }
    return Field(grid, std::move(v));
  }

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  /// Throws when any value is NaN/Inf; mutation through values() bypasses the constructor check.
  void require_finite(const char* what) const {
    for (double v : values_)
      if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite field value");
  }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  Field& operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double a, Field b) { return b *= a; }
  friend Field operator*(Field b, double a) { return b *= a; }

  /// u + a*v without temporaries.
  Field axpy(double a, const Field& v) const {
    check_same(v);
    Field out(grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + a * v.values_[i];
    return out;
  }

 private:
  void check_same(const Field& o) const {
    if (!(grid_ == o.grid_)) throw DomainError("field: grid mismatch");
  }

  GridSpec grid_;
  std::vector<double> values_;
};

/// h^N-weighted L2 inner product.
inline double inner(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw DomainError("inner: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * a.grid().cell_volume();
}

/// Circular shift moving site `from` onto site `to`.
inline Field circular_shift(const Field& u, std::size_t from, std::size_t to) {
  const auto& g = u.grid();
  const std::size_t n = g.n();
  Field out(g);
  if (g.dim() == 1) {
    const std::size_t d = (to + n - from) % n;
    for (std::size_t j = 0; j < n; ++j) out[(j + d) % n] = u[j];
  } else {
    const std::size_t d1 = (to / n + n - from / n) % n;
    const std::size_t d2 = (to % n + n - from % n) % n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[((i + d1) % n) * n + (j + d2) % n] = u[i * n + j];
  }
  return out;
}

/// Index of the largest value (first on ties).
inline std::size_t argmax(const Field& u) {
  auto v = u.values();
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

/// splitmix64; every random quantity in the library derives from it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Shortest text that round-trips the double (>= 15 significant digits always).
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Field snapshot CSV: `x,u` or `x1,x2,u`, row-major over sites.
inline std::string field_to_csv(const Field& u) {
  const auto& g = u.grid();
  std::string out = g.dim() == 1 ? "x,u\n" : "x1,x2,u\n";
  const std::size_t n = g.n();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (g.dim() == 1) {
      out += format_number(g.coord(i));
    } else {
      out += format_number(g.coord(i / n));
      out += ',';
      out += format_number(g.coord(i % n));
    }
    out += ',';
    out += format_number(u[i]);
    out += '\n';
  }
  return out;
}

}  // namespace fracvar
