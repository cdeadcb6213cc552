#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace slitlab {

/// Uniform 1D axis of `n` nodes at x0 + i * dx. Each node is the center of a
/// cell of width dx.
struct GridAxis {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 0;

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
  double left_edge() const { return x0 - 0.5 * dx; }
  double right_edge() const { return x0 + (static_cast<double>(n) - 0.5) * dx; }
  /// Largest |x| over the nodes.
  double max_abs() const;

  /// n cell-centered nodes tiling [-half_width, +half_width].
  static GridAxis centered(double half_width, std::size_t n);
};

/// Screen sampling: `points` nodes over +/- window_halfwidth_in_nulls first nulls.
struct GridSpec {
  std::size_t points = 8192;
  double window_halfwidth_in_nulls = 12.0;

  /// Throws InvalidArgument unless points is a power of two >= 256 and the window is >= 4 nulls.
  void validate() const;

  GridAxis screen_axis(double first_null) const;

  GridSpec doubled() const { return {points * 2, window_halfwidth_in_nulls}; }
};

/// Probability density of arrival position sampled on a uniform grid.
///
/// Values are cell-centered: node i carries mass values[i] * dx over
/// [x_i - dx/2, x_i + dx/2]. A normalized density has sum(values) * dx == 1.
class ScreenDensity {
 public:
  /// Stores values as given. Throws on dx <= 0, empty input, negative or non-finite entries.
  ScreenDensity(double x0, double dx, std::vector<double> values);

  /// As the constructor, then rescales so that sum(values) * dx == 1.
  static ScreenDensity normalized(double x0, double dx, std::vector<double> values);
  static ScreenDensity normalized(const GridAxis& axis, std::vector<double> values) {
    return normalized(axis.x0, axis.dx, std::move(values));
  }

  double x0() const { return x0_; }
  double dx() const { return dx_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  GridAxis axis() const { return {x0_, dx_, values_.size()}; }

  double x(std::size_t i) const { return x0_ + static_cast<double>(i) * dx_; }

  /// sum(values) * dx
  double total_mass() const;
  bool is_normalized(double tolerance = 1e-9) const;

  /// Cumulative mass at the size()+1 cell edges; front() == 0.
  std::vector<double> edge_cdf() const;

  /// Linear interpolation between nodes; zero outside the cell span.
  double at(double x) const;

 private:
  double x0_;
  double dx_;
  std::vector<double> values_;
};

/// Scalar complex amplitude on a uniform grid.
struct ComplexField {
  GridAxis axis;
  std::vector<std::complex<double>> amplitudes;

  ComplexField(GridAxis axis, std::vector<std::complex<double>> amplitudes);

  /// |a|^2 at each node.
  std::vector<double> intensity() const;
  /// sum |a|^2 * dx
  double power() const;
};

}  // namespace slitlab
