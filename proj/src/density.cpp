#include "slitlab/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "slitlab/errors.hpp"

namespace slitlab {

double GridAxis::max_abs() const {
  if (n == 0) return 0.0;
  return std::max(std::abs(x(0)), std::abs(x(n - 1)));
}

GridAxis GridAxis::centered(double half_width, std::size_t n) {
  if (!(half_width > 0.0) || n == 0) throw InvalidArgument("GridAxis::centered: need half_width > 0 and n > 0");
  const double dx = 2.0 * half_width / static_cast<double>(n);
  return {-half_width + 0.5 * dx, dx, n};
}

void GridSpec::validate() const {
  if (points < 256 || !std::has_single_bit(points))
    throw InvalidArgument("grid points must be a power of two >= 256, got " + std::to_string(points));
  if (!(window_halfwidth_in_nulls >= 4.0))
    throw InvalidArgument("grid window half-width must be >= 4 first nulls");
}

GridAxis GridSpec::screen_axis(double first_null) const {
  validate();
  return GridAxis::centered(window_halfwidth_in_nulls * first_null, points);
}

ScreenDensity::ScreenDensity(double x0, double dx, std::vector<double> values)
    : x0_(x0), dx_(dx), values_(std::move(values)) {
  if (!(dx_ > 0.0) || !std::isfinite(dx_)) throw InvalidArgument("ScreenDensity: dx must be positive");
  if (!std::isfinite(x0_)) throw InvalidArgument("ScreenDensity: x0 must be finite");
  if (values_.empty()) throw InvalidArgument("ScreenDensity: no grid points");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("ScreenDensity: values must be finite and >= 0");
  }
}

ScreenDensity ScreenDensity::normalized(double x0, double dx, std::vector<double> values) {
  ScreenDensity d(x0, dx, std::move(values));
  const double mass = d.total_mass();
  if (!(mass > 0.0)) throw InvalidArgument("ScreenDensity: zero total mass cannot be normalized");
  const double scale = 1.0 / mass;
  for (double& v : d.values_) v *= scale;
  return d;
}

double ScreenDensity::total_mass() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * dx_;
}

bool ScreenDensity::is_normalized(double tolerance) const {
  return std::abs(total_mass() - 1.0) <= tolerance;
}

std::vector<double> ScreenDensity::edge_cdf() const {
  std::vector<double> cdf(values_.size() + 1, 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    running += values_[i];
    cdf[i + 1] = running * dx_;
  }
  return cdf;
}

double ScreenDensity::at(double x) const {
  const double half = 0.5 * dx_;
  const double last = this->x(values_.size() - 1);
  if (x < x0_ - half || x > last + half) return 0.0;
  if (x <= x0_) return values_.front();
  if (x >= last) return values_.back();
  const double pos = (x - x0_) / dx_;
  const auto i = std::min(static_cast<std::size_t>(pos), values_.size() - 2);
  const double t = pos - static_cast<double>(i);
  return (1.0 - t) * values_[i] + t * values_[i + 1];
}

ComplexField::ComplexField(GridAxis ax, std::vector<std::complex<double>> amps)
    : axis(ax), amplitudes(std::move(amps)) {
  if (amplitudes.size() < 2) throw InvalidArgument("ComplexField: need at least 2 grid points");
  if (axis.n != amplitudes.size()) throw InvalidArgument("ComplexField: axis size does not match amplitudes");
  if (!(axis.dx > 0.0)) throw InvalidArgument("ComplexField: dx must be positive");
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw InvalidArgument("ComplexField: amplitudes must be finite");
  }
}

std::vector<double> ComplexField::intensity() const {
  std::vector<double> out(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), out.begin(), [](auto a) { return std::norm(a); });
  return out;
}

double ComplexField::power() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum * axis.dx;
}

}  // namespace slitlab
