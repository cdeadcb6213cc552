#include "slitlab/qm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slitlab/errors.hpp"
#include "slitlab/parallel.hpp"
#include "slitlab/random.hpp"

namespace slitlab {

namespace {

constexpr double kMinPointsPerNull = 16.0;
constexpr std::size_t kMinAperturePoints = 64;

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

ComplexField slit_plane_wave(double width, std::size_t points) {
  return {GridAxis::centered(0.5 * width, points), std::vector<std::complex<double>>(points, {1.0, 0.0})};
}

}  // namespace

double fraunhofer_intensity(const ExperimentGeometry& g, double x) {
  const double s = sinc(std::numbers::pi * g.delta0 * x / (g.lambda0 * g.l0));
  return s * s;
}

ScreenDensity fraunhofer_density(const ExperimentGeometry& g, const GridSpec& grid) {
  const double x1 = first_null(g);
  const GridAxis axis = grid.screen_axis(x1);
  if (x1 / axis.dx < kMinPointsPerNull) {
    std::ostringstream msg;
    msg << "fraunhofer_density: grid resolves the null spacing with " << x1 / axis.dx << " points, need "
        << kMinPointsPerNull;
    throw InvalidArgument(msg.str());
  }
  std::vector<double> values(axis.n);
  for (std::size_t i = 0; i < axis.n; ++i) values[i] = fraunhofer_intensity(g, axis.x(i));
  return ScreenDensity::normalized(axis, std::move(values));
}

double fresnel_max_spacing(const GridAxis& input, const GridAxis& output, double distance, double lambda0) {
  return lambda0 * distance / (2.0 * (output.max_abs() + input.max_abs()));
}

ComplexField fresnel_propagate(const ComplexField& field, double distance, double lambda0, const GridAxis& output) {
  if (!(distance > 0.0)) throw InvalidArgument("fresnel_propagate: distance must be positive");
  if (!(lambda0 > 0.0)) throw InvalidArgument("fresnel_propagate: wavelength must be positive");
  if (output.n < 2 || !(output.dx > 0.0)) throw InvalidArgument("fresnel_propagate: output grid needs >= 2 points");

  const double required = fresnel_max_spacing(field.axis, output, distance, lambda0);
  if (field.axis.dx > required) {
    std::ostringstream msg;
    msg << "fresnel_propagate: input spacing " << field.axis.dx << " m exceeds the sampling limit " << required
        << " m";
    throw SamplingError(msg.str(), required);
  }

  const double k = std::numbers::pi / (lambda0 * distance);
  // (i lambda z)^(-1/2) = exp(-i pi/4) / sqrt(lambda z)
  const std::complex<double> prefactor =
      std::polar(field.axis.dx / std::sqrt(lambda0 * distance), -std::numbers::pi / 4.0);

  std::vector<std::complex<double>> out(output.n);
  for (std::size_t m = 0; m < output.n; ++m) {
    const double x = output.x(m);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < field.axis.n; ++j) {
      const double d = x - field.axis.x(j);
      acc += field.amplitudes[j] * std::polar(1.0, k * d * d);
    }
    out[m] = prefactor * acc;
  }
  return {output, std::move(out)};
}

std::size_t cascade_aperture_points(const ExperimentGeometry& g, const GridSpec& grid) {
  const GridAxis screen = grid.screen_axis(first_null(g));
  std::size_t points = std::max(kMinAperturePoints, grid.points / 16);
  // Both legs must satisfy the sampling criterion; the screen leg is the tighter one.
  const double half = 0.5 * g.delta0;
  const double spacing =
      std::min(g.lambda0 * g.l / (2.0 * (half + half)), g.lambda0 * g.l0 / (2.0 * (screen.max_abs() + half)));
  const auto needed = static_cast<std::size_t>(std::ceil(g.delta0 / spacing));
  return std::max(points, needed);
}

ScreenDensity cascade_density(const ExperimentGeometry& g, const GridSpec& grid) {
  require_valid(g);
  const GridAxis screen = grid.screen_axis(first_null(g));
  const std::size_t aperture_points = cascade_aperture_points(g, grid);

  const ComplexField source = slit_plane_wave(g.delta0, aperture_points);
  // Evaluating the first leg only on the slit-2 aperture is the truncation by slit 2.
  const ComplexField at_slit2 = fresnel_propagate(source, g.l, g.lambda0, source.axis);
  const ComplexField on_screen = fresnel_propagate(at_slit2, g.l0, g.lambda0, screen);
  return ScreenDensity::normalized(screen, on_screen.intensity());
}

DensitySampler::DensitySampler(const ScreenDensity& density)
    : left_(density.x0() - 0.5 * density.dx()), dx_(density.dx()), cdf_(density.edge_cdf()) {
  if (!density.is_normalized()) throw InvalidArgument("DensitySampler: density is not normalized");
  // Pin the last edge so u -> 1 maps inside the grid.
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
}

double DensitySampler::operator()(double u) const {
  // First edge with cdf > u; cell index is one before it.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t edge = static_cast<std::size_t>(it - cdf_.begin());
  edge = std::clamp<std::size_t>(edge, 1, cdf_.size() - 1);
  const std::size_t cell = edge - 1;
  const double lo = cdf_[cell];
  const double hi = cdf_[cell + 1];
  const double t = hi > lo ? (u - lo) / (hi - lo) : 0.5;
  return left_ + (static_cast<double>(cell) + std::clamp(t, 0.0, 1.0)) * dx_;
}

double DensitySampler::cdf(double x) const {
  const double pos = (x - left_) / dx_;
  if (pos <= 0.0) return 0.0;
  const auto cells = static_cast<double>(cdf_.size() - 1);
  if (pos >= cells) return 1.0;
  const auto i = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(i);
  return cdf_[i] + t * (cdf_[i + 1] - cdf_[i]);
}

SampleSet sample_density(const ScreenDensity& density, std::size_t n, std::uint64_t seed, unsigned workers) {
  if (n < 1) throw InvalidArgument("sample_density: n must be >= 1");
  const DensitySampler sampler(density);
  SampleSet out;
  out.seed = seed;
  out.positions.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    CounterRng rng(seed, 0, i);
    out.positions[i] = sampler(rng.uniform());
  });
  return out;
}

}  // namespace slitlab
