#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "slitlab/density.hpp"
#include "slitlab/dispersion.hpp"
#include "slitlab/geometry.hpp"

namespace slitlab {

/// Far-field single-slit intensity sinc^2(pi delta0 x / (lambda0 l0)), peak 1 at x = 0.
double fraunhofer_intensity(const ExperimentGeometry& geometry, double x);

/// Fraunhofer pattern of slit 2 on the screen window, renormalized over the window.
/// Rejects grids with fewer than 16 points per null spacing.
ScreenDensity fraunhofer_density(const ExperimentGeometry& geometry, const GridSpec& grid = {});

/// Largest input spacing for which the Fresnel kernel phase advances by at
/// most pi between neighbouring input samples anywhere on the output grid:
/// lambda z / (2 (max|x_out| + max|x_in|)).
double fresnel_max_spacing(const GridAxis& input, const GridAxis& output, double distance, double lambda0);

/// 1D Fresnel diffraction integral by direct midpoint quadrature:
///
///   out(x) = (i lambda z)^(-1/2) * sum_j in(xi_j) exp(i pi (x - xi_j)^2 / (lambda z)) dxi
///
/// The prefactor makes the transform unitary, so power is conserved up to
/// window truncation. O(N_in * N_out).
///
/// Throws SamplingError (carrying the required spacing) when the input grid
/// is coarser than fresnel_max_spacing.
ComplexField fresnel_propagate(const ComplexField& field, double distance, double lambda0, const GridAxis& output);

/// Number of samples across each slit used by cascade_density.
std::size_t cascade_aperture_points(const ExperimentGeometry& geometry, const GridSpec& grid);

/// Two-slit cascade: unit plane wave across slit 1, Fresnel propagation over l
/// onto the slit-2 aperture, truncation by slit 2, Fresnel propagation over l0
/// onto the screen window, |.|^2, renormalized.
ScreenDensity cascade_density(const ExperimentGeometry& geometry, const GridSpec& grid = {});

/// Inverse-CDF sampler over a normalized ScreenDensity treated as piecewise
/// constant on its cells; the CDF is piecewise linear.
class DensitySampler {
 public:
  explicit DensitySampler(const ScreenDensity& density);

  /// Position whose CDF equals u, u in [0, 1).
  double operator()(double u) const;

  /// CDF at x.
  double cdf(double x) const;

 private:
  double left_;
  double dx_;
  std::vector<double> cdf_;
};

/// n draws; draw i uses CounterRng(seed, 0, i).
SampleSet sample_density(const ScreenDensity& density, std::size_t n, std::uint64_t seed, unsigned workers = 1);

}  // namespace slitlab
