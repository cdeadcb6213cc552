#pragma once

#include <cstddef>
#include <cstdint>

#include "slitlab/density.hpp"
#include "slitlab/dispersion.hpp"
#include "slitlab/geometry.hpp"

namespace slitlab {

enum class TransitConvention {
  slit_to_slit,  ///< dt = l / c
  total_path,    ///< dt = (l + l0) / c
};

struct SubQmParams {
  double tau0 = 100e-12;  ///< relaxation time, seconds; 0 means instant relaxation
  TransitConvention transit = TransitConvention::slit_to_slit;
  PhysicalConstants constants{};

  void validate() const;
};

/// Transit time that the kick process acts over.
double kick_window(const ExperimentGeometry& geometry, const SubQmParams& params);

/// Probability of at least one randomizing kick in transit, 1 - exp(-dt / tau0).
/// Exactly 1 when tau0 == 0.
double mixture_weight(const ExperimentGeometry& geometry, const SubQmParams& params);

/// CDF of the straight-ray screen position x = x2 (1 + l0/l) - x1 (l0/l)
/// with x1, x2 independent and uniform across their slits. The density is a
/// symmetric trapezoid of support delta0 (1 + 2 l0 / l) and flat top delta0.
double concentrated_cdf(const ExperimentGeometry& geometry, double x);

/// Exact cell averages of the straight-ray density on the screen grid.
ScreenDensity concentrated_density(const ExperimentGeometry& geometry, const GridSpec& grid = {});

/// Relaxed (QM) and concentrated parts on one grid, mixed with weight w on the QM part.
struct MixtureDensity {
  double weight = 1.0;
  ScreenDensity qm_part;
  ScreenDensity concentrated_part;

  ScreenDensity combined() const;
};

MixtureDensity mixture_density(const ExperimentGeometry& geometry, const SubQmParams& params,
                               const GridSpec& grid = {});

/// w * fraunhofer + (1 - w) * concentrated, renormalized.
ScreenDensity subqm_density(const ExperimentGeometry& geometry, const SubQmParams& params,
                            const GridSpec& grid = {});

struct PhotonRun {
  SampleSet samples;
  std::size_t relaxed = 0;  ///< photons that took at least one kick
};

/// Per photon i (stream CounterRng(seed, 0, i)): draw a kick count from
/// Poisson(dt / tau0); with no kick, trace a straight ray through uniform
/// points of both slits, otherwise draw from the Fraunhofer density.
PhotonRun simulate_photons(const ExperimentGeometry& geometry, const SubQmParams& params, std::size_t n,
                           std::uint64_t seed, const GridSpec& grid = {}, unsigned workers = 1);

/// c * tau0
double critical_length(const SubQmParams& params);

}  // namespace slitlab
