#pragma once

#include "slitlab/geometry.hpp"

namespace slitlab {

/// Inputs to the back-of-envelope relaxation-time estimate.
/// Densities are counts per cubic meter.
struct CosmologyParams {
  double baryon_density = 1.0;
  double normal_particle_density = 100.0;
  double dark_to_normal_ratio = 10.0;
  double effective_cross_section = 1.0;  ///< m^2
  PhysicalConstants constants{};

  /// Rejects negative or non-finite inputs. Zero densities or cross-section
  /// are accepted and drive tau0 to +infinity.
  void validate() const;
};

/// The estimate's lower bound on tau0.
inline constexpr double kTau0LowerBound = 1e-12;

double dark_particle_density(const CosmologyParams& params);

/// 1 / (n_dark c sigma); +infinity when the rate vanishes.
double mean_interaction_interval(const CosmologyParams& params);

struct Tau0Estimate {
  double tau0 = 0.0;
  double lower_bound = kTau0LowerBound;
  bool bound_satisfied = false;
  bool bounded = true;  ///< false when tau0 is infinite
};

Tau0Estimate estimate_tau0(const CosmologyParams& params);

/// c * tau0 of the estimate; +infinity when unbounded.
double critical_length_from_cosmology(const CosmologyParams& params);

}  // namespace slitlab
