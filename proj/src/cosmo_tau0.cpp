#include "slitlab/cosmo_tau0.hpp"

#include <cmath>
#include <limits>

#include "slitlab/errors.hpp"

namespace slitlab {

void CosmologyParams::validate() const {
  for (double v : {baryon_density, normal_particle_density, dark_to_normal_ratio, effective_cross_section}) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("cosmology parameters must be finite and >= 0");
  }
}

double dark_particle_density(const CosmologyParams& p) {
  p.validate();
  return p.normal_particle_density * p.dark_to_normal_ratio;
}

double mean_interaction_interval(const CosmologyParams& p) {
  const double rate = dark_particle_density(p) * p.constants.c() * p.effective_cross_section;
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / rate;
}

Tau0Estimate estimate_tau0(const CosmologyParams& p) {
  Tau0Estimate e;
  e.tau0 = mean_interaction_interval(p);
  e.bounded = std::isfinite(e.tau0);
  e.bound_satisfied = e.tau0 >= e.lower_bound;
  return e;
}

double critical_length_from_cosmology(const CosmologyParams& p) {
  const Tau0Estimate e = estimate_tau0(p);
  if (!e.bounded) return std::numeric_limits<double>::infinity();
  return p.constants.c() * e.tau0;
}

}  // namespace slitlab
