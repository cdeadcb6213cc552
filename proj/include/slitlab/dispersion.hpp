#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slitlab/density.hpp"

namespace slitlab {

/// Photon arrival positions (meters) with the seed that produced them.
struct SampleSet {
  std::vector<double> positions;
  std::uint64_t seed = 0;

  std::size_t n() const { return positions.size(); }
};

/// Minimal-width interval holding at least `mass_threshold` of the probability.
struct DispersionResult {
  double delta_x = 0.0;  ///< full width 2R
  double center = 0.0;
  double mass_threshold = 0.7;
  double achieved_mass = 0.0;
};

inline constexpr double kDefaultMass = 0.7;

/// Scans all cell-aligned windows [edge_i, edge_j] of the density and returns
/// the narrowest one whose enclosed mass reaches `mass`. Among equally narrow
/// windows the one centered nearest x = 0 wins (then the leftmost).
///
/// Throws InvalidArgument if mass is outside (0, 1), the density is not
/// normalized, or no window reaches the target.
DispersionResult minimal_mass_interval(const ScreenDensity& density, double mass = kDefaultMass);

/// Empirical counterpart: with k = ceil(mass * n), the narrowest run of k
/// consecutive order statistics. Same tie rule as the density version.
DispersionResult minimal_mass_interval_samples(std::span<const double> positions, double mass = kDefaultMass);

inline DispersionResult minimal_mass_interval_samples(const SampleSet& samples, double mass = kDefaultMass) {
  return minimal_mass_interval_samples(samples.positions, mass);
}

struct BootstrapInterval {
  double low = 0.0;
  double high = 0.0;
};

/// Percentile (2.5 %, 97.5 %) bootstrap interval of the sample estimator's
/// delta_x. Replicate b draws from CounterRng(seed, stream, b).
/// Requires n >= 10 and n_boot >= 100.
BootstrapInterval bootstrap_interval(const SampleSet& samples, double mass, std::size_t n_boot, std::uint64_t seed,
                                     unsigned workers = 1);

/// Number of order statistics the sample estimator keeps for n samples.
std::size_t order_statistic_count(std::size_t n, double mass);

}  // namespace slitlab
