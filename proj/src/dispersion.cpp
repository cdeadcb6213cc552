#include "slitlab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slitlab/errors.hpp"
#include "slitlab/parallel.hpp"
#include "slitlab/random.hpp"

namespace slitlab {

namespace {

// Absorbs summation round-off when a window's mass lands exactly on the target.
constexpr double kMassSlack = 1e-12;
constexpr std::uint64_t kBootstrapStream = 0xB007;

void check_mass(double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw InvalidArgument("mass threshold must lie in (0, 1)");
}

// Narrowest window over sorted positions; k >= 1.
DispersionResult scan_sorted(std::span<const double> sorted, std::size_t k) {
  DispersionResult best;
  bool found = false;
  for (std::size_t i = 0; i + k <= sorted.size(); ++i) {
    const double lo = sorted[i];
    const double hi = sorted[i + k - 1];
    const double width = hi - lo;
    const double center = 0.5 * (lo + hi);
    if (!found || width < best.delta_x || (width == best.delta_x && std::abs(center) < std::abs(best.center))) {
      best.delta_x = width;
      best.center = center;
      found = true;
    }
  }
  return best;
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return values[lo] + t * (values[hi] - values[lo]);
}

}  // namespace

std::size_t order_statistic_count(std::size_t n, double mass) {
  const auto k = static_cast<std::size_t>(std::ceil(mass * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

DispersionResult minimal_mass_interval(const ScreenDensity& density, double mass) {
  check_mass(mass);
  if (!density.is_normalized()) throw InvalidArgument("minimal_mass_interval: density is not normalized");

  const std::vector<double> cdf = density.edge_cdf();
  const std::size_t edges = cdf.size();
  const double target = mass - kMassSlack;
  if (cdf.back() - cdf.front() < target)
    throw InvalidArgument("minimal_mass_interval: total window mass below the target");

  const double left = density.x0() - 0.5 * density.dx();
  const double dx = density.dx();
  std::size_t best_cells = 0;
  std::size_t best_i = 0;
  double best_abs_center = 0.0;
  bool found = false;

  std::size_t j = 0;
  for (std::size_t i = 0; i < edges; ++i) {
    j = std::max(j, i);
    while (j < edges && cdf[j] - cdf[i] < target) ++j;
    if (j == edges) break;
    const std::size_t cells = j - i;
    const double abs_center = std::abs(left + 0.5 * static_cast<double>(i + j) * dx);
    if (!found || cells < best_cells || (cells == best_cells && abs_center < best_abs_center)) {
      best_cells = cells;
      best_i = i;
      best_abs_center = abs_center;
      found = true;
    }
  }

  DispersionResult result;
  result.mass_threshold = mass;
  result.delta_x = static_cast<double>(best_cells) * dx;
  result.center = left + (static_cast<double>(best_i) + 0.5 * static_cast<double>(best_cells)) * dx;
  result.achieved_mass = cdf[best_i + best_cells] - cdf[best_i];
  return result;
}

DispersionResult minimal_mass_interval_samples(std::span<const double> positions, double mass) {
  check_mass(mass);
  if (positions.empty()) throw InvalidArgument("minimal_mass_interval_samples: empty sample set");
  for (double x : positions) {
    if (!std::isfinite(x)) throw InvalidArgument("minimal_mass_interval_samples: non-finite position");
  }
  std::vector<double> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = order_statistic_count(sorted.size(), mass);
  DispersionResult result = scan_sorted(sorted, k);
  result.mass_threshold = mass;
  result.achieved_mass = static_cast<double>(k) / static_cast<double>(sorted.size());
  return result;
}

BootstrapInterval bootstrap_interval(const SampleSet& samples, double mass, std::size_t n_boot, std::uint64_t seed,
                                     unsigned workers) {
  check_mass(mass);
  const std::size_t n = samples.n();
  if (n < 10) throw InvalidArgument("bootstrap_interval: need at least 10 samples, got " + std::to_string(n));
  if (n_boot < 100) throw InvalidArgument("bootstrap_interval: need at least 100 replicates");

  std::vector<double> sorted = samples.positions;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = order_statistic_count(n, mass);

  // A resample with replacement is fully described by how often each order
  // statistic is drawn; expanding the counts in order yields it already sorted.
  std::vector<double> widths(n_boot);
  parallel_for(n_boot, workers, [&](std::size_t b) {
    CounterRng rng(seed, kBootstrapStream, b);
    std::vector<std::uint32_t> counts(n, 0);
    for (std::size_t draw = 0; draw < n; ++draw) {
      const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      ++counts[std::min(idx, n - 1)];
    }
    std::vector<double> resample;
    resample.reserve(n);
    for (std::size_t i = 0; i < n; ++i) resample.insert(resample.end(), counts[i], sorted[i]);
    widths[b] = scan_sorted(resample, k).delta_x;
  });

  return {percentile(widths, 0.025), percentile(widths, 0.975)};
}

}  // namespace slitlab
