#include "slitlab/subqm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "slitlab/errors.hpp"
#include "slitlab/parallel.hpp"
#include "slitlab/qm_engine.hpp"
#include "slitlab/random.hpp"

namespace slitlab {

namespace {

// exp(-745) underflows to zero: beyond this mean a kick is certain.
constexpr double kCertainKick = 745.0;

// Integral of the CDF of U[-a, a] from -inf to u.
double integrated_uniform_cdf(double u, double a) {
  if (u <= -a) return 0.0;
  if (u >= a) return u;
  return (u + a) * (u + a) / (4.0 * a);
}

}  // namespace

void SubQmParams::validate() const {
  if (!(tau0 >= 0.0) || std::isnan(tau0)) throw InvalidArgument("tau0 must be >= 0");
}

double kick_window(const ExperimentGeometry& g, const SubQmParams& params) {
  const TransitTimes t = transit_times(g, params.constants);
  return params.transit == TransitConvention::total_path ? t.slit_to_slit + t.slit_to_screen : t.slit_to_slit;
}

double mixture_weight(const ExperimentGeometry& g, const SubQmParams& params) {
  params.validate();
  const double dt = kick_window(g, params);
  if (params.tau0 == 0.0) return 1.0;
  return -std::expm1(-dt / params.tau0);
}

double concentrated_cdf(const ExperimentGeometry& g, double x) {
  require_valid(g);
  const double r = g.l0 / g.l;
  const double a = 0.5 * g.delta0 * (1.0 + r);  // half-width of the x2 term
  const double b = 0.5 * g.delta0 * r;          // half-width of the x1 term
  if (b < 1e-9 * a) return std::clamp((x + a) / (2.0 * a), 0.0, 1.0);
  const double f = (integrated_uniform_cdf(x + b, a) - integrated_uniform_cdf(x - b, a)) / (2.0 * b);
  return std::clamp(f, 0.0, 1.0);
}

ScreenDensity concentrated_density(const ExperimentGeometry& g, const GridSpec& grid) {
  const GridAxis axis = grid.screen_axis(first_null(g));
  std::vector<double> values(axis.n);
  double lower = concentrated_cdf(g, axis.left_edge());
  for (std::size_t i = 0; i < axis.n; ++i) {
    const double upper = concentrated_cdf(g, axis.x(i) + 0.5 * axis.dx);
    values[i] = std::max(0.0, upper - lower) / axis.dx;
    lower = upper;
  }
  return ScreenDensity::normalized(axis, std::move(values));
}

ScreenDensity MixtureDensity::combined() const {
  if (qm_part.size() != concentrated_part.size() || qm_part.x0() != concentrated_part.x0() ||
      qm_part.dx() != concentrated_part.dx())
    throw InvalidArgument("MixtureDensity: parts live on different grids");
  if (weight == 1.0) return qm_part;
  std::vector<double> values(qm_part.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = weight * qm_part[i] + (1.0 - weight) * concentrated_part[i];
  return ScreenDensity::normalized(qm_part.x0(), qm_part.dx(), std::move(values));
}

MixtureDensity mixture_density(const ExperimentGeometry& g, const SubQmParams& params, const GridSpec& grid) {
  const double w = mixture_weight(g, params);
  return {w, fraunhofer_density(g, grid), concentrated_density(g, grid)};
}

ScreenDensity subqm_density(const ExperimentGeometry& g, const SubQmParams& params, const GridSpec& grid) {
  return mixture_density(g, params, grid).combined();
}

PhotonRun simulate_photons(const ExperimentGeometry& g, const SubQmParams& params, std::size_t n, std::uint64_t seed,
                           const GridSpec& grid, unsigned workers) {
  if (n < 1) throw InvalidArgument("simulate_photons: n must be >= 1");
  params.validate();
  const double dt = kick_window(g, params);
  const double mean_kicks = params.tau0 == 0.0 ? 0.0 : dt / params.tau0;
  const DensitySampler relaxed(fraunhofer_density(g, grid));
  const double r = g.l0 / g.l;

  PhotonRun run;
  run.samples.seed = seed;
  run.samples.positions.resize(n);
  std::vector<unsigned char> kicked(n, 0);
  parallel_for(n, workers, [&](std::size_t i) {
    CounterRng rng(seed, 0, i);
    bool relaxes = true;
    if (params.tau0 > 0.0 && mean_kicks < kCertainKick) {
      relaxes = false;
      if (mean_kicks > 0.0) {
        std::poisson_distribution<std::uint64_t> kicks(mean_kicks);
        relaxes = kicks(rng) > 0;
      }
    }
    if (relaxes) {
      run.samples.positions[i] = relaxed(rng.uniform());
      kicked[i] = 1;
    } else {
      const double x1 = (rng.uniform() - 0.5) * g.delta0;
      const double x2 = (rng.uniform() - 0.5) * g.delta0;
      run.samples.positions[i] = x2 * (1.0 + r) - x1 * r;
    }
  });
  run.relaxed = static_cast<std::size_t>(std::count(kicked.begin(), kicked.end(), 1));
  return run;
}

double critical_length(const SubQmParams& params) {
  params.validate();
  return params.constants.c() * params.tau0;
}

}  // namespace slitlab
