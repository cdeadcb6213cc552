#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "slitlab/dispersion.hpp"
#include "slitlab/errors.hpp"
#include "slitlab/qm_engine.hpp"
#include "slitlab/subqm_engine.hpp"

using namespace slitlab;

namespace {

const ExperimentGeometry kDefault{700e-9, 10e-6, 0.3e-3, 0.3e-3};

SubQmParams with_tau(double tau0) {
  SubQmParams p;
  p.tau0 = tau0;
  return p;
}

// Closed-form 0.7-mass width of the straight-ray trapezoid with r = l0 / l.
double trapezoid_width(double delta0, double r, double mass) {
  const double a = delta0 * (1.0 + r);
  const double b = delta0 * r;
  const double flat = delta0 / a;
  if (mass <= flat) return mass * a;
  const double extra = mass - flat;
  const double t = b - std::sqrt(b * b - a * b * extra);
  return delta0 + 2.0 * t;
}

// CDF of x2 (1 + r) - x1 r by integrating over x1 the exact conditional CDF in x2.
double ray_cdf_by_quadrature(double delta0, double r, double x) {
  const auto conditional = [&](double x1) {
    const double bound = (x + x1 * r) / (1.0 + r);
    return std::clamp((bound + delta0 / 2) / delta0, 0.0, 1.0);
  };
  return oracle::adaptive_simpson(conditional, -delta0 / 2, delta0 / 2, 1e-14) / delta0;
}

double support_width(const ScreenDensity& d) {
  std::size_t first = d.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  return static_cast<double>(last - first + 1) * d.dx();
}

}  // namespace

TEST_CASE("mixture weight limits") {
  // Tiny transit: l = l0 = 1 nm.
  const ExperimentGeometry tiny{1e-12, 1e-13, 1e-9, 1e-9};
  CHECK(mixture_weight(tiny, with_tau(100e-12)) < 1e-7);

  const SubQmParams p = with_tau(100e-12);
  const ExperimentGeometry at_crit = kDefault.with_l(critical_length(p));
  CHECK(mixture_weight(at_crit, p) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(mixture_weight(at_crit, p) == doctest::Approx(0.6321).epsilon(1e-4));

  CHECK(mixture_weight(kDefault.with_l(0.3), with_tau(1e-12)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mixture_weight(kDefault, with_tau(0.0)) == 1.0);
  CHECK_THROWS_AS(mixture_weight(kDefault, with_tau(-1.0)), InvalidArgument);
}

TEST_CASE("mixture weight transit conventions") {
  SubQmParams total = with_tau(100e-12);
  total.transit = TransitConvention::total_path;
  const ExperimentGeometry g = kDefault.with_l(3e-3);
  const double expected = -std::expm1(-(g.l + g.l0) / PhysicalConstants::exact_c / 100e-12);
  CHECK(mixture_weight(g, total) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(mixture_weight(g, total) > mixture_weight(g, with_tau(100e-12)));
}

TEST_CASE("property: mixture weight is monotone in l and tau0") {
  double prev = 0.0;
  for (double l = 0.3e-3; l < 1.0; l *= 1.3) {
    const double w = mixture_weight(kDefault.with_l(l), with_tau(100e-12));
    CHECK(w > prev);
    prev = w;
  }
  prev = 1.0;
  for (double tau = 1e-13; tau < 1e-8; tau *= 1.7) {
    const double w = mixture_weight(kDefault.with_l(3e-3), with_tau(tau));
    CHECK(w <= prev);
    if (prev < 1.0) CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("concentrated CDF matches direct quadrature over the slit") {
  for (double l : {0.3e-3, 1e-3, 3e-3, 0.3}) {
    const ExperimentGeometry g = kDefault.with_l(l);
    const double r = g.l0 / g.l;
    for (double x = -16e-6; x <= 16e-6; x += 0.7e-6) {
      CHECK(concentrated_cdf(g, x) == doctest::Approx(ray_cdf_by_quadrature(g.delta0, r, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("concentrated density: trapezoid support and symmetry") {
  const ScreenDensity d = concentrated_density(kDefault);
  CHECK(d.is_normalized(1e-12));
  CHECK(support_width(d) == doctest::Approx(30e-6).epsilon(2 * d.dx() / 30e-6));
  const double top = *std::max_element(d.values().begin(), d.values().end());
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(d[i] - d[d.size() - 1 - i]) <= 1e-9 * top);

  const ExperimentGeometry far = kDefault.with_l(1e6);
  const ScreenDensity u = concentrated_density(far);
  CHECK(support_width(u) == doctest::Approx(10e-6).epsilon(2 * u.dx() / 10e-6));
  const double peak = *std::max_element(u.values().begin(), u.values().end());
  CHECK(peak == doctest::Approx(1.0 / 10e-6).epsilon(1e-6));
}

TEST_CASE("concentrated density: width matches the trapezoid closed form") {
  for (double l : {0.3e-3, 0.6e-3, 3e-3, 0.3}) {
    const ExperimentGeometry g = kDefault.with_l(l);
    const ScreenDensity d = concentrated_density(g);
    const double expected = trapezoid_width(g.delta0, g.l0 / g.l, 0.7);
    const double got = minimal_mass_interval(d).delta_x;
    CHECK(got >= expected - 1e-9 * expected);
    CHECK(got <= expected + d.dx());
  }
  CHECK(trapezoid_width(10e-6, 1.0, 0.7) == doctest::Approx(10e-6 + 2 * (10e-6 - std::sqrt(60.0) * 1e-6)));
}

TEST_CASE("subqm density with tau0 = 0 is the QM density") {
  const ScreenDensity sub = subqm_density(kDefault.with_l(3e-3), with_tau(0.0));
  const ScreenDensity qm = fraunhofer_density(kDefault.with_l(3e-3));
  REQUIRE(sub.size() == qm.size());
  for (std::size_t i = 0; i < qm.size(); ++i) CHECK(sub[i] == qm[i]);
}

TEST_CASE("subqm density recovers QM far beyond the critical length") {
  const ExperimentGeometry g = kDefault.with_l(0.3);
  const double sub = minimal_mass_interval(subqm_density(g, with_tau(100e-12))).delta_x;
  const double qm = minimal_mass_interval(fraunhofer_density(g)).delta_x;
  CHECK(std::abs(sub - qm) / qm < 0.02);
  CHECK(1.0 - mixture_weight(g, with_tau(100e-12)) == doctest::Approx(4.5e-5).epsilon(0.02));
}

TEST_CASE("subqm density is narrower below the critical length") {
  const ExperimentGeometry g = kDefault.with_l(3e-3);
  CHECK(mixture_weight(g, with_tau(100e-12)) == doctest::Approx(0.095).epsilon(0.01));
  const double sub = minimal_mass_interval(subqm_density(g, with_tau(100e-12))).delta_x;
  const double qm = minimal_mass_interval(fraunhofer_density(g)).delta_x;
  CHECK(sub < 0.6 * qm);
}

TEST_CASE("property: mixture lies between its parts") {
  for (double l : {0.3e-3, 2e-3, 2e-2, 0.1}) {
    const ExperimentGeometry g = kDefault.with_l(l);
    const MixtureDensity mix = mixture_density(g, with_tau(100e-12));
    const ScreenDensity combined = mix.combined();
    CHECK(combined.is_normalized(1e-9));
    const double top = *std::max_element(combined.values().begin(), combined.values().end());
    double max_gap = 0.0;
    double max_diff = 0.0;
    for (std::size_t i = 0; i < combined.size(); ++i) {
      const double lo = std::min(mix.qm_part[i], mix.concentrated_part[i]);
      const double hi = std::max(mix.qm_part[i], mix.concentrated_part[i]);
      CHECK(combined[i] >= lo * (1 - 1e-9));
      CHECK(combined[i] <= hi * (1 + 1e-9));
      CHECK(std::abs(combined[i] - combined[combined.size() - 1 - i]) <= 1e-9 * top);
      max_gap = std::max(max_gap, std::abs(combined[i] - mix.qm_part[i]));
      max_diff = std::max(max_diff, std::abs(mix.qm_part[i] - mix.concentrated_part[i]));
    }
    // Recovery law.
    CHECK(max_gap <= (1.0 - mix.weight) * max_diff * (1 + 1e-9));

    const double w_mix = minimal_mass_interval(combined).delta_x;
    const double w_qm = minimal_mass_interval(mix.qm_part).delta_x;
    const double w_conc = minimal_mass_interval(mix.concentrated_part).delta_x;
    CHECK(w_mix >= std::min(w_qm, w_conc) - combined.dx());
    CHECK(w_mix <= std::max(w_qm, w_conc) + combined.dx());
  }
}

TEST_CASE("collimation narrowing dominates just above l0") {
  // With few kicks, the straight-ray trapezoid narrows from 30 um support at
  // l = l0 towards the bare slit width, so the mixture width first falls.
  const double at_l0 = minimal_mass_interval(subqm_density(kDefault, with_tau(100e-12))).delta_x;
  const double at_3mm = minimal_mass_interval(subqm_density(kDefault.with_l(3e-3), with_tau(100e-12))).delta_x;
  CHECK(at_l0 > at_3mm);
  CHECK(at_l0 < minimal_mass_interval(fraunhofer_density(kDefault)).delta_x);
}

TEST_CASE("simulate_photons: tau0 = 0 relaxes every photon") {
  const PhotonRun run = simulate_photons(kDefault.with_l(3e-3), with_tau(0.0), 10000, 3);
  CHECK(run.relaxed == 10000);
  CHECK(run.samples.n() == 10000);
}

TEST_CASE("simulate_photons: branch frequency follows the mixture weight") {
  for (double l : {0.3e-3, 3e-3, 3e-2}) {
    const ExperimentGeometry g = kDefault.with_l(l);
    const std::size_t n = 200'000;
    const PhotonRun run = simulate_photons(g, with_tau(100e-12), n, 19, {}, 0);
    const double w = mixture_weight(g, with_tau(100e-12));
    const double freq = static_cast<double>(run.relaxed) / static_cast<double>(n);
    CHECK(std::abs(freq - w) <= 4.0 * std::sqrt(w * (1.0 - w) / static_cast<double>(n)));
  }
}

TEST_CASE("simulate_photons is deterministic for any worker count") {
  const ExperimentGeometry g = kDefault.with_l(3e-3);
  const PhotonRun a = simulate_photons(g, with_tau(100e-12), 5000, 8, {}, 1);
  const PhotonRun b = simulate_photons(g, with_tau(100e-12), 5000, 8, {}, 3);
  CHECK(a.samples.positions == b.samples.positions);
  CHECK(a.relaxed == b.relaxed);
}

TEST_CASE("simulate_photons reproduces the analytic mixture") {
  const ExperimentGeometry g = kDefault.with_l(3e-3);
  const SubQmParams p = with_tau(100e-12);
  const std::size_t n = 1'000'000;
  const PhotonRun run = simulate_photons(g, p, n, 123, {}, 0);
  const ScreenDensity analytic = subqm_density(g, p);

  const double from_samples = minimal_mass_interval_samples(run.samples).delta_x;
  const double from_density = minimal_mass_interval(analytic).delta_x;
  CHECK(std::abs(from_samples - from_density) / from_density < 0.015);

  const DensitySampler cdf(analytic);
  const double ks = oracle::ks_statistic(run.samples.positions, [&](double x) { return cdf.cdf(x); });
  CHECK(ks < oracle::ks_critical_1pct(n));
}

TEST_CASE("critical length") {
  SubQmParams rounded = with_tau(1e-12);
  rounded.constants = PhysicalConstants::paper();
  CHECK(critical_length(rounded) == 0.3e-3);
  CHECK(critical_length(with_tau(0.0)) == 0.0);
  CHECK(critical_length(with_tau(100e-12)) == doctest::Approx(29.98e-3).epsilon(1e-4));
}
