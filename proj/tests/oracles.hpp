#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

// Frozen reference values (computed with 30-digit quadrature and root finding).
inline constexpr double kSinc2MassWithinFirstNull = 0.9028233335802806;  // untruncated pattern
inline constexpr double kSinc2WidthUntruncated = 0.8432662692321570;     // 0.7-mass width / x_1null
inline constexpr double kSinc2WidthWindow12 = 0.8323395620155284;        // same, pattern cut at +/-12 nulls
inline constexpr double kSinc2MassWindow12 = 0.9915595322732863;         // mass of +/-12 nulls
inline constexpr double kGaussianHalfWidth = 1.0364333894937896;         // z with erf(z/sqrt2) = 0.7

/// Adaptive Simpson with Richardson correction (S2 + (S2 - S1) / 15).
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 50) {
  const auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  const std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid);
        const double rm = 0.5 * (mid + hi);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(lo, mid, flo, flm, fmid);
        const double right = simpson(mid, hi, fmid, frm, fhi);
        const double delta = left + right - whole;
        if (d <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
      };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// Integral over [a, b] split at every integer so each piece is smooth.
inline double integrate_piecewise_unit(const std::function<double(double)>& f, double a, double b,
                                       double tol = 1e-13) {
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, std::floor(lo) + 1.0);
    total += adaptive_simpson(f, lo, hi, tol);
    lo = hi;
  }
  return total;
}

/// sinc^2(pi u), u in units of the first null; integrates to 1 over the real line.
inline double sinc2(double u) {
  if (u == 0.0) return 1.0;
  const double s = std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
  return s * s;
}

inline double sinc2_mass(double a, double b) { return integrate_piecewise_unit(sinc2, a, b); }

/// Continuous minimal 0.7-mass width of sinc^2 restricted to +/- window nulls
/// (renormalized). Scans centers exhaustively and bisects the half-width at each.
inline double sinc2_min_width(double mass, double window, int centers = 41) {
  const double total = sinc2_mass(-window, window);
  double best = 2.0 * window;
  for (int c = 0; c < centers; ++c) {
    const double x0 = -0.5 + static_cast<double>(c) / (centers - 1);
    double lo = 0.0;
    double hi = window + std::abs(x0);
    for (int it = 0; it < 60; ++it) {
      const double r = 0.5 * (lo + hi);
      const double a = std::max(-window, x0 - r);
      const double b = std::min(window, x0 + r);
      if (sinc2_mass(a, b) >= mass * total) hi = r;
      else lo = r;
    }
    best = std::min(best, 2.0 * hi);
  }
  return best;
}

/// z such that P(|Z| <= z) = mass for standard normal Z, by bisection on std::erf.
inline double normal_central_quantile(double mass) {
  double lo = 0.0;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::erf(mid / std::numbers::sqrt2) < mass) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// 1/e amplitude radius of a 1D Gaussian beam of waist w0 after distance z.
inline double gaussian_beam_width(double w0, double lambda, double z) {
  const double zr = std::numbers::pi * w0 * w0 / lambda;
  return w0 * std::sqrt(1.0 + (z / zr) * (z / zr));
}

/// Kolmogorov-Smirnov statistic of samples against a CDF.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 1 % critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

/// Exhaustive O(N^2) scan over all cell-aligned windows of a cell-centered
/// density; returns the minimal width in cells whose mass reaches `mass`.
inline std::size_t brute_force_window_cells(std::span<const double> values, double dx, double mass) {
  std::size_t best = values.size() + 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = i; j < values.size(); ++j) {
      acc += values[j] * dx;
      if (acc >= mass - 1e-12) {
        best = std::min(best, j - i + 1);
        break;
      }
    }
  }
  return best;
}

/// Minimal width over all runs of k consecutive sorted samples, brute force.
inline double brute_force_sample_width(std::vector<double> xs, std::size_t k) {
  std::sort(xs.begin(), xs.end());
  double best = INFINITY;
  for (std::size_t i = 0; i + k <= xs.size(); ++i) best = std::min(best, xs[i + k - 1] - xs[i]);
  return best;
}

}  // namespace oracle
