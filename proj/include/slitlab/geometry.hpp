#pragma once

#include <string>
#include <vector>

namespace slitlab {

/// One configuration of the two-slit cascade. All lengths in meters.
///
/// Both slits have width `delta0` and share the optical axis. Light crosses
/// slit 1, travels `l` to slit 2, then `l0` to the screen.
struct ExperimentGeometry {
  double lambda0 = 700e-9;  ///< wavelength
  double delta0 = 10e-6;    ///< slit width
  double l0 = 0.3e-3;       ///< slit 2 to screen
  double l = 0.3e-3;        ///< slit 1 to slit 2

  ExperimentGeometry with_l(double new_l) const {
    ExperimentGeometry g = *this;
    g.l = new_l;
    return g;
  }

  friend bool operator==(const ExperimentGeometry&, const ExperimentGeometry&) = default;
};

enum class CRounding { exact, paper };

struct PhysicalConstants {
  CRounding rounding = CRounding::exact;

  static constexpr double exact_c = 299792458.0;
  static constexpr double rounded_c = 3.0e8;

  static PhysicalConstants paper() { return {CRounding::paper}; }

  /// Speed of light in m/s for the selected rounding mode.
  double c() const { return rounding == CRounding::paper ? rounded_c : exact_c; }
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool usable() const { return errors.empty(); }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Separation factor used to read "much smaller than".
inline constexpr double kFarSeparation = 10.0;

/// Checks hard constraints (positive lengths, l >= l0) and the soft
/// far-field separations delta0 << l0 and heuristic dispersion >> delta0.
ValidationReport validate(const ExperimentGeometry& geometry);

/// Throws InvalidArgument listing every hard-constraint violation.
void require_valid(const ExperimentGeometry& geometry);

/// Position of the first zero of the single-slit screen pattern, l0 * lambda0 / delta0.
double first_null(const ExperimentGeometry& geometry);

/// k-th zero, k * first_null. k = 0 is the central maximum and is rejected.
double kth_null(const ExperimentGeometry& geometry, int k);

/// Rule-of-thumb dispersion 4 * first_null.
double heuristic_dispersion(const ExperimentGeometry& geometry);

struct TransitTimes {
  double slit_to_slit;    ///< l / c
  double slit_to_screen;  ///< l0 / c
};

TransitTimes transit_times(const ExperimentGeometry& geometry, const PhysicalConstants& constants);

/// width^2 / (4 lambda z); far field when small.
double fresnel_number(double width, double lambda, double distance);

}  // namespace slitlab
