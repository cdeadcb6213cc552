#include "slitlab/geometry.hpp"

#include <sstream>

#include "slitlab/errors.hpp"

namespace slitlab {

namespace {

std::string describe(const char* what, double ratio) {
  std::ostringstream out;
  out << what << " (ratio = " << ratio << ")";
  return out.str();
}

}  // namespace

ValidationReport validate(const ExperimentGeometry& g) {
  ValidationReport report;
  const auto positive = [&](double v, const char* name) {
    if (!(v > 0.0)) report.errors.push_back(std::string(name) + " must be strictly positive");
  };
  positive(g.lambda0, "lambda0");
  positive(g.delta0, "delta0");
  positive(g.l0, "l0");
  positive(g.l, "l");
  if (!report.errors.empty()) return report;

  if (g.l < g.l0) report.errors.push_back(describe("l must be >= l0", g.l / g.l0));

  if (g.delta0 > g.l0 / kFarSeparation)
    report.warnings.push_back(describe("delta0 not << l0: delta0/l0 exceeds 1/10", g.delta0 / g.l0));

  const double dispersion = 4.0 * g.l0 * g.lambda0 / g.delta0;
  if (dispersion <= kFarSeparation * g.delta0)
    report.warnings.push_back(
        describe("heuristic dispersion not >> delta0: dispersion/delta0 is at most 10", dispersion / g.delta0));
  return report;
}

void require_valid(const ExperimentGeometry& geometry) {
  const ValidationReport report = validate(geometry);
  if (report.usable()) return;
  std::string message = "invalid geometry:";
  for (const auto& e : report.errors) message += " " + e + ";";
  throw InvalidArgument(message);
}

double first_null(const ExperimentGeometry& g) {
  require_valid(g);
  return g.l0 * g.lambda0 / g.delta0;
}

double kth_null(const ExperimentGeometry& g, int k) {
  if (k < 1) throw InvalidArgument("kth_null: k must be >= 1 (k = 0 is the central maximum)");
  return k * first_null(g);
}

double heuristic_dispersion(const ExperimentGeometry& g) { return 4.0 * first_null(g); }

TransitTimes transit_times(const ExperimentGeometry& g, const PhysicalConstants& constants) {
  require_valid(g);
  const double c = constants.c();
  return {g.l / c, g.l0 / c};
}

double fresnel_number(double width, double lambda, double distance) {
  if (!(width > 0.0 && lambda > 0.0 && distance > 0.0))
    throw InvalidArgument("fresnel_number: arguments must be positive");
  return width * width / (4.0 * lambda * distance);
}

}  // namespace slitlab
