// slitlab command-line interface: pattern, sweep, dispersion, tau0.
#include <cmath>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slitlab/cosmo_tau0.hpp"
#include "slitlab/dispersion.hpp"
#include "slitlab/errors.hpp"
#include "slitlab/geometry.hpp"
#include "slitlab/harness.hpp"
#include "slitlab/io.hpp"
#include "slitlab/qm_engine.hpp"
#include "slitlab/subqm_engine.hpp"

namespace {

using nlohmann::ordered_json;
using namespace slitlab;

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

struct PatternArgs {
  std::string engine = "fraunhofer";
  ExperimentGeometry geometry{};
  double tau0 = 100e-12;
  GridSpec grid{};
  std::string out;
};

int run_pattern(const PatternArgs& a) {
  ScreenDensity density = [&] {
    if (a.engine == "fraunhofer") return fraunhofer_density(a.geometry, a.grid);
    if (a.engine == "fresnel") return cascade_density(a.geometry, a.grid);
    SubQmParams params;
    params.tau0 = a.tau0;
    return subqm_density(a.geometry, params, a.grid);
  }();
  write_density_csv(density, a.out);
  const DispersionResult d = minimal_mass_interval(density);
  ordered_json summary;
  summary["engine"] = a.engine;
  summary["points"] = density.size();
  summary["delta_x_m"] = d.delta_x;
  summary["center_m"] = d.center;
  summary["achieved_mass"] = d.achieved_mass;
  summary["delta_x_heuristic_m"] = heuristic_dispersion(a.geometry);
  summary["out"] = a.out;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& csv, const std::string& json, unsigned workers) {
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(read_text_file(config_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(config_path, std::string("invalid JSON: ") + e.what());
  }
  const SweepConfig config = SweepConfig::from_json(raw);
  const SweepResult result = run_sweep(config, workers);
  if (!csv.empty()) emit_csv(result, csv);
  if (!json.empty()) emit_json(result, json);
  if (csv.empty() && json.empty()) std::cout << sweep_csv(result);
  return 0;
}

int run_dispersion(const std::string& in, double mass) {
  const DispersionResult d = minimal_mass_interval_samples(read_positions_csv(in), mass);
  ordered_json out;
  out["delta_x_m"] = d.delta_x;
  out["center_m"] = d.center;
  out["mass"] = d.mass_threshold;
  out["achieved_mass"] = d.achieved_mass;
  std::cout << out.dump(2) << "\n";
  return 0;
}

// `paper` is the rounded reference figure for this step, if any.
ordered_json step(double value, const char* unit, std::optional<double> paper) {
  return {{"value", number_or_null(value)}, {"unit", unit}, {"paper", paper ? ordered_json(*paper) : ordered_json()}};
}

int run_tau0(const CosmologyParams& p) {
  const Tau0Estimate e = estimate_tau0(p);
  ordered_json out;
  out["c_m_per_s"] = p.constants.c();
  out["c_rounding"] = p.constants.rounding == CRounding::paper ? "paper" : "exact";
  out["effective_cross_section_m2"] = p.effective_cross_section;
  out["baryon_density"] = step(p.baryon_density, "1/m^3", 1.0);
  out["normal_particle_density"] = step(p.normal_particle_density, "1/m^3", 100.0);
  out["dark_particle_density"] = step(dark_particle_density(p), "1/m^3", 1000.0);
  out["mean_interaction_interval"] = step(mean_interaction_interval(p), "s", 3e-12);
  out["tau0"] = step(e.tau0, "s", 3e-12);
  out["tau0_lower_bound"] = step(e.lower_bound, "s", 1e-12);
  out["bound_satisfied"] = e.bound_satisfied;
  out["bounded"] = e.bounded;
  out["critical_length"] = step(critical_length_from_cosmology(p), "m", std::nullopt);
  SubQmParams at_bound;
  at_bound.tau0 = e.lower_bound;
  at_bound.constants = p.constants;
  out["critical_length_at_lower_bound"] = step(critical_length(at_bound), "m", 0.3e-3);
  std::cout << out.dump(2) << "\n";
  return 0;
}

void report_error(const std::string& kind, const std::string& message) {
  ordered_json err;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-slit cascade dispersion laboratory"};
  app.require_subcommand(1);

  PatternArgs pattern;
  auto* pat = app.add_subcommand("pattern", "Write one screen density to CSV");
  pat->add_option("--engine", pattern.engine, "fraunhofer | fresnel | subqm")
      ->check(CLI::IsMember({"fraunhofer", "fresnel", "subqm"}));
  pat->add_option("--lambda0", pattern.geometry.lambda0, "wavelength [m]")->required();
  pat->add_option("--delta0", pattern.geometry.delta0, "slit width [m]")->required();
  pat->add_option("--l0", pattern.geometry.l0, "slit 2 to screen [m]")->required();
  pat->add_option("--l", pattern.geometry.l, "slit 1 to slit 2 [m]")->required();
  pat->add_option("--tau0", pattern.tau0, "relaxation time [s] (subqm)");
  pat->add_option("--grid-points", pattern.grid.points, "screen grid points");
  pat->add_option("--window-nulls", pattern.grid.window_halfwidth_in_nulls, "window half-width in first nulls");
  pat->add_option("--out", pattern.out, "output CSV")->required();

  std::string config_path, out_csv, out_json;
  unsigned workers = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a slit-separation sweep");
  sweep->add_option("--config", config_path, "sweep config JSON")->required();
  sweep->add_option("--out-csv", out_csv, "CSV output path");
  sweep->add_option("--out-json", out_json, "JSON output path");
  sweep->add_option("--workers", workers, "worker threads (0 = all cores); does not change output");

  std::string positions_path;
  double mass = kDefaultMass;
  auto* disp = app.add_subcommand("dispersion", "Minimal 0.7-mass interval of a position sample");
  disp->add_option("--in", positions_path, "CSV with header x_m")->required();
  disp->add_option("--mass", mass, "target mass fraction");

  CosmologyParams cosmo;
  bool paper_rounding = false;
  auto* tau = app.add_subcommand("tau0", "Relaxation-time estimate from particle densities");
  tau->add_flag("--paper-rounding", paper_rounding, "use c = 3e8 m/s");
  tau->add_option("--cross-section", cosmo.effective_cross_section, "effective cross-section [m^2]");
  tau->add_option("--baryon-density", cosmo.baryon_density, "[1/m^3]");
  tau->add_option("--normal-density", cosmo.normal_particle_density, "[1/m^3]");
  tau->add_option("--dark-ratio", cosmo.dark_to_normal_ratio, "dark to normal density ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  }

  try {
    if (*pat) return run_pattern(pattern);
    if (*sweep) return run_sweep_cmd(config_path, out_csv, out_json, workers);
    if (*disp) return run_dispersion(positions_path, mass);
    if (*tau) {
      if (paper_rounding) cosmo.constants = PhysicalConstants::paper();
      return run_tau0(cosmo);
    }
  } catch (const slitlab::Error& e) {
    report_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return 1;
}
