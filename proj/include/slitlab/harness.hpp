#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slitlab/density.hpp"
#include "slitlab/dispersion.hpp"
#include "slitlab/geometry.hpp"
#include "slitlab/subqm_engine.hpp"

namespace slitlab {

/// Declaration order is also the output order (alphabetical by name).
enum class Engine { fraunhofer, fresnel_cascade, subqm_analytic, subqm_mc };

std::string_view engine_name(Engine engine);
Engine parse_engine(std::string_view name);
bool is_subqm(Engine engine);

/// 25 log-spaced slit separations from 0.3 mm to 0.3 m.
std::vector<double> default_l_values();

/// Everything that determines a sweep. Lengths in meters, times in seconds.
struct SweepConfig {
  double lambda0 = 700e-9;
  double delta0 = 10e-6;
  double l0 = 0.3e-3;
  std::vector<double> l_values = default_l_values();
  double tau0 = 100e-12;
  TransitConvention transit = TransitConvention::slit_to_slit;
  CRounding rounding = CRounding::exact;
  std::vector<Engine> engines = {Engine::fraunhofer, Engine::fresnel_cascade, Engine::subqm_analytic,
                                 Engine::subqm_mc};
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  double mass_threshold = kDefaultMass;
  GridSpec grid{};
  std::size_t bootstrap_replicates = 200;
  double transition_fraction = 0.95;

  ExperimentGeometry geometry(double l) const { return {lambda0, delta0, l0, l}; }
  SubQmParams subqm_params() const { return {tau0, transit, PhysicalConstants{rounding}}; }

  /// Throws InvalidArgument on the first violated rule.
  void validate() const;

  /// Missing keys keep their defaults; unknown keys are rejected.
  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct SweepRecord {
  double l = 0.0;
  Engine engine = Engine::fraunhofer;
  DispersionResult dispersion;
  double heuristic_delta_x = 0.0;
  std::optional<double> mixture_weight;
  std::optional<BootstrapInterval> ci;
  double fresnel_number_slits = 0.0;   ///< delta0^2 / (4 lambda0 l)
  double fresnel_number_screen = 0.0;  ///< delta0^2 / (4 lambda0 l0)
};

struct TransitionVerdict {
  std::optional<Engine> reference;
  std::optional<Engine> candidate;
  double fraction = 0.95;
  std::optional<double> l_transition;
  double critical_length = 0.0;  ///< c * tau0 for comparison
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRecord> records;  ///< by l, then engine
  TransitionVerdict verdict;

  std::vector<double> delta_x(Engine engine) const;
};

/// Evaluates every (l, engine) pair, fanned out over `workers` threads
/// (0 = hardware concurrency). Output does not depend on `workers`.
SweepResult run_sweep(const SweepConfig& config, unsigned workers = 1);

/// Smallest l at which delta_x(candidate) >= fraction * delta_x(reference),
/// interpolated linearly in log l between the bracketing sweep points.
/// std::nullopt if the ratio never gets there. Throws if either engine is
/// missing at some l.
std::optional<double> detect_transition(const SweepResult& result, Engine reference, Engine candidate,
                                        double fraction = 0.95);

/// Default pairing: fraunhofer (else fresnel-cascade) against subqm-analytic
/// (else subqm-mc).
std::optional<double> detect_transition(const SweepResult& result, double fraction = 0.95);

std::string sweep_csv(const SweepResult& result);
nlohmann::ordered_json sweep_json(const SweepResult& result);

void emit_csv(const SweepResult& result, const std::string& path);
void emit_json(const SweepResult& result, const std::string& path);

}  // namespace slitlab
