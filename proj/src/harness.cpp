#include "slitlab/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "slitlab/errors.hpp"
#include "slitlab/io.hpp"
#include "slitlab/parallel.hpp"
#include "slitlab/qm_engine.hpp"
#include "slitlab/random.hpp"

namespace slitlab {

namespace {

constexpr std::array<std::string_view, 4> kEngineNames = {"fraunhofer", "fresnel-cascade", "subqm-analytic",
                                                          "subqm-mc"};

std::string_view transit_name(TransitConvention t) {
  return t == TransitConvention::total_path ? "total-path" : "slit-to-slit";
}

TransitConvention parse_transit(const std::string& s) {
  if (s == "slit-to-slit") return TransitConvention::slit_to_slit;
  if (s == "total-path") return TransitConvention::total_path;
  throw InvalidArgument("unknown transit_convention '" + s + "'");
}

std::string_view rounding_name(CRounding r) { return r == CRounding::paper ? "paper" : "exact"; }

CRounding parse_rounding(const std::string& s) {
  if (s == "exact") return CRounding::exact;
  if (s == "paper") return CRounding::paper;
  throw InvalidArgument("unknown c_rounding '" + s + "'");
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
  }
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

SweepRecord evaluate(const SweepConfig& config, std::size_t l_index, Engine engine) {
  const double l = config.l_values[l_index];
  const ExperimentGeometry g = config.geometry(l);
  const SubQmParams params = config.subqm_params();
  const auto engine_id = static_cast<std::uint64_t>(engine);

  SweepRecord rec;
  rec.l = l;
  rec.engine = engine;
  rec.heuristic_delta_x = heuristic_dispersion(g);
  rec.fresnel_number_slits = fresnel_number(g.delta0, g.lambda0, g.l);
  rec.fresnel_number_screen = fresnel_number(g.delta0, g.lambda0, g.l0);

  switch (engine) {
    case Engine::fraunhofer:
      rec.dispersion = minimal_mass_interval(fraunhofer_density(g, config.grid), config.mass_threshold);
      break;
    case Engine::fresnel_cascade:
      rec.dispersion = minimal_mass_interval(cascade_density(g, config.grid), config.mass_threshold);
      break;
    case Engine::subqm_analytic: {
      const MixtureDensity mix = mixture_density(g, params, config.grid);
      rec.mixture_weight = mix.weight;
      rec.dispersion = minimal_mass_interval(mix.combined(), config.mass_threshold);
      break;
    }
    case Engine::subqm_mc: {
      const std::uint64_t key = derive_key(config.seed, l_index, engine_id);
      const PhotonRun run = simulate_photons(g, params, config.mc_samples, key, config.grid);
      rec.mixture_weight = mixture_weight(g, params);
      rec.dispersion = minimal_mass_interval_samples(run.samples, config.mass_threshold);
      rec.ci = bootstrap_interval(run.samples, config.mass_threshold, config.bootstrap_replicates, mix64(key));
      break;
    }
  }
  return rec;
}

}  // namespace

std::string_view engine_name(Engine engine) { return kEngineNames.at(static_cast<std::size_t>(engine)); }

Engine parse_engine(std::string_view name) {
  for (std::size_t i = 0; i < kEngineNames.size(); ++i) {
    if (kEngineNames[i] == name) return static_cast<Engine>(i);
  }
  throw InvalidArgument("unknown engine '" + std::string(name) + "'");
}

bool is_subqm(Engine engine) { return engine == Engine::subqm_analytic || engine == Engine::subqm_mc; }

std::vector<double> default_l_values() {
  constexpr std::size_t count = 25;
  constexpr double first = 0.3e-3;
  constexpr double last = 0.3;
  std::vector<double> values(count);
  const double step = std::log(last / first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) values[i] = first * std::exp(step * static_cast<double>(i));
  values.front() = first;
  values.back() = last;
  return values;
}

void SweepConfig::validate() const {
  if (l_values.empty()) throw InvalidArgument("l_values must not be empty");
  for (std::size_t i = 1; i < l_values.size(); ++i) {
    if (!(l_values[i] > l_values[i - 1])) throw InvalidArgument("l_values must be strictly increasing");
  }
  for (double l : l_values) require_valid(geometry(l));
  if (engines.empty()) throw InvalidArgument("engines must not be empty");
  if (std::set<Engine>(engines.begin(), engines.end()).size() != engines.size())
    throw InvalidArgument("engines must not repeat");
  grid.validate();
  subqm_params().validate();
  if (!(mass_threshold > 0.0 && mass_threshold < 1.0)) throw InvalidArgument("mass_threshold must lie in (0, 1)");
  if (!(transition_fraction > 0.0 && transition_fraction <= 1.0))
    throw InvalidArgument("transition_fraction must lie in (0, 1]");
  if (std::find(engines.begin(), engines.end(), Engine::subqm_mc) != engines.end()) {
    if (mc_samples < 10) throw InvalidArgument("mc_samples must be >= 10 for the subqm-mc engine");
    if (bootstrap_replicates < 100) throw InvalidArgument("bootstrap_replicates must be >= 100");
  }
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "lambda0_m", "delta0_m",       "l0_m",         "l_values_m", "tau0_s",
      "engines",   "mc_samples",     "seed",         "mass_threshold", "grid",
      "transit_convention", "c_rounding", "bootstrap_replicates", "transition_fraction"};
  if (!j.is_object()) throw InvalidArgument("sweep config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) throw InvalidArgument("unknown config key '" + item.key() + "'");
  }

  SweepConfig c;
  c.lambda0 = get_or(j, "lambda0_m", c.lambda0);
  c.delta0 = get_or(j, "delta0_m", c.delta0);
  c.l0 = get_or(j, "l0_m", c.l0);
  c.l_values = get_or(j, "l_values_m", c.l_values);
  c.tau0 = get_or(j, "tau0_s", c.tau0);
  if (j.contains("engines")) {
    c.engines.clear();
    for (const auto& name : get_or(j, "engines", std::vector<std::string>{})) c.engines.push_back(parse_engine(name));
  }
  c.mc_samples = get_or(j, "mc_samples", c.mc_samples);
  c.seed = get_or(j, "seed", c.seed);
  c.mass_threshold = get_or(j, "mass_threshold", c.mass_threshold);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw InvalidArgument("config key 'grid' must be an object");
    for (const auto& item : g.items()) {
      if (item.key() != "points" && item.key() != "window_nulls")
        throw InvalidArgument("unknown grid key '" + item.key() + "'");
    }
    c.grid.points = get_or(g, "points", c.grid.points);
    c.grid.window_halfwidth_in_nulls = get_or(g, "window_nulls", c.grid.window_halfwidth_in_nulls);
  }
  if (j.contains("transit_convention")) c.transit = parse_transit(get_or(j, "transit_convention", std::string{}));
  if (j.contains("c_rounding")) c.rounding = parse_rounding(get_or(j, "c_rounding", std::string{}));
  c.bootstrap_replicates = get_or(j, "bootstrap_replicates", c.bootstrap_replicates);
  c.transition_fraction = get_or(j, "transition_fraction", c.transition_fraction);
  c.validate();
  return c;
}

nlohmann::ordered_json SweepConfig::to_json() const {
  nlohmann::ordered_json j;
  j["lambda0_m"] = lambda0;
  j["delta0_m"] = delta0;
  j["l0_m"] = l0;
  j["l_values_m"] = l_values;
  j["tau0_s"] = tau0;
  auto names = nlohmann::ordered_json::array();
  for (Engine e : engines) names.push_back(std::string(engine_name(e)));
  j["engines"] = names;
  j["mc_samples"] = mc_samples;
  j["seed"] = seed;
  j["mass_threshold"] = mass_threshold;
  j["grid"] = {{"points", grid.points}, {"window_nulls", grid.window_halfwidth_in_nulls}};
  j["transit_convention"] = std::string(transit_name(transit));
  j["c_rounding"] = std::string(rounding_name(rounding));
  j["bootstrap_replicates"] = bootstrap_replicates;
  j["transition_fraction"] = transition_fraction;
  return j;
}

std::vector<double> SweepResult::delta_x(Engine engine) const {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.engine == engine) out.push_back(r.dispersion.delta_x);
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& config, unsigned workers) {
  config.validate();
  std::vector<Engine> engines = config.engines;
  std::sort(engines.begin(), engines.end());

  const std::size_t tasks = config.l_values.size() * engines.size();
  std::vector<SweepRecord> records(tasks);
  parallel_for(tasks, workers, [&](std::size_t t) {
    const std::size_t l_index = t / engines.size();
    const Engine engine = engines[t % engines.size()];
    try {
      records[t] = evaluate(config, l_index, engine);
    } catch (const Error& e) {
      throw Error(e.kind(), "sweep aborted at l = " + format_double(config.l_values[l_index]) +
                                " m, engine " + std::string(engine_name(engine)) + ": " + e.what());
    }
  });

  SweepResult result{config, std::move(records), {}};
  result.verdict.fraction = config.transition_fraction;
  result.verdict.critical_length = critical_length(config.subqm_params());
  const auto has = [&](Engine e) { return std::find(engines.begin(), engines.end(), e) != engines.end(); };
  const auto reference = has(Engine::fraunhofer)        ? std::optional(Engine::fraunhofer)
                         : has(Engine::fresnel_cascade) ? std::optional(Engine::fresnel_cascade)
                                                        : std::nullopt;
  const auto candidate = has(Engine::subqm_analytic) ? std::optional(Engine::subqm_analytic)
                         : has(Engine::subqm_mc)     ? std::optional(Engine::subqm_mc)
                                                     : std::nullopt;
  if (reference && candidate) {
    result.verdict.reference = reference;
    result.verdict.candidate = candidate;
    result.verdict.l_transition = detect_transition(result, *reference, *candidate, config.transition_fraction);
  }
  return result;
}

std::optional<double> detect_transition(const SweepResult& result, Engine reference, Engine candidate,
                                        double fraction) {
  if (!(fraction > 0.0)) throw InvalidArgument("detect_transition: fraction must be positive");
  const auto& ls = result.config.l_values;
  std::vector<double> ratio;
  ratio.reserve(ls.size());
  for (double l : ls) {
    std::optional<double> ref;
    std::optional<double> cand;
    for (const auto& r : result.records) {
      if (r.l != l) continue;
      if (r.engine == reference) ref = r.dispersion.delta_x;
      if (r.engine == candidate) cand = r.dispersion.delta_x;
    }
    if (!ref || !cand)
      throw InvalidArgument("detect_transition: engines " + std::string(engine_name(reference)) + " and " +
                            std::string(engine_name(candidate)) + " are not both present at l = " +
                            format_double(l));
    ratio.push_back(*cand / *ref);
  }

  for (std::size_t k = 0; k < ratio.size(); ++k) {
    if (ratio[k] < fraction) continue;
    if (k == 0) return ls.front();
    const double t = (fraction - ratio[k - 1]) / (ratio[k] - ratio[k - 1]);
    const double log_l = std::log(ls[k - 1]) + t * (std::log(ls[k]) - std::log(ls[k - 1]));
    return std::exp(log_l);
  }
  return std::nullopt;
}

std::optional<double> detect_transition(const SweepResult& result, double fraction) {
  const auto& engines = result.config.engines;
  const auto has = [&](Engine e) { return std::find(engines.begin(), engines.end(), e) != engines.end(); };
  const Engine reference = has(Engine::fraunhofer) ? Engine::fraunhofer : Engine::fresnel_cascade;
  const Engine candidate = has(Engine::subqm_analytic) ? Engine::subqm_analytic : Engine::subqm_mc;
  return detect_transition(result, reference, candidate, fraction);
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "l_m,engine,delta_x_m,delta_x_heuristic_m,mixture_weight,achieved_mass,ci_low_m,ci_high_m\n";
  for (const auto& r : result.records) {
    out += format_double(r.l) + ',' + std::string(engine_name(r.engine)) + ',' +
           format_double(r.dispersion.delta_x) + ',' + format_double(r.heuristic_delta_x) + ',';
    if (r.mixture_weight) out += format_double(*r.mixture_weight);
    out += ',' + format_double(r.dispersion.achieved_mass) + ',';
    if (r.ci) out += format_double(r.ci->low) + ',' + format_double(r.ci->high);
    else out += ',';
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json sweep_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  j["config"] = result.config.to_json();
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    nlohmann::ordered_json rec;
    rec["l_m"] = r.l;
    rec["engine"] = std::string(engine_name(r.engine));
    rec["delta_x_m"] = r.dispersion.delta_x;
    rec["center_m"] = r.dispersion.center;
    rec["delta_x_heuristic_m"] = r.heuristic_delta_x;
    rec["mixture_weight"] = optional_number(r.mixture_weight);
    rec["achieved_mass"] = r.dispersion.achieved_mass;
    rec["ci_low_m"] = optional_number(r.ci ? std::optional(r.ci->low) : std::nullopt);
    rec["ci_high_m"] = optional_number(r.ci ? std::optional(r.ci->high) : std::nullopt);
    rec["fresnel_number_slits"] = r.fresnel_number_slits;
    rec["fresnel_number_screen"] = r.fresnel_number_screen;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  const auto& v = result.verdict;
  nlohmann::ordered_json verdict;
  verdict["reference_engine"] =
      v.reference ? nlohmann::ordered_json(std::string(engine_name(*v.reference))) : nlohmann::ordered_json(nullptr);
  verdict["candidate_engine"] =
      v.candidate ? nlohmann::ordered_json(std::string(engine_name(*v.candidate))) : nlohmann::ordered_json(nullptr);
  verdict["fraction"] = v.fraction;
  verdict["l_transition_m"] = optional_number(v.l_transition);
  verdict["critical_length_m"] = v.critical_length;
  j["verdict"] = std::move(verdict);
  return j;
}

void emit_csv(const SweepResult& result, const std::string& path) { write_text_file(path, sweep_csv(result)); }

void emit_json(const SweepResult& result, const std::string& path) {
  write_text_file(path, sweep_json(result).dump(2) + "\n");
}

}  // namespace slitlab
