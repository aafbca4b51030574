#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fraceco/harness/metrics.hpp"
#include "fraceco/models.hpp"
#include "fraceco/serialize.hpp"
#include "fraceco/types.hpp"

namespace fraceco {

enum class ModelKind { two_species, three_species };

inline const char* to_string(ModelKind m) {
  return m == ModelKind::two_species ? "two_species" : "three_species";
}

struct OutputRequests {
  bool timeseries = true;
  bool phase_portrait = true;
  bool stability_report = true;
  bool metrics = true;
};

/// Everything needed to reproduce one simulation run.
struct ScenarioConfig {
  std::string name = "scenario";
  ModelKind model = ModelKind::two_species;
  std::variant<Params2, Params3> params;
  FracOrder alpha{1.0};
  std::vector<double> initial_state;
  TimeGrid grid{0.0, 0.01, 1};
  OutputRequests outputs;
  double settling_band = kDefaultSettlingBand;
  std::size_t memory_window = 0;

  std::size_t dim() const {
    return model == ModelKind::two_species ? 2 : 3;
  }

  void validate() const {
    const bool p2 = std::holds_alternative<Params2>(params);
    if (p2 != (model == ModelKind::two_species)) {
      throw std::invalid_argument("ScenarioConfig: params do not match model");
    }
    std::visit([](const auto& p) { p.validate(); }, params);
    if (initial_state.size() != dim()) {
      throw std::invalid_argument(
          "ScenarioConfig: initial_state dimension does not match model");
    }
    for (double v : initial_state) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(
            "ScenarioConfig: initial densities must be finite and >= 0");
      }
    }
    if (!(settling_band > 0.0)) {
      throw std::invalid_argument("ScenarioConfig: settling_band must be > 0");
    }
  }
};

inline ScenarioConfig scenario_from_json(const Json& j) {
  ScenarioConfig cfg;
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();

  const std::string model = j.at("model").get<std::string>();
  if (model == "two_species") {
    cfg.model = ModelKind::two_species;
  } else if (model == "three_species") {
    cfg.model = ModelKind::three_species;
  } else {
    throw std::invalid_argument("unknown model '" + model + "'");
  }

  const bool two = cfg.model == ModelKind::two_species;
  if (j.contains("params")) {
    if (two) cfg.params = params2_from_json(j.at("params"));
    else cfg.params = params3_from_json(j.at("params"));
  } else if (j.contains("dimensional_params")) {
    if (two) cfg.params = nondim2(dim_params2_from_json(j.at("dimensional_params"))).params;
    else cfg.params = nondim3(dim_params3_from_json(j.at("dimensional_params"))).params;
  } else {
    throw std::invalid_argument("config needs 'params' or 'dimensional_params'");
  }

  cfg.alpha = FracOrder(detail::get_number(j, "alpha"));
  cfg.initial_state = j.at("initial_state").get<std::vector<double>>();

  const Json& g = j.at("grid");
  const double t0 = detail::get_number_or(g, "t0", 0.0);
  const double h = detail::get_number(g, "h");
  if (g.contains("n_steps")) {
    cfg.grid = TimeGrid(t0, h, g.at("n_steps").get<std::size_t>());
  } else {
    cfg.grid = TimeGrid::spanning(t0, detail::get_number(g, "t_end"), h);
  }

  if (j.contains("outputs")) {
    cfg.outputs = OutputRequests{false, false, false, false};
    for (const auto& o : j.at("outputs")) {
      const std::string s = o.get<std::string>();
      if (s == "timeseries") cfg.outputs.timeseries = true;
      else if (s == "phase_portrait") cfg.outputs.phase_portrait = true;
      else if (s == "stability_report") cfg.outputs.stability_report = true;
      else if (s == "metrics") cfg.outputs.metrics = true;
      else throw std::invalid_argument("unknown output '" + s + "'");
    }
  }
  cfg.settling_band = detail::get_number_or(j, "settling_band", kDefaultSettlingBand);
  if (j.contains("memory_window")) {
    cfg.memory_window = j.at("memory_window").get<std::size_t>();
  }
  cfg.validate();
  return cfg;
}

inline Json to_json(const ScenarioConfig& cfg) {
  Json outputs = Json::array();
  if (cfg.outputs.timeseries) outputs.push_back("timeseries");
  if (cfg.outputs.phase_portrait) outputs.push_back("phase_portrait");
  if (cfg.outputs.stability_report) outputs.push_back("stability_report");
  if (cfg.outputs.metrics) outputs.push_back("metrics");
  return Json{
      {"name", cfg.name},
      {"model", to_string(cfg.model)},
      {"params", std::visit([](const auto& p) { return to_json(p); }, cfg.params)},
      {"alpha", cfg.alpha.value()},
      {"initial_state", cfg.initial_state},
      {"grid", Json{{"t0", cfg.grid.t0()},
                    {"h", cfg.grid.h()},
                    {"n_steps", cfg.grid.n_steps()}}},
      {"outputs", outputs},
      {"settling_band", cfg.settling_band},
      {"memory_window", cfg.memory_window}};
}

inline ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path + "'");
  }
  try {
    return scenario_from_json(Json::parse(in));
  } catch (const std::exception& e) {
    throw std::runtime_error("config '" + path + "': " + e.what());
  }
}

}  // namespace fraceco
