#pragma once

// Scenario configs shared by the harness tests and the acceptance binary.

#include <random>

#include "brute_force.hpp"
#include "fraceco/fraceco.hpp"
#include "oracles.hpp"

namespace oracle {

inline fraceco::ScenarioConfig two_species_config(const std::string& name,
                                                  const fraceco::Params2& p,
                                                  double alpha,
                                                  std::vector<double> init,
                                                  double horizon, double h) {
  fraceco::ScenarioConfig c;
  c.name = name;
  c.model = fraceco::ModelKind::two_species;
  c.params = p;
  c.alpha = fraceco::FracOrder(alpha);
  c.initial_state = std::move(init);
  c.grid = fraceco::TimeGrid::spanning(0.0, horizon, h);
  return c;
}

inline fraceco::ScenarioConfig damped_config(double alpha, double horizon = 100,
                                             double h = 0.01) {
  return two_species_config("damped", damped_set(), alpha, {0.2, 0.25}, horizon, h);
}

inline fraceco::ScenarioConfig harvest_config(double e1, double e2,
                                              double alpha = 1.0,
                                              double horizon = 200,
                                              double h = 0.01) {
  return two_species_config("harvest", harvest_set(e1, e2), alpha, {0.2, 0.1},
                            horizon, h);
}

inline fraceco::ScenarioConfig rescue_config(double alpha) {
  return two_species_config("rescue", rescue_set(), alpha, {0.2, 0.15},
                            kRescueHorizon, kRescueStep);
}

inline fraceco::ScenarioConfig mutualism_config(double alpha = 0.96,
                                                double horizon = 100,
                                                double h = 0.01) {
  fraceco::ScenarioConfig c;
  c.name = "mutualism";
  c.model = fraceco::ModelKind::three_species;
  c.params = mutualism_set();
  c.alpha = fraceco::FracOrder(alpha);
  c.initial_state = {0.2, 0.3, 0.3};
  c.grid = fraceco::TimeGrid::spanning(0.0, horizon, h);
  return c;
}

struct PositivityResult {
  int runs = 0;
  double worst = 0.0;  // most negative component seen
};

/// Random valid sets for both systems, positive starts, horizon 50.
inline PositivityResult positivity_sweep(int per_system, std::uint64_t seed,
                                         double h = 0.02) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.01, 1.0), a(0.5, 1.0);
  PositivityResult out;
  auto track = [&](const fraceco::Trajectory& t) {
    ++out.runs;
    for (double v : t.data()) out.worst = std::min(out.worst, v);
  };
  const auto grid = fraceco::TimeGrid::spanning(0.0, 50.0, h);
  for (int i = 0; i < per_system; ++i) {
    const auto p = random_params2(rng);
    const fraceco::FracOrder al(a(rng));
    track(fraceco::solve_caputo_ivp(fraceco::System2{p}, al,
                                    std::vector<double>{u(rng), u(rng)}, grid));
  }
  for (int i = 0; i < per_system; ++i) {
    const auto p = random_params3(rng);
    const fraceco::FracOrder al(a(rng));
    track(fraceco::solve_caputo_ivp(fraceco::System3{p}, al,
                                    std::vector<double>{u(rng), u(rng), u(rng)},
                                    grid));
  }
  return out;
}

}  // namespace oracle
