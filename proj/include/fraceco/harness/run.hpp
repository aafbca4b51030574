#pragma once

#include <future>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "fraceco/equilibria.hpp"
#include "fraceco/harness/metrics.hpp"
#include "fraceco/harness/scenario.hpp"
#include "fraceco/solver.hpp"
#include "fraceco/stability.hpp"

namespace fraceco {

struct RunResult {
  Trajectory trajectory;
  RunMetrics metrics;
  std::vector<EquilibriumPoint> equilibria;
  /// Reports for the feasible equilibria at the configured order.
  std::vector<StabilityReport> reports;
  /// Index into equilibria of the metrics target, if any point is feasible.
  std::optional<std::size_t> target_index;
};

inline std::vector<EquilibriumPoint> equilibria_for(const ScenarioConfig& cfg) {
  return std::visit(
      [](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Params2>) {
          return equilibria2(p);
        } else {
          return equilibria3(p);
        }
      },
      cfg.params);
}

inline std::vector<StabilityReport> stability_reports_for(
    const ScenarioConfig& cfg, const std::vector<EquilibriumPoint>& eqs) {
  std::vector<StabilityReport> out;
  for (const auto& e : eqs) {
    if (!e.feasible) continue;
    std::visit([&](const auto& p) { out.push_back(stability_report(p, e, cfg.alpha)); },
               cfg.params);
  }
  return out;
}

inline Trajectory simulate(const ScenarioConfig& cfg) {
  const SolverOptions opts{.memory_window = cfg.memory_window};
  return std::visit(
      [&](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Params2>) {
          return solve_caputo_ivp(System2{p}, cfg.alpha, cfg.initial_state,
                                  cfg.grid, opts);
        } else {
          return solve_caputo_ivp(System3{p}, cfg.alpha, cfg.initial_state,
                                  cfg.grid, opts);
        }
      },
      cfg.params);
}

/// Integrates the scenario, measures it against the feasible equilibrium
/// nearest to the final state, and attaches stability reports.
inline RunResult run(const ScenarioConfig& cfg) {
  cfg.validate();
  Trajectory traj = simulate(cfg);
  auto eqs = equilibria_for(cfg);

  std::optional<std::size_t> target;
  double best = std::numeric_limits<double>::infinity();
  const auto last = traj.row(traj.rows() - 1);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (!eqs[i].feasible) continue;
    double d2 = 0.0;
    for (std::size_t c = 0; c < last.size(); ++c) {
      const double diff = last[c] - eqs[i].coords[c];
      d2 += diff * diff;
    }
    if (d2 < best) {
      best = d2;
      target = i;
    }
  }

  std::vector<double> target_coords;
  if (target) target_coords = eqs[*target].coords;
  RunMetrics metrics = compute_metrics(traj, target_coords, cfg.settling_band);
  auto reports = stability_reports_for(cfg, eqs);
  return RunResult{std::move(traj), std::move(metrics), std::move(eqs),
                   std::move(reports), target};
}

// ---------------------------------------------------------------------------
// Sweeps

/// Copy of cfg with one named quantity replaced. Accepts "alpha" and any
/// parameter field of the configured model.
inline ScenarioConfig with_axis_value(const ScenarioConfig& cfg,
                                      const std::string& axis, double value) {
  ScenarioConfig out = cfg;
  if (axis == "alpha") {
    out.alpha = FracOrder(value);
    return out;
  }
  bool found = false;
  std::visit(
      [&](auto& p) {
        using P = std::decay_t<decltype(p)>;
        auto set = [&](const char* name, double& field) {
          if (axis == name) {
            field = value;
            found = true;
          }
        };
        set("rho", p.rho);
        set("psi", p.psi);
        set("phi", p.phi);
        set("eps1", p.eps1);
        set("eps2", p.eps2);
        if constexpr (std::is_same_v<P, Params3>) {
          set("beta", p.beta);
          set("eta", p.eta);
          set("phi1", p.phi1);
          set("eps3", p.eps3);
        }
      },
      out.params);
  if (!found) {
    throw std::invalid_argument("sweep: unknown axis '" + axis + "' for model " +
                                to_string(cfg.model));
  }
  out.validate();
  return out;
}

struct SweepRow {
  double value;
  RunMetrics metrics;
};

/// One independent run per value, rows in the order of values.
inline std::vector<SweepRow> sweep(const ScenarioConfig& base,
                                   const std::string& axis,
                                   const std::vector<double>& values) {
  std::vector<ScenarioConfig> cfgs;
  cfgs.reserve(values.size());
  for (double v : values) cfgs.push_back(with_axis_value(base, axis, v));

  std::vector<std::future<RunMetrics>> jobs;
  jobs.reserve(cfgs.size());
  for (const auto& c : cfgs) {
    jobs.push_back(std::async(std::launch::async, [&c] {
      ScenarioConfig quiet = c;
      quiet.outputs = OutputRequests{false, false, false, true};
      return run(quiet).metrics;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rows.push_back({values[i], jobs[i].get()});
  }
  return rows;
}

}  // namespace fraceco
