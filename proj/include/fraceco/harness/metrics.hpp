#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fraceco/types.hpp"

namespace fraceco {

inline constexpr double kDefaultSettlingBand = 0.02;
inline constexpr double kSettlingAbsFloor = 1e-4;
inline constexpr double kExtinctionFloor = 1e-6;

struct RunMetrics {
  /// First grid time after which every component stays inside the band
  /// around the target for the rest of the horizon.
  std::optional<double> settling_time;
  /// Per component max - min over [t0 + (t_end - t0)/2, t_end].
  std::vector<double> late_amplitude;
  /// Per component minimum over the whole run.
  std::vector<double> min_value;
  /// Some component fell below kExtinctionFloor.
  bool extinction_flag = false;
  /// Equilibrium the settling time refers to.
  std::vector<double> target;

  double max_late_amplitude() const {
    double m = 0.0;
    for (double a : late_amplitude) m = std::max(m, a);
    return m;
  }
};

/// Index of the first grid point from which the trajectory stays within
/// max(band * |target_c|, abs_floor) of the target in every component, or
/// empty when the final point is outside the band.
inline std::optional<std::size_t> settling_index(
    const Trajectory& traj, std::span<const double> target,
    double band = kDefaultSettlingBand, double abs_floor = kSettlingAbsFloor) {
  const std::size_t d = traj.dim();
  if (target.size() != d) {
    throw std::invalid_argument("settling_index: target dimension mismatch");
  }
  auto inside = [&](std::size_t i) {
    for (std::size_t c = 0; c < d; ++c) {
      const double tol = std::max(band * std::abs(target[c]), abs_floor);
      if (!(std::abs(traj(i, c) - target[c]) <= tol)) return false;
    }
    return true;
  };
  std::size_t i = traj.rows();
  while (i > 0 && inside(i - 1)) --i;
  if (i == traj.rows()) return std::nullopt;
  return i;
}

inline RunMetrics compute_metrics(const Trajectory& traj,
                                  std::span<const double> target,
                                  double band = kDefaultSettlingBand) {
  RunMetrics m;
  const std::size_t d = traj.dim();
  const TimeGrid& g = traj.grid();
  m.target.assign(target.begin(), target.end());
  if (!target.empty()) {
    if (const auto idx = settling_index(traj, target, band)) {
      m.settling_time = g.t(*idx);
    }
  }

  const double mid = g.t0() + 0.5 * (g.t_end() - g.t0());
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  m.min_value.assign(d, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < traj.rows(); ++i) {
    const bool late = g.t(i) >= mid;
    for (std::size_t c = 0; c < d; ++c) {
      const double v = traj(i, c);
      m.min_value[c] = std::min(m.min_value[c], v);
      if (late) {
        lo[c] = std::min(lo[c], v);
        hi[c] = std::max(hi[c], v);
      }
    }
  }
  m.late_amplitude.resize(d);
  for (std::size_t c = 0; c < d; ++c) {
    m.late_amplitude[c] = hi[c] - lo[c];
    if (m.min_value[c] < kExtinctionFloor) m.extinction_flag = true;
  }
  return m;
}

}  // namespace fraceco
