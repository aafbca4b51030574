#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraceco/gamma.hpp"
#include "fraceco/types.hpp"

namespace fraceco {

/// Autonomous vector field: writes f(y) into dy. Both spans have the
/// system dimension.
template <typename F>
concept VectorField = requires(F f, std::span<const double> y,
                               std::span<double> dy) {
  { f(y, dy) };
};

/// Raised when the integration produces a non-finite state.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t step, double time)
      : std::runtime_error(what), step_(step), time_(time) {}
  std::size_t step() const { return step_; }
  double time() const { return time_; }

 private:
  std::size_t step_;
  double time_;
};

struct SolverOptions {
  /// Number of most recent steps kept in the memory sums; 0 keeps the full
  /// history. With a window the lower terminal of the derivative moves to
  /// the oldest kept step, whose state replaces y0 (short memory).
  std::size_t memory_window = 0;
};

/// Product-integration weights of the fractional Adams-Bashforth-Moulton
/// scheme on a uniform grid, precomputed up to n_steps.
class AbmWeights {
 public:
  AbmWeights(double alpha, std::size_t n_steps)
      : alpha_(alpha), pred_(n_steps + 1), corr_(n_steps + 1) {
    const double ap1 = alpha + 1.0;
    for (std::size_t k = 0; k <= n_steps; ++k) {
      const double kd = static_cast<double>(k);
      pred_[k] = std::pow(kd + 1.0, alpha) - std::pow(kd, alpha);
      corr_[k] = std::pow(kd + 2.0, ap1) - 2.0 * std::pow(kd + 1.0, ap1) +
                 std::pow(kd, ap1);
    }
  }

  /// b_k = (k+1)^a - k^a, weight of f_{n-k} in the predictor for y_{n+1}.
  double predictor(std::size_t k) const { return pred_[k]; }

  /// Weight of f_j (1 <= j <= n) in the corrector for y_{n+1}; k = n - j.
  double corrector(std::size_t k) const { return corr_[k]; }

  /// Weight of f_0 in the corrector for y_{n+1}.
  double corrector_start(std::size_t n) const {
    const double nd = static_cast<double>(n);
    return std::pow(nd, alpha_ + 1.0) -
           (nd - alpha_) * std::pow(nd + 1.0, alpha_);
  }

 private:
  double alpha_;
  std::vector<double> pred_;
  std::vector<double> corr_;
};

/// Solves the Caputo initial value problem D^alpha y = f(y), y(t0) = y0 on a
/// uniform grid with the fractional Adams-Bashforth-Moulton
/// predictor-corrector (PECE, one correction).
///
/// Every step convolves the full derivative history, so the cost is
/// O(n_steps^2 * dim). For alpha = 1 the scheme is the trapezoidal
/// corrector with an explicit predictor, second order in h.
template <VectorField F>
Trajectory solve_caputo_ivp(F&& rhs, FracOrder order,
                            std::span<const double> y0, const TimeGrid& grid,
                            const SolverOptions& options = {}) {
  const std::size_t dim = y0.size();
  if (dim == 0) {
    throw std::invalid_argument("solve_caputo_ivp: empty initial state");
  }
  for (double v : y0) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("solve_caputo_ivp: non-finite initial state");
    }
  }

  const std::size_t n_steps = grid.n_steps();
  const double alpha = order.value();
  const double h_pow = std::pow(grid.h(), alpha);
  const double pred_scale = h_pow / gamma_fn(alpha + 1.0);
  const double corr_scale = h_pow / gamma_fn(alpha + 2.0);
  const AbmWeights weights(alpha, n_steps);

  Trajectory traj(grid, dim);
  std::copy(y0.begin(), y0.end(), traj.row(0).begin());

  // f_j for j = 0..n, row-major.
  std::vector<double> f_hist((n_steps + 1) * dim);
  auto f_row = [&](std::size_t j) {
    return std::span<double>(f_hist.data() + j * dim, dim);
  };

  auto check_finite = [&](std::span<const double> v, std::size_t step,
                          const char* what) {
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw SolverError(std::string("solve_caputo_ivp: non-finite ") + what +
                              " at step " + std::to_string(step) + ", t = " +
                              std::to_string(grid.t(step)),
                          step, grid.t(step));
      }
    }
  };

  rhs(std::span<const double>(y0), f_row(0));
  check_finite(f_row(0), 0, "vector field");

  std::vector<double> pred_sum(dim);
  std::vector<double> corr_sum(dim);
  std::vector<double> y_pred(dim);
  std::vector<double> f_pred(dim);

  for (std::size_t n = 0; n < n_steps; ++n) {
    // History indices j in [first, n] contribute to step n + 1.
    std::size_t first = 0;
    if (options.memory_window > 0 && n + 1 > options.memory_window) {
      first = n + 1 - options.memory_window;
    }

    std::fill(pred_sum.begin(), pred_sum.end(), 0.0);
    std::fill(corr_sum.begin(), corr_sum.end(), 0.0);
    const auto base = traj.row(first);
    for (std::size_t j = first; j <= n; ++j) {
      const double* fj = f_hist.data() + j * dim;
      const double bp = weights.predictor(n - j);
      const double bc = j == first ? weights.corrector_start(n - first)
                                   : weights.corrector(n - j);
      for (std::size_t c = 0; c < dim; ++c) {
        pred_sum[c] += bp * fj[c];
        corr_sum[c] += bc * fj[c];
      }
    }

    for (std::size_t c = 0; c < dim; ++c) {
      y_pred[c] = base[c] + pred_scale * pred_sum[c];
    }
    check_finite(y_pred, n + 1, "predicted state");
    rhs(std::span<const double>(y_pred), std::span<double>(f_pred));
    check_finite(f_pred, n + 1, "vector field");

    auto y_next = traj.row(n + 1);
    for (std::size_t c = 0; c < dim; ++c) {
      y_next[c] = base[c] + corr_scale * (f_pred[c] + corr_sum[c]);
    }
    check_finite(y_next, n + 1, "state");
    rhs(std::span<const double>(y_next.data(), dim), f_row(n + 1));
    check_finite(f_row(n + 1), n + 1, "vector field");
  }
  return traj;
}

}  // namespace fraceco
