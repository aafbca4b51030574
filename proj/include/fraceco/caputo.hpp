#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "fraceco/gamma.hpp"
#include "fraceco/types.hpp"

namespace fraceco {

/// Caputo derivative of sampled data by the L1 scheme.
///
/// The first differences of f are convolved with the exact cell integrals
/// of the kernel (t - s)^(-alpha) / Gamma(1 - alpha):
///
///   D f(t_n) ~ h^(-alpha) / Gamma(2 - alpha)
///              * sum_{j=0}^{n-1} w_j (f_{n-j} - f_{n-j-1}),
///   w_j = (j + 1)^(1 - alpha) - j^(1 - alpha).
///
/// Order 1 degenerates to the backward difference. The value at index 0 is
/// 0. Accuracy is O(h^(2 - alpha)) for smooth f.
inline std::vector<double> caputo_derivative_of_samples(
    std::span<const double> samples, const TimeGrid& grid, FracOrder order) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument(
        "caputo_derivative_of_samples: sample count does not match grid");
  }
  if (samples.size() < 2) {
    throw std::invalid_argument(
        "caputo_derivative_of_samples: need at least 2 samples");
  }
  const std::size_t n = samples.size();
  const double alpha = order.value();
  const double h = grid.h();
  std::vector<double> out(n, 0.0);

  if (order.is_integer()) {
    for (std::size_t i = 1; i < n; ++i) {
      out[i] = (samples[i] - samples[i - 1]) / h;
    }
    return out;
  }

  const double one_m = 1.0 - alpha;
  std::vector<double> weights(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double jd = static_cast<double>(j);
    weights[j] = std::pow(jd + 1.0, one_m) - std::pow(jd, one_m);
  }
  std::vector<double> diffs(n - 1);
  for (std::size_t i = 1; i < n; ++i) diffs[i - 1] = samples[i] - samples[i - 1];

  const double scale = std::pow(h, -alpha) / gamma_fn(2.0 - alpha);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      acc += weights[j] * diffs[i - 1 - j];
    }
    out[i] = scale * acc;
  }
  return out;
}

}  // namespace fraceco
