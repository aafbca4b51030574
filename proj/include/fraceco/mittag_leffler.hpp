#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fraceco/gamma.hpp"

namespace fraceco {

/// Largest |x| accepted by the power-series evaluation. Beyond this the
/// alternating series for negative arguments loses all significant digits.
inline constexpr double kMittagLefflerMaxArg = 40.0;

struct MLArgs {
  double alpha;
  double beta;
  double x;
};

namespace detail {

// k-th series term x^k / Gamma(k*alpha + beta).
inline double ml_term(double x, std::size_t k, double alpha, double beta) {
  const double arg = static_cast<double>(k) * alpha + beta;
  if (k == 0) return reciprocal_gamma(beta);
  if (x == 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  const double log_pow = kd * std::log(std::abs(x));
  if (arg < 170.0 && log_pow < 700.0) {
    return std::pow(x, kd) / gamma_fn(arg);
  }
  const double sign = (x < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return sign * std::exp(log_pow - std::lgamma(arg));
}

}  // namespace detail

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(x) for real x.
///
/// Sums the defining power series with Neumaier compensation and stops once
/// the terms are past their peak and below 1e-15 * (1 + |partial sum|).
/// Restricted to |x| <= 40.
inline double mittag_leffler(const MLArgs& args) {
  const auto [alpha, beta, x] = args;
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("mittag_leffler: alpha must be > 0");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("mittag_leffler: beta must be >= 0");
  }
  if (!std::isfinite(x) || std::abs(x) > kMittagLefflerMaxArg) {
    throw std::domain_error("mittag_leffler: |x| must be <= 40, got " +
                            std::to_string(x));
  }

  constexpr double rel_tol = 1e-15;
  constexpr std::size_t max_terms = 200000;

  double sum = 0.0;
  double comp = 0.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double term = detail::ml_term(x, k, alpha, beta);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    if (!std::isfinite(sum)) return sum;

    const double mag = std::abs(term);
    const bool decreasing = mag <= prev_mag;
    if (k > 0 && decreasing && mag < rel_tol * (1.0 + std::abs(sum + comp))) {
      return sum + comp;
    }
    prev_mag = mag;
  }
  throw std::runtime_error("mittag_leffler: series did not converge");
}

inline double mittag_leffler(double alpha, double beta, double x) {
  return mittag_leffler(MLArgs{alpha, beta, x});
}

/// One-parameter form E_alpha(x) = E_{alpha,1}(x).
inline double mittag_leffler(double alpha, double x) {
  return mittag_leffler(MLArgs{alpha, 1.0, x});
}

}  // namespace fraceco
