#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraceco/types.hpp"

namespace fraceco {

using State2 = std::array<double, 2>;
using State3 = std::array<double, 3>;

/// Raised when a saturating denominator 1 + phi*x vanishes.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be > 0");
  }
}

inline void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be >= 0");
  }
}

inline double saturation(double phi, double x) {
  const double d = 1.0 + phi * x;
  if (std::abs(d) < 1e-14) {
    throw SingularityError("saturation denominator 1 + phi*x vanishes at x = " +
                           std::to_string(x));
  }
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dimensional parameter sets

/// Prey X with logistic growth, one predator Y with a saturating numerical
/// response, constant-effort harvesting h1*X and h2*Y.
struct DimParams2 {
  double r;      // prey growth rate
  double K;      // carrying capacity
  double a;      // feeding rate
  double sigma;  // saturation factor
  double k;      // predator death rate
  double h1 = 0.0;
  double h2 = 0.0;

  void validate() const {
    detail::require_positive(r, "r");
    detail::require_positive(K, "K");
    detail::require_positive(a, "a");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(k, "k");
    detail::require_nonnegative(h1, "h1");
    detail::require_nonnegative(h2, "h2");
  }
};

/// Prey X and two mutualistic predators Y, Z.
struct DimParams3 {
  double r;
  double K;
  double a;
  double b;
  double xi;  // mutualistic feeding rate
  double sigma1;
  double sigma2;
  double k1;
  double k2;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;

  void validate() const {
    detail::require_positive(r, "r");
    detail::require_positive(K, "K");
    detail::require_positive(a, "a");
    detail::require_positive(b, "b");
    detail::require_positive(xi, "xi");
    detail::require_positive(sigma1, "sigma1");
    detail::require_positive(sigma2, "sigma2");
    detail::require_positive(k1, "k1");
    detail::require_positive(k2, "k2");
    detail::require_nonnegative(h1, "h1");
    detail::require_nonnegative(h2, "h2");
    detail::require_nonnegative(h3, "h3");
  }
};

// ---------------------------------------------------------------------------
// Dimensionless parameter sets

struct Params2 {
  double rho;
  double psi;
  double phi;
  double eps1 = 0.0;
  double eps2 = 0.0;

  void validate() const {
    detail::require_positive(rho, "rho");
    detail::require_positive(psi, "psi");
    detail::require_positive(phi, "phi");
    detail::require_nonnegative(eps1, "eps1");
    detail::require_nonnegative(eps2, "eps2");
  }

  friend bool operator==(const Params2&, const Params2&) = default;
};

/// Dimensionless three-species parameters.
///
/// Sets derived from DimParams3 always have eps2 >= 1 (predator mortality
/// plus harvest, scaled by k1). Direct construction only requires
/// eps2 >= 0, so published sets with eps2 < 1 remain representable.
struct Params3 {
  double rho;
  double psi;
  double beta;
  double eta;
  double phi;
  double phi1;
  double eps1 = 0.0;
  double eps2 = 1.0;
  double eps3 = 1.0;

  void validate() const {
    detail::require_positive(rho, "rho");
    detail::require_positive(psi, "psi");
    detail::require_positive(beta, "beta");
    detail::require_positive(eta, "eta");
    detail::require_positive(phi, "phi");
    detail::require_positive(phi1, "phi1");
    detail::require_nonnegative(eps1, "eps1");
    detail::require_nonnegative(eps2, "eps2");
    detail::require_positive(eps3, "eps3");
  }

  /// True when eps2 >= 1, i.e. the set has a dimensional preimage.
  bool has_dimensional_preimage() const { return eps2 >= 1.0; }

  friend bool operator==(const Params3&, const Params3&) = default;
};

// ---------------------------------------------------------------------------
// Rescalings

/// Dimensional quantity = scale * dimensionless quantity, per component,
/// and dimensional time = time_scale * dimensionless time.
template <std::size_t N>
struct Scales {
  std::array<double, N> state;
  double time;

  std::array<double, N> to_dimensional(const std::array<double, N>& s) const {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = state[i] * s[i];
    return out;
  }
  std::array<double, N> to_dimensionless(const std::array<double, N>& s) const {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = s[i] / state[i];
    return out;
  }
};

struct Nondim2 {
  Params2 params;
  Scales<2> scales;
};

struct Nondim3 {
  Params3 params;
  Scales<3> scales;
};

/// X = K x, Y = (k/a) y, T = t / k.
inline Nondim2 nondim2(const DimParams2& p) {
  p.validate();
  Nondim2 out{};
  out.params = Params2{.rho = p.r / p.k,
                       .psi = p.a * p.K / p.k,
                       .phi = p.K * p.sigma,
                       .eps1 = p.h1 / p.k,
                       .eps2 = p.h2 / p.k};
  out.scales = Scales<2>{{p.K, p.k / p.a}, 1.0 / p.k};
  return out;
}

/// X = K x, Y = (k1/a) y, Z = (a/xi) z, T = t / k1.
inline Nondim3 nondim3(const DimParams3& p) {
  p.validate();
  Nondim3 out{};
  out.params = Params3{.rho = p.r / p.k1,
                       .psi = p.a * p.K / p.k1,
                       .beta = p.b * p.K / p.k1,
                       .eta = p.a * p.b / (p.xi * p.k1),
                       .phi = p.sigma1 * p.K,
                       .phi1 = p.sigma2 * p.K,
                       .eps1 = p.h1 / p.k1,
                       .eps2 = 1.0 + p.h2 / p.k1,
                       .eps3 = (p.k2 + p.h3) / p.k1};
  out.scales = Scales<3>{{p.K, p.k1 / p.a, p.a / p.xi}, 1.0 / p.k1};
  return out;
}

/// Maps a dimensionless trajectory back to dimensional densities. The time
/// grid is rescaled by the time scale.
template <std::size_t N>
Trajectory redimensionalize(const Trajectory& traj, const Scales<N>& scales) {
  if (traj.dim() != N) {
    throw std::invalid_argument("redimensionalize: dimension mismatch");
  }
  const TimeGrid& g = traj.grid();
  Trajectory out(TimeGrid(g.t0() * scales.time, g.h() * scales.time,
                          g.n_steps()),
                 N);
  for (std::size_t i = 0; i < traj.rows(); ++i) {
    for (std::size_t c = 0; c < N; ++c) {
      out(i, c) = scales.state[c] * traj(i, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Right-hand sides

inline State2 rhs2(const Params2& p, const State2& s) {
  const auto [x, y] = s;
  const double d = detail::saturation(p.phi, x);
  return {p.rho * x * (1.0 - x) - x * y - p.eps1 * x,
          p.psi * x * y / d - y - p.eps2 * y};
}

inline State3 rhs3(const Params3& p, const State3& s) {
  const auto [x, y, z] = s;
  const double d1 = detail::saturation(p.phi, x);
  const double d2 = detail::saturation(p.phi1, x);
  return {p.rho * x * (1.0 - x) - x * (y + p.eta * z + y * z) - p.eps1 * x,
          p.psi * x * y * (1.0 + z) / d1 - p.eps2 * y,
          p.beta * x * z * (p.eta + y) / d2 - p.eps3 * z};
}

/// Solver adapter for the two-species system.
struct System2 {
  Params2 params;
  void operator()(std::span<const double> y, std::span<double> dy) const {
    const State2 r = rhs2(params, {y[0], y[1]});
    dy[0] = r[0];
    dy[1] = r[1];
  }
};

/// Solver adapter for the three-species system.
struct System3 {
  Params3 params;
  void operator()(std::span<const double> y, std::span<double> dy) const {
    const State3 r = rhs3(params, {y[0], y[1], y[2]});
    dy[0] = r[0];
    dy[1] = r[1];
    dy[2] = r[2];
  }
};

// ---------------------------------------------------------------------------
// Lipschitz constants on the box max_i |x_i| <= M

struct LipschitzBound {
  double M;
  std::vector<double> components;
  double L;
};

inline LipschitzBound lipschitz_bound2(const Params2& p, double M) {
  if (!(M > 0.0)) {
    throw std::invalid_argument("lipschitz_bound2: M must be > 0");
  }
  const double L1 = p.rho + p.eps1 + (p.rho + 1.0) * M;
  const double L2 = 1.0 + p.eps2 + p.psi * (1.0 + p.phi * M) * M;
  return {M, {L1, L2}, std::max(L1, L2)};
}

inline LipschitzBound lipschitz_bound3(const Params3& p, double M) {
  if (!(M > 0.0)) {
    throw std::invalid_argument("lipschitz_bound3: M must be > 0");
  }
  const double L1 = p.rho + p.eps1 + (p.rho + p.eta) * M + M * M;
  const double L2 =
      1.0 + p.eps2 + p.psi * (1.0 + (1.0 + p.phi) * M + p.phi * M * M) * M;
  const double L3 =
      p.eps3 +
      p.beta * (1.0 + p.eta + p.eta * p.phi1 * M + p.phi1 * M * M) * M;
  return {M, {L1, L2, L3}, std::max({L1, L2, L3})};
}

}  // namespace fraceco
