#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fraceco/models.hpp"
#include "fraceco/polynomial.hpp"

namespace fraceco {

enum class EquilibriumLabel { E1, E2, E3, E4, E5 };

inline const char* to_string(EquilibriumLabel l) {
  switch (l) {
    case EquilibriumLabel::E1: return "E1";
    case EquilibriumLabel::E2: return "E2";
    case EquilibriumLabel::E3: return "E3";
    case EquilibriumLabel::E4: return "E4";
    case EquilibriumLabel::E5: return "E5";
  }
  return "?";
}

struct EquilibriumPoint {
  EquilibriumLabel label;
  std::vector<double> coords;
  bool feasible = false;
  /// Derived scalars (omega, gamma, gamma1, omega1) where defined.
  std::map<std::string, double> aux;
  std::string diagnostic;
};

namespace detail {

// Coordinates within this distance below zero are rounding noise.
inline constexpr double kFeasibilitySlack = 1e-12;

inline EquilibriumPoint make_point(EquilibriumLabel label,
                                   std::vector<double> coords,
                                   std::map<std::string, double> aux = {},
                                   std::string diagnostic = {}) {
  bool feasible = true;
  for (double& c : coords) {
    if (!std::isfinite(c)) {
      feasible = false;
    } else if (c < 0.0) {
      if (c >= -kFeasibilitySlack) {
        c = 0.0;
      } else {
        feasible = false;
      }
    }
  }
  if (!feasible && diagnostic.empty()) {
    diagnostic = "negative or non-finite coordinate";
  }
  return {label, std::move(coords), feasible, std::move(aux),
          std::move(diagnostic)};
}

}  // namespace detail

/// Stationary points of the two-species system: extinction, predator-free,
/// and coexistence (omega, rho(1 - omega) - eps1) with
/// omega = (1 + eps2) / (psi - phi (1 + eps2)).
inline std::vector<EquilibriumPoint> equilibria2(const Params2& p) {
  p.validate();
  std::vector<EquilibriumPoint> out;
  out.push_back(detail::make_point(EquilibriumLabel::E1, {0.0, 0.0}));
  out.push_back(
      detail::make_point(EquilibriumLabel::E2, {1.0 - p.eps1 / p.rho, 0.0}));

  const double m = 1.0 + p.eps2;
  const double denom = p.psi - p.phi * m;
  if (denom <= 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EquilibriumPoint e3{EquilibriumLabel::E3, {nan, nan}, false, {},
                        "psi - phi(1 + eps2) <= 0: no positive coexistence"};
    out.push_back(std::move(e3));
  } else {
    const double omega = m / denom;
    out.push_back(detail::make_point(
        EquilibriumLabel::E3, {omega, p.rho * (1.0 - omega) - p.eps1},
        {{"omega", omega}}));
  }
  return out;
}

/// Self-consistency polynomial for the three-species coexistence prey
/// density w, cleared of denominators:
///   rho w^3 - (rho - eps1 + eta) w^2 + c (phi phi1 w^2 + (phi + phi1) w + 1)
/// with c = eps2 eps3 / (beta psi). Coefficients from w^3 down to w^0.
inline std::array<double, 4> e5_cubic(const Params3& p) {
  const double c = p.eps2 * p.eps3 / (p.beta * p.psi);
  return {p.rho, c * p.phi * p.phi1 - (p.rho - p.eps1 + p.eta),
          c * (p.phi + p.phi1), c};
}

/// Fixed-point residual w - (1 - (gamma(w) gamma1(w) + eps1 - eta) / rho).
inline double e5_fixed_point_residual(const Params3& p, double w) {
  const double gamma = p.eps3 * (1.0 + p.phi1 * w) / (p.beta * w);
  const double gamma1 = p.eps2 * (1.0 + p.phi * w) / (p.psi * w);
  return w - (1.0 - (gamma * gamma1 + p.eps1 - p.eta) / p.rho);
}

/// Positive real roots of the coexistence cubic, ascending.
inline std::vector<double> solve_e5(const Params3& p) {
  p.validate();
  const auto k = e5_cubic(p);
  const CharPoly monic{{k[1] / k[0], k[2] / k[0], k[3] / k[0]}};
  const auto roots = eigen(monic);

  auto f = [&](double w) { return ((k[0] * w + k[1]) * w + k[2]) * w + k[3]; };
  auto df = [&](double w) { return (3.0 * k[0] * w + 2.0 * k[1]) * w + k[2]; };

  std::vector<double> out;
  for (const Complex& z : roots) {
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) continue;
    double w = z.real();
    for (int it = 0; it < 4; ++it) {
      const double d = df(w);
      if (d == 0.0) break;
      const double next = w - f(w) / d;
      if (!(std::abs(f(next)) < std::abs(f(w)))) break;
      w = next;
    }
    if (w > 1e-9) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
                        }),
            out.end());
  return out;
}

/// Stationary points of the three-species system. Every positive root of
/// the coexistence cubic contributes one E5 entry.
inline std::vector<EquilibriumPoint> equilibria3(const Params3& p) {
  p.validate();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<EquilibriumPoint> out;
  out.push_back(detail::make_point(EquilibriumLabel::E1, {0.0, 0.0, 0.0}));
  out.push_back(detail::make_point(EquilibriumLabel::E2,
                                   {1.0 - p.eps1 / p.rho, 0.0, 0.0}));

  // Prey with the first predator.
  {
    const double denom = p.psi - p.eps2 * p.phi;
    if (denom <= 0.0) {
      out.push_back({EquilibriumLabel::E3, {nan, nan, 0.0}, false, {},
                     "psi - eps2*phi <= 0: no positive partial coexistence"});
    } else {
      const double w = p.eps2 / denom;
      const double g = p.rho * (1.0 - w) - p.eps1;
      out.push_back(detail::make_point(EquilibriumLabel::E3, {w, g, 0.0},
                                       {{"omega", w}, {"gamma", g}}));
    }
  }
  // Prey with the second predator.
  {
    const double denom = p.eta * p.beta - p.phi1 * p.eps3;
    if (denom <= 0.0) {
      out.push_back({EquilibriumLabel::E4, {nan, 0.0, nan}, false, {},
                     "eta*beta - phi1*eps3 <= 0: no positive partial coexistence"});
    } else {
      const double w = p.eps3 / denom;
      const double g = p.rho * (1.0 - w) - p.eps1;
      out.push_back(detail::make_point(EquilibriumLabel::E4, {w, 0.0, g / p.eta},
                                       {{"omega", w}, {"gamma", g}}));
    }
  }
  for (double w : solve_e5(p)) {
    const double gamma = p.eps3 * (1.0 + p.phi1 * w) / (p.beta * w);
    const double gamma1 = p.eps2 * (1.0 + p.phi * w) / (p.psi * w);
    const double omega1 = 1.0 - (gamma * gamma1 + p.eps1 - p.eta) / p.rho;
    out.push_back(detail::make_point(
        EquilibriumLabel::E5, {w, gamma - p.eta, gamma1 - 1.0},
        {{"omega", w}, {"gamma", gamma}, {"gamma1", gamma1}, {"omega1", omega1}}));
  }
  return out;
}

}  // namespace fraceco
