#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fraceco/equilibria.hpp"
#include "fraceco/models.hpp"
#include "fraceco/polynomial.hpp"
#include "fraceco/types.hpp"

namespace fraceco {

// ---------------------------------------------------------------------------
// Jacobians

inline SmallMatrix jacobian2(const Params2& p, const State2& s) {
  const auto [x, y] = s;
  const double d = detail::saturation(p.phi, x);
  SmallMatrix j(2);
  j(0, 0) = p.rho * (1.0 - 2.0 * x) - y - p.eps1;
  j(0, 1) = -x;
  j(1, 0) = p.psi * y / (d * d);
  j(1, 1) = ((p.psi - p.phi) * x - 1.0) / d - p.eps2;
  return j;
}

inline SmallMatrix jacobian3(const Params3& p, const State3& s) {
  const auto [x, y, z] = s;
  const double d1 = detail::saturation(p.phi, x);
  const double d2 = detail::saturation(p.phi1, x);
  SmallMatrix j(3);
  j(0, 0) = p.rho * (1.0 - 2.0 * x) - (y * (1.0 + z) + p.eta * z + p.eps1);
  j(0, 1) = -x * (1.0 + z);
  j(0, 2) = -x * (p.eta + y);
  j(1, 0) = p.psi * y * (1.0 + z) / (d1 * d1);
  j(1, 1) = p.psi * x * (1.0 + z) / d1 - p.eps2;
  j(1, 2) = p.psi * x * y / d1;
  j(2, 0) = p.beta * z * (p.eta + y) / (d2 * d2);
  j(2, 1) = p.beta * x * z / d2;
  j(2, 2) = p.beta * x * (p.eta + y) / d2 - p.eps3;
  return j;
}

// ---------------------------------------------------------------------------
// Fractional stability tests

enum class Verdict { stable, unstable, marginal };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "?";
}

struct MatignonResult {
  Verdict verdict;
  /// min_i |arg(lambda_i)| - alpha*pi/2; zero eigenvalues contribute 0.
  double margin;
};

inline constexpr double kMarginalTolerance = 1e-12;

/// Linearized stability of D^alpha x = J x: asymptotically stable iff every
/// eigenvalue satisfies |arg(lambda)| > alpha*pi/2.
inline MatignonResult matignon(const std::vector<Complex>& eigs,
                               FracOrder order) {
  if (eigs.empty()) {
    throw std::invalid_argument("matignon: empty eigenvalue list");
  }
  const double cone = order.value() * std::numbers::pi / 2.0;
  double margin = std::numeric_limits<double>::infinity();
  for (const Complex& l : eigs) {
    const double m = (l == Complex(0.0, 0.0)) ? 0.0 : std::abs(std::arg(l)) - cone;
    margin = std::min(margin, m);
  }
  Verdict v = Verdict::stable;
  if (std::abs(margin) <= kMarginalTolerance) {
    v = Verdict::marginal;
  } else if (margin < 0.0) {
    v = Verdict::unstable;
  }
  return {v, margin};
}

/// Largest order keeping all eigenvalues inside the stability cone,
/// min(1, (2/pi) min_i |arg(lambda_i)|). Empty when some eigenvalue is real
/// and nonnegative, since then no admissible order stabilizes.
inline std::optional<double> critical_order(const std::vector<Complex>& eigs) {
  if (eigs.empty()) {
    throw std::invalid_argument("critical_order: empty eigenvalue list");
  }
  double min_arg = std::numeric_limits<double>::infinity();
  for (const Complex& l : eigs) {
    if (l.imag() == 0.0 && l.real() >= 0.0) return std::nullopt;
    min_arg = std::min(min_arg, std::abs(std::arg(l)));
  }
  return std::min(1.0, 2.0 / std::numbers::pi * min_arg);
}

/// Unclipped (2/pi) min |arg| over the roots of lambda^2 + b lambda + c.
inline double quadratic_order_bound(double b, double c) {
  const auto roots = eigen(CharPoly{{b, c}});
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : roots) m = std::min(m, std::abs(std::arg(r)));
  return 2.0 / std::numbers::pi * m;
}

enum class PlanarClass { saddle, stable, unstable, degenerate };

inline const char* to_string(PlanarClass c) {
  switch (c) {
    case PlanarClass::saddle: return "saddle";
    case PlanarClass::stable: return "asymptotically stable";
    case PlanarClass::unstable: return "unstable";
    case PlanarClass::degenerate: return "degenerate";
  }
  return "?";
}

/// Integer-order classification of a planar equilibrium from trace and
/// determinant of its Jacobian.
inline PlanarClass routh_hurwitz2(double trace, double det) {
  if (det < 0.0) return PlanarClass::saddle;
  if (det > 0.0 && trace < 0.0) return PlanarClass::stable;
  if (det > 0.0 && trace > 0.0) return PlanarClass::unstable;
  return PlanarClass::degenerate;
}

// ---------------------------------------------------------------------------
// Coefficient conditions for the fractional stability cone

struct FracRhClause {
  std::string name;
  bool applies = false;  // hypotheses hold
  double alpha_lo = 0.0;  // admitted orders (alpha_lo, alpha_hi]
  double alpha_hi = 0.0;
  std::string detail;
};

struct FracRhReport {
  std::size_t degree = 0;
  double discriminant = 0.0;
  bool necessary_ok = true;  // a_n > 0
  std::vector<FracRhClause> clauses;
  /// Set by the order-taking overload.
  std::optional<double> alpha;
  bool holds = false;

  /// True when some applicable clause admits the order and the necessary
  /// condition holds.
  bool satisfied_at(double alpha) const {
    if (!necessary_ok) return false;
    return std::any_of(clauses.begin(), clauses.end(), [&](const auto& c) {
      return c.applies && alpha > c.alpha_lo && alpha <= c.alpha_hi;
    });
  }

  bool satisfied() const {
    if (!necessary_ok) return false;
    return std::any_of(clauses.begin(), clauses.end(),
                       [](const auto& c) { return c.applies; });
  }
};

/// Coefficient-based sufficient conditions for the stability cone:
///  n = 1: a1 > 0, every order.
///  n = 2: a1 > 0, a2 > 0 (every order), or a1 < 0, 4 a2 > a1^2 with
///         alpha < (2/pi) |atan(sqrt(4 a2 - a1^2) / a1)|.
///  n = 3: a1 > 0, a3 > 0, a1 a2 > a3 (every order);
///         D < 0, a1 < 0, a2 < 0, a3 > 0 gives alpha > 2/3;
///         D > 0, a1 < 0, a2 < 0, a3 > 0 gives 0 < alpha < 1.
///  any n: a_n > 0 is necessary.
/// The n = 2 orders admitted on the arctangent branch are open at the top;
/// alpha_hi then records the supremum.
inline FracRhReport fractional_routh_hurwitz(const CharPoly& cp) {
  const std::size_t n = cp.degree();
  if (n < 1 || n > 3) {
    throw std::invalid_argument("fractional_routh_hurwitz: degree must be 1, 2 or 3");
  }
  FracRhReport r;
  r.degree = n;
  r.discriminant = cp.discriminant();
  r.necessary_ok = cp.a(n) > 0.0;

  if (n == 1) {
    r.clauses.push_back({"i: a1 > 0", cp.a(1) > 0.0, 0.0, 1.0, ""});
  } else if (n == 2) {
    const double a1 = cp.a(1), a2 = cp.a(2);
    r.clauses.push_back(
        {"ii: a1 > 0, a2 > 0", a1 > 0.0 && a2 > 0.0, 0.0, 1.0, ""});
    FracRhClause arc{"ii: a1 < 0, 4a2 > a1^2, arctangent bound", false, 0.0,
                      0.0, ""};
    if (a1 < 0.0 && 4.0 * a2 > a1 * a1) {
      const double bound = 2.0 / std::numbers::pi *
                           std::abs(std::atan(std::sqrt(4.0 * a2 - a1 * a1) / a1));
      arc.applies = true;
      // alpha < bound, strictly
      arc.alpha_hi = std::nextafter(std::min(bound, 1.0), 0.0);
      arc.detail = "alpha < " + std::to_string(bound);
    }
    r.clauses.push_back(arc);
  } else {
    const double a1 = cp.a(1), a2 = cp.a(2), a3 = cp.a(3);
    const double d = r.discriminant;
    r.clauses.push_back({"routh-hurwitz: a1 > 0, a3 > 0, a1 a2 > a3",
                         a1 > 0.0 && a3 > 0.0 && a1 * a2 > a3, 0.0, 1.0, ""});
    const bool signs = a1 < 0.0 && a2 < 0.0 && a3 > 0.0;
    r.clauses.push_back(
        {"iii: D < 0, a1 < 0, a2 < 0, a3 > 0", d < 0.0 && signs, 2.0 / 3.0, 1.0,
         "alpha > 2/3"});
    r.clauses.push_back({"iv: D > 0, a1 < 0, a2 < 0, a3 > 0", d > 0.0 && signs,
                         0.0, std::nextafter(1.0, 0.0), "0 < alpha < 1"});
  }
  return r;
}

inline FracRhReport fractional_routh_hurwitz(const CharPoly& cp, FracOrder order) {
  FracRhReport r = fractional_routh_hurwitz(cp);
  r.alpha = order.value();
  r.holds = r.satisfied_at(order.value());
  return r;
}

// ---------------------------------------------------------------------------
// Per-equilibrium reports

struct Condition {
  std::string name;
  double lhs;
  std::string relation;  // "<", ">", "<="
  double rhs;
  bool pass;
};

inline Condition make_condition(std::string name, double lhs,
                                std::string relation, double rhs) {
  bool pass = false;
  if (relation == "<") pass = lhs < rhs;
  else if (relation == ">") pass = lhs > rhs;
  else if (relation == "<=") pass = lhs <= rhs;
  else if (relation == ">=") pass = lhs >= rhs;
  else throw std::invalid_argument("make_condition: unknown relation " + relation);
  return {std::move(name), lhs, std::move(relation), rhs, pass};
}

struct StabilityReport {
  EquilibriumPoint equilibrium;
  double alpha;
  SmallMatrix jacobian{1};
  CharPoly char_poly;
  std::vector<Complex> eigenvalues;
  double matignon_margin;
  Verdict verdict;
  std::optional<double> critical_alpha;
  FracRhReport frac_rh;
  std::vector<Condition> conditions;
  std::vector<std::string> notes;

  bool all_conditions_pass() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.pass; });
  }
};

namespace detail {

inline StabilityReport assemble(const EquilibriumPoint& eq, FracOrder order,
                                SmallMatrix jac) {
  StabilityReport r;
  r.equilibrium = eq;
  r.alpha = order.value();
  r.jacobian = jac;
  r.char_poly = fraceco::char_poly(jac);
  r.eigenvalues = eigen(r.char_poly);
  const auto m = matignon(r.eigenvalues, order);
  r.matignon_margin = m.margin;
  r.verdict = m.verdict;
  r.critical_alpha = critical_order(r.eigenvalues);
  r.frac_rh = fractional_routh_hurwitz(r.char_poly, order);
  return r;
}

inline double aux_or_nan(const EquilibriumPoint& eq, const char* key) {
  const auto it = eq.aux.find(key);
  return it == eq.aux.end() ? std::numeric_limits<double>::quiet_NaN()
                            : it->second;
}

}  // namespace detail

/// Coexistence checklist quantities for the two-species system in closed
/// form: b = rho*omega + eps1 and c = psi*omega*gamma / (1 + phi*omega)^2,
/// with gamma = rho(1 - omega) - eps1.
struct CoexistenceClosedForm {
  double omega;
  double gamma;
  double b;
  double c;
  double order_bound;  // (2/pi) min |arg| of lambda^2 + b lambda + c
};

inline CoexistenceClosedForm coexistence_closed_form2(const Params2& p) {
  const double m = 1.0 + p.eps2;
  const double omega = m / (p.psi - p.phi * m);
  const double gamma = p.rho * (1.0 - omega) - p.eps1;
  const double s = 1.0 + p.phi * omega;
  const double b = p.rho * omega + p.eps1;
  const double c = p.psi * omega * gamma / (s * s);
  return {omega, gamma, b, c, quadratic_order_bound(b, c)};
}

inline StabilityReport stability_report(const Params2& p,
                                        const EquilibriumPoint& eq,
                                        FracOrder order) {
  if (eq.coords.size() != 2) {
    throw std::invalid_argument("stability_report: expected a 2-species point");
  }
  StabilityReport r = detail::assemble(
      eq, order, jacobian2(p, {eq.coords[0], eq.coords[1]}));
  const double a = order.value();

  switch (eq.label) {
    case EquilibriumLabel::E1:
      r.conditions.push_back(make_condition("rho < eps1", p.rho, "<", p.eps1));
      r.conditions.push_back(make_condition("alpha <= 1", a, "<=", 1.0));
      break;
    case EquilibriumLabel::E2:
      r.conditions.push_back(make_condition(
          "psi < (1 + eps2)(rho/(rho - eps1) + phi)", p.psi, "<",
          (1.0 + p.eps2) * (p.rho / (p.rho - p.eps1) + p.phi)));
      r.conditions.push_back(make_condition("alpha <= 1", a, "<=", 1.0));
      break;
    case EquilibriumLabel::E3: {
      const auto cf = coexistence_closed_form2(p);
      r.conditions.push_back(make_condition("omega < 1 - eps1/rho", cf.omega,
                                            "<", 1.0 - p.eps1 / p.rho));
      r.conditions.push_back(
          make_condition("b^2 - 4c < 0", cf.b * cf.b - 4.0 * cf.c, "<", 0.0));
      r.conditions.push_back(make_condition(
          "alpha < (2/pi)|arg(-b/2 + i sqrt(4c - b^2)/2)|", a, "<",
          cf.order_bound));
      const double s = 1.0 + p.phi * cf.omega;
      r.notes.push_back(
          "checklist uses b = rho*omega + eps1 = " + std::to_string(cf.b) +
          "; the exact Jacobian trace here is " +
          std::to_string(r.jacobian.trace()) + " (= -rho*omega)");
      r.notes.push_back(
          "4c = 4 psi omega gamma/(1 + phi omega)^2 = " +
          std::to_string(4.0 * cf.c) +
          "; with an unsquared denominator 4c would be " +
          std::to_string(4.0 * p.psi * cf.omega * cf.gamma / s) +
          " and the order bound " +
          std::to_string(quadratic_order_bound(
              cf.b, p.psi * cf.omega * cf.gamma / s)));
      break;
    }
    default:
      throw std::invalid_argument(
          "stability_report: two-species system has only E1..E3");
  }
  return r;
}

/// Coefficients of the closed-form E5 characteristic cubic
/// lambda^3 + a1 lambda^2 + a2 lambda + a3 written in terms of the
/// coexistence coordinates. Only a2 coincides with the exact Jacobian
/// invariant; a1 and a3 do not.
inline CharPoly e5_closed_form_char_poly(const Params3& p, const State3& s) {
  const auto [x, y, z] = s;
  const double d1 = 1.0 + p.phi * x;
  const double d2 = 1.0 + p.phi1 * x;
  const double a1 = -(y * (1.0 + z) + p.eta * z + p.rho);
  const double a2 =
      (p.eps3 * p.eps3 * p.psi * z + p.eps2 * p.eps2 * p.beta * y) /
          (p.beta * p.psi * x) -
      p.psi * p.beta * x * x * y * z / (d2 * d1);
  const double a3 =
      p.eps2 * p.eps3 * y * z +
      (p.rho * p.psi * p.beta * x * x * y * z +
       p.eps2 * p.eps3 * y * z * (2.0 + (p.phi + p.phi1) * x)) /
          (d1 * d2);
  return {{a1, a2, a3}};
}

inline StabilityReport stability_report(const Params3& p,
                                        const EquilibriumPoint& eq,
                                        FracOrder order) {
  if (eq.coords.size() != 3) {
    throw std::invalid_argument("stability_report: expected a 3-species point");
  }
  StabilityReport r = detail::assemble(
      eq, order, jacobian3(p, {eq.coords[0], eq.coords[1], eq.coords[2]}));
  const double a = order.value();
  const double pi = std::numbers::pi;

  switch (eq.label) {
    case EquilibriumLabel::E1:
      r.conditions.push_back(make_condition("rho < eps1", p.rho, "<", p.eps1));
      r.conditions.push_back(make_condition("alpha <= 1", a, "<=", 1.0));
      break;
    case EquilibriumLabel::E2: {
      const double g = p.rho - p.eps1;
      r.conditions.push_back(make_condition("eps1 < rho", p.eps1, "<", p.rho));
      r.conditions.push_back(
          make_condition("eps2 > psi(rho - eps1)/(rho + phi(rho - eps1))",
                         p.eps2, ">", p.psi * g / (p.rho + p.phi * g)));
      r.conditions.push_back(make_condition(
          "eps3 > beta eta(rho - eps1)/(rho + phi1(rho - eps1))", p.eps3, ">",
          p.beta * p.eta * g / (p.rho + p.phi1 * g)));
      r.conditions.push_back(make_condition("alpha <= 1", a, "<=", 1.0));
      break;
    }
    case EquilibriumLabel::E3: {
      const double w = detail::aux_or_nan(eq, "omega");
      const double g = detail::aux_or_nan(eq, "gamma");
      const double s = 1.0 + p.phi * w;
      const double alpha1 = std::min(
          1.0, 2.0 / pi *
                   std::abs(std::arg(Complex(
                       -p.rho * w / 2.0,
                       std::sqrt(4.0 * p.psi * w * g / (s * s) -
                                 p.rho * w * p.rho * w) /
                           2.0))));
      r.conditions.push_back(
          make_condition("eps1 < rho(1 - omega)", p.eps1, "<", p.rho * (1.0 - w)));
      r.conditions.push_back(
          make_condition("eps2 < psi/phi", p.eps2, "<", p.psi / p.phi));
      r.conditions.push_back(make_condition(
          "eps3 > beta omega(eta + gamma)/(1 + phi1 omega)", p.eps3, ">",
          p.beta * w * (p.eta + g) / (1.0 + p.phi1 * w)));
      r.conditions.push_back(
          make_condition("rho < 2/(1 + phi omega) sqrt(gamma/omega) psi", p.rho,
                         "<", 2.0 / s * std::sqrt(g / w) * p.psi));
      r.conditions.push_back(make_condition("alpha < alpha1", a, "<", alpha1));
      break;
    }
    case EquilibriumLabel::E4: {
      const double w = detail::aux_or_nan(eq, "omega");
      const double g = detail::aux_or_nan(eq, "gamma");
      const double s1 = 1.0 + p.phi1 * w;
      const double alpha1 = std::min(
          1.0, 2.0 / pi *
                   std::abs(std::arg(Complex(
                       -p.rho * w / 2.0,
                       std::sqrt(4.0 * p.eta * p.beta * w * g / (s1 * s1) -
                                 p.rho * w * p.rho * w) /
                           2.0))));
      r.conditions.push_back(
          make_condition("eps1 < rho(1 - omega)", p.eps1, "<", p.rho * (1.0 - w)));
      r.conditions.push_back(make_condition(
          "eps2 > psi omega(gamma + 1)/(eta(1 + phi omega))", p.eps2, ">",
          p.psi * w * (g + 1.0) / (p.eta * (1.0 + p.phi * w))));
      r.conditions.push_back(make_condition("eps3 < eta beta/phi1", p.eps3, "<",
                                            p.eta * p.beta / p.phi1));
      r.conditions.push_back(make_condition(
          "rho < 2/(1 + phi1 omega) sqrt(gamma/omega) eta beta", p.rho, "<",
          2.0 / s1 * std::sqrt(g / w) * p.eta * p.beta));
      r.conditions.push_back(make_condition("alpha < alpha1", a, "<", alpha1));
      break;
    }
    case EquilibriumLabel::E5: {
      const double w = detail::aux_or_nan(eq, "omega");
      const double g = detail::aux_or_nan(eq, "gamma");
      const double g1 = detail::aux_or_nan(eq, "gamma1");
      const double w1 = detail::aux_or_nan(eq, "omega1");
      r.conditions.push_back(make_condition("eps1 < rho + eta - gamma gamma1",
                                            p.eps1, "<", p.rho + p.eta - g * g1));
      r.conditions.push_back(make_condition("eps2 > psi omega1/(1 + phi omega1)",
                                            p.eps2, ">",
                                            p.psi * w1 / (1.0 + p.phi * w1)));
      r.conditions.push_back(make_condition(
          "eps3 > eta beta omega1/(1 + phi1 omega1)", p.eps3, ">",
          p.eta * p.beta * w1 / (1.0 + p.phi1 * w1)));
      const double e2sq = p.eps2 * p.eps2;
      const double e3sq = p.eps3 * p.eps3;
      r.conditions.push_back(make_condition(
          "psi eps3^2 + eta beta eps2^2 > psi eps3^2 gamma1 + beta eps2^2 gamma"
          " - (psi omega/(gamma gamma1)) beta eps1 eps2",
          p.psi * e3sq + p.eta * p.beta * e2sq, ">",
          p.psi * e3sq * g1 + p.beta * e2sq * g -
              p.psi * w / (g * g1) * p.beta * p.eps1 * p.eps2));
      r.conditions.push_back(make_condition("0 < alpha < 1", a, "<", 1.0));
      const auto cf = e5_closed_form_char_poly(p, {eq.coords[0], eq.coords[1],
                                                   eq.coords[2]});
      r.notes.push_back(
          "closed-form cubic coefficients (a1, a2, a3) = (" +
          std::to_string(cf.a(1)) + ", " + std::to_string(cf.a(2)) + ", " +
          std::to_string(cf.a(3)) + "), D = " +
          std::to_string(cf.discriminant()) +
          "; Jacobian invariants give (" + std::to_string(r.char_poly.a(1)) +
          ", " + std::to_string(r.char_poly.a(2)) + ", " +
          std::to_string(r.char_poly.a(3)) + ")");
      break;
    }
  }
  return r;
}

}  // namespace fraceco
