#pragma once

// JSON mapping for parameter sets, equilibria and stability reports.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "fraceco/equilibria.hpp"
#include "fraceco/harness/metrics.hpp"
#include "fraceco/models.hpp"
#include "fraceco/stability.hpp"

namespace fraceco {

using Json = nlohmann::ordered_json;

namespace detail {

// Non-finite numbers have no JSON literal; they become null.
inline Json number(double v) {
  if (!std::isfinite(v)) return Json(nullptr);
  return Json(v);
}

inline double get_number(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  const Json& v = j.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("field '") + key +
                                "' must be a number");
  }
  return v.get<double>();
}

inline double get_number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? get_number(j, key) : fallback;
}

}  // namespace detail

inline Json to_json(const Params2& p) {
  return Json{{"rho", p.rho},
              {"psi", p.psi},
              {"phi", p.phi},
              {"eps1", p.eps1},
              {"eps2", p.eps2}};
}

inline Json to_json(const Params3& p) {
  return Json{{"rho", p.rho},   {"psi", p.psi},   {"beta", p.beta},
              {"eta", p.eta},   {"phi", p.phi},   {"phi1", p.phi1},
              {"eps1", p.eps1}, {"eps2", p.eps2}, {"eps3", p.eps3}};
}

inline Params2 params2_from_json(const Json& j) {
  using detail::get_number;
  Params2 p{.rho = get_number(j, "rho"),
            .psi = get_number(j, "psi"),
            .phi = get_number(j, "phi"),
            .eps1 = detail::get_number_or(j, "eps1", 0.0),
            .eps2 = detail::get_number_or(j, "eps2", 0.0)};
  p.validate();
  return p;
}

inline Params3 params3_from_json(const Json& j) {
  using detail::get_number;
  Params3 p{.rho = get_number(j, "rho"),
            .psi = get_number(j, "psi"),
            .beta = get_number(j, "beta"),
            .eta = get_number(j, "eta"),
            .phi = get_number(j, "phi"),
            .phi1 = get_number(j, "phi1"),
            .eps1 = detail::get_number_or(j, "eps1", 0.0),
            .eps2 = get_number(j, "eps2"),
            .eps3 = get_number(j, "eps3")};
  p.validate();
  return p;
}

inline DimParams2 dim_params2_from_json(const Json& j) {
  using detail::get_number;
  DimParams2 p{.r = get_number(j, "r"),
               .K = get_number(j, "K"),
               .a = get_number(j, "a"),
               .sigma = get_number(j, "sigma"),
               .k = get_number(j, "k"),
               .h1 = detail::get_number_or(j, "h1", 0.0),
               .h2 = detail::get_number_or(j, "h2", 0.0)};
  p.validate();
  return p;
}

inline DimParams3 dim_params3_from_json(const Json& j) {
  using detail::get_number;
  DimParams3 p{.r = get_number(j, "r"),
               .K = get_number(j, "K"),
               .a = get_number(j, "a"),
               .b = get_number(j, "b"),
               .xi = get_number(j, "xi"),
               .sigma1 = get_number(j, "sigma1"),
               .sigma2 = get_number(j, "sigma2"),
               .k1 = get_number(j, "k1"),
               .k2 = get_number(j, "k2"),
               .h1 = detail::get_number_or(j, "h1", 0.0),
               .h2 = detail::get_number_or(j, "h2", 0.0),
               .h3 = detail::get_number_or(j, "h3", 0.0)};
  p.validate();
  return p;
}

inline Json to_json(const EquilibriumPoint& e) {
  Json coords = Json::array();
  for (double c : e.coords) coords.push_back(detail::number(c));
  Json aux = Json::object();
  for (const auto& [k, v] : e.aux) aux[k] = detail::number(v);
  Json j{{"label", to_string(e.label)},
         {"coords", coords},
         {"feasible", e.feasible},
         {"aux", aux}};
  if (!e.diagnostic.empty()) j["diagnostic"] = e.diagnostic;
  return j;
}

inline Json to_json(const Complex& z) {
  return Json{{"re", detail::number(z.real())}, {"im", detail::number(z.imag())}};
}

inline Json to_json(const Condition& c) {
  return Json{{"name", c.name},
              {"lhs", detail::number(c.lhs)},
              {"relation", c.relation},
              {"rhs", detail::number(c.rhs)},
              {"pass", c.pass}};
}

inline Json to_json(const FracRhReport& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses) {
    clauses.push_back(Json{{"name", c.name},
                           {"applies", c.applies},
                           {"alpha_lo", detail::number(c.alpha_lo)},
                           {"alpha_hi", detail::number(c.alpha_hi)}});
  }
  Json j{{"degree", r.degree},
         {"discriminant", detail::number(r.discriminant)},
         {"necessary_an_positive", r.necessary_ok},
         {"clauses", clauses}};
  if (r.alpha) {
    j["alpha"] = *r.alpha;
    j["holds"] = r.holds;
  }
  return j;
}

inline Json to_json(const StabilityReport& r) {
  Json jac = Json::array();
  for (std::size_t i = 0; i < r.jacobian.order(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < r.jacobian.order(); ++k) {
      row.push_back(detail::number(r.jacobian(i, k)));
    }
    jac.push_back(row);
  }
  Json coeffs = Json::array();
  for (double c : r.char_poly.coeffs) coeffs.push_back(detail::number(c));
  Json eigs = Json::array();
  for (const auto& z : r.eigenvalues) eigs.push_back(to_json(z));
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));

  Json j{{"equilibrium", to_json(r.equilibrium)},
         {"alpha", r.alpha},
         {"jacobian", jac},
         {"char_poly", Json{{"coeffs", coeffs},
                            {"discriminant",
                             detail::number(r.char_poly.discriminant())}}},
         {"eigenvalues", eigs},
         {"matignon_margin", detail::number(r.matignon_margin)},
         {"verdict", to_string(r.verdict)},
         {"critical_alpha",
          r.critical_alpha ? detail::number(*r.critical_alpha) : Json(nullptr)},
         {"fractional_routh_hurwitz", to_json(r.frac_rh)},
         {"conditions", conds},
         {"conditions_all_pass", r.all_conditions_pass()},
         {"notes", r.notes}};
  return j;
}

inline Json to_json(const RunMetrics& m) {
  Json amp = Json::array();
  for (double a : m.late_amplitude) amp.push_back(detail::number(a));
  Json mins = Json::array();
  for (double a : m.min_value) mins.push_back(detail::number(a));
  Json target = Json::array();
  for (double a : m.target) target.push_back(detail::number(a));
  return Json{{"settling_time",
               m.settling_time ? detail::number(*m.settling_time) : Json(nullptr)},
              {"late_amplitude", amp},
              {"min_value", mins},
              {"extinction_flag", m.extinction_flag},
              {"target", target}};
}

}  // namespace fraceco
