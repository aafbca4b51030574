// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when a
// criterion outside --known-red fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "concordance.hpp"
#include "fixtures.hpp"

using namespace fraceco;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Linear {
  double lambda;
  void operator()(std::span<const double> y, std::span<double> dy) const {
    dy[0] = lambda * y[0];
  }
};

Outcome solver_oracle() {
  bool ok = true;
  std::string d;
  const auto grid = TimeGrid::spanning(0.0, 5.0, 1e-3);
  const double y0[] = {1.0};
  for (double a : {0.6, 0.8, 0.95, 1.0}) {
    const auto start = std::chrono::steady_clock::now();
    const auto traj = solve_caputo_ivp(Linear{-1.0}, FracOrder(a), y0, grid);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double err = 0.0;
    for (std::size_t i = 0; i < traj.rows(); ++i) {
      const double t = grid.t(i);
      if (a == 1.0) {
        err = std::max(err, std::abs(traj(i, 0) - std::exp(-t)));
      } else {
        const double exact = mittag_leffler(a, 1.0, -std::pow(t, a));
        err = std::max(err, std::abs(traj(i, 0) - exact) / std::abs(exact));
      }
    }
    const double tol = a == 1.0 ? 1e-6 : 1e-3;
    ok = ok && err <= tol && secs <= 30.0;
    d += fmt("a=%.2f %s=%.2e (%.2fs) ", a, a == 1.0 ? "abs" : "rel", err, secs);
  }
  return {ok, d};
}

Outcome caputo_oracle() {
  auto value = [](double h) {
    const auto g = TimeGrid::spanning(0.0, 1.0, h);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.t(i) * g.t(i);
    return caputo_derivative_of_samples(f, g, FracOrder(0.5)).back();
  };
  const double exact = gamma_fn(3.0) / gamma_fn(2.5);
  const double e1 = std::abs(value(1e-3) - exact);
  const double e2 = std::abs(value(5e-4) - exact);
  const double order = std::log2(e1 / e2);
  const bool ok = std::abs(exact - oracle::kCaputo_t2_half) < 1e-13 &&
                  e1 / exact <= 0.01 && order >= 0.9;
  return {ok, fmt("rel err %.2e at h=1e-3, order %.3f", e1 / exact, order)};
}

Outcome coexistence_checklist2() {
  const auto p = oracle::damped_set();
  const auto cf = coexistence_closed_form2(p);
  const bool ok = std::abs(cf.omega - 2.0 / 15.0) < 1e-15 &&
                  std::abs(cf.omega - 0.13) < 0.005 && std::abs(cf.b - 0.533) < 5e-4 &&
                  std::abs(cf.b - 0.53) < 0.005 && cf.order_bound >= 1.17 &&
                  cf.order_bound <= 1.21 &&
                  std::abs(cf.order_bound - 1.178) <= 0.05 * 1.178;
  return {ok, fmt("omega=%.6f b=%.6f critical order=%.4f (ref 1.178)", cf.omega,
                  cf.b, cf.order_bound)};
}

Outcome coexistence_checklist3() {
  const auto p = oracle::mutualism_set();
  const EquilibriumPoint* e5 = nullptr;
  const auto eqs = equilibria3(p);
  for (const auto& e : eqs) {
    if (e.label == EquilibriumLabel::E5 && e.coords[0] >= 0.79 && e.coords[0] <= 0.81) e5 = &e;
  }
  if (!e5) return {false, "no E5 with omega in [0.79, 0.81]"};
  const auto r = stability_report(p, *e5, FracOrder(0.96));
  bool ok = r.conditions.size() == 5 && r.all_conditions_pass();
  std::string d = fmt("omega=%.6f thresholds", e5->coords[0]);
  for (int i = 0; i < 3; ++i) {
    const double ref = oracle::kE5Thresholds[i];
    const double got = r.conditions[i].rhs;
    ok = ok && std::abs(got - ref) <= 0.05 * ref;
    d += fmt(" %.4f(%.4f)", got, ref);
  }
  int ticks = 0;
  for (const auto& c : r.conditions) ticks += c.pass;
  d += fmt(" ticks=%d/5", ticks);
  return {ok, d};
}

Outcome damping() {
  const auto rows = sweep(oracle::damped_config(1.0), "alpha", {1.0, 0.9, 0.8});
  const double a1 = rows[0].metrics.max_late_amplitude();
  const double a9 = rows[1].metrics.max_late_amplitude();
  const double a8 = rows[2].metrics.max_late_amplitude();
  const bool amp = a8 < a9 && a9 < a1;
  const auto& s1 = rows[0].metrics.settling_time;
  const auto& s8 = rows[2].metrics.settling_time;
  const bool settle = s1 && s8 && *s8 < *s1;
  return {amp && settle,
          fmt("late amplitude 1.0:%.3g 0.9:%.3g 0.8:%.3g (%s); settling 1.0:%.2f 0.8:%.2f (%s)",
              a1, a9, a8, amp ? "decreasing" : "not decreasing", s1.value_or(NAN),
              s8.value_or(NAN), settle ? "ok" : "not smaller")};
}

Outcome harvest() {
  const double free_amp = run(oracle::harvest_config(0.0, 0.0)).metrics.max_late_amplitude();
  const double harv_amp = run(oracle::harvest_config(0.4, 1.0)).metrics.max_late_amplitude();
  return {free_amp > 10.0 * harv_amp,
          fmt("unharvested %.3g vs harvested %.3g (ratio %.0f)", free_amp, harv_amp,
              free_amp / harv_amp)};
}

Outcome positivity() {
  const auto r = oracle::positivity_sweep(50, 7);
  return {r.runs == 100 && r.worst >= -1e-9,
          fmt("%d runs, most negative component %.3g", r.runs, r.worst)};
}

double one_norm_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

Outcome lipschitz() {
  int v2 = 0, v3 = 0;
  double worst2 = 0.0, worst3 = 0.0;
  std::mt19937_64 rng(23);
  for (double M : {0.5, 1.0, 2.0}) {
    std::uniform_real_distribution<double> u(0.0, M);
    const auto p2 = oracle::damped_set();
    const auto p3 = oracle::mutualism_set();
    const double L2 = lipschitz_bound2(p2, M).L;
    const double L3 = lipschitz_bound3(p3, M).L;
    for (int i = 0; i < 1000; ++i) {
      const State2 X{u(rng), u(rng)}, Y{u(rng), u(rng)};
      const double r = one_norm_diff(rhs2(p2, X), rhs2(p2, Y)) / one_norm_diff(X, Y);
      worst2 = std::max(worst2, r / L2);
      v2 += r > L2 * (1 + 1e-12);
    }
    for (int i = 0; i < 1000; ++i) {
      const State3 X{u(rng), u(rng), u(rng)}, Y{u(rng), u(rng), u(rng)};
      const double r = one_norm_diff(rhs3(p3, X), rhs3(p3, Y)) / one_norm_diff(X, Y);
      worst3 = std::max(worst3, r / L3);
      v3 += r > L3 * (1 + 1e-12);
    }
  }
  return {v2 == 0 && v3 == 0,
          fmt("two-species violations %d/3000 (max slope/L %.3f); "
              "three-species violations %d/3000 (max slope/L %.3f)",
              v2, worst2, v3, worst3)};
}

Outcome completeness() {
  int missing = 0, found = 0;
  double worst_res = 0.0;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto p = oracle::random_params2(rng);
    const auto eqs = equilibria2(p);
    for (const auto& e : eqs) {
      if (!e.feasible) continue;
      worst_res = std::max(worst_res, oracle::max_abs<2>([&](const State2& x) { return rhs2(p, x); },
                                                         {e.coords[0], e.coords[1]}));
    }
    for (const auto& s : oracle::grid_equilibria<2>(
             [&](const State2& x) { return rhs2(p, x); }, 1e-3)) {
      ++found;
      missing += !oracle::listed<2>(eqs, s);
    }
  }
  for (int t = 0; t < 50; ++t) {
    const auto p = oracle::random_params3(rng);
    const auto eqs = equilibria3(p);
    for (const auto& e : eqs) {
      if (!e.feasible) continue;
      worst_res = std::max(worst_res,
                           oracle::max_abs<3>([&](const State3& x) { return rhs3(p, x); },
                                              {e.coords[0], e.coords[1], e.coords[2]}));
    }
    for (const auto& s : oracle::grid_equilibria<3>(
             [&](const State3& x) { return rhs3(p, x); }, 0.02)) {
      ++found;
      missing += !oracle::listed<3>(eqs, s);
    }
  }
  return {missing == 0 && worst_res <= 1e-10,
          fmt("%d grid roots, %d missing from closed form, worst residual %.2e", found,
              missing, worst_res)};
}

Outcome concordance() {
  const auto cases = oracle::concordance_cases(30, 43);
  int agree = 0, excused = 0;
  for (const auto& c : cases) {
    agree += c.agrees;
    excused += !c.agrees && c.excused;
  }
  return {agree + excused >= 28,
          fmt("%d/30 agree, %d excused at margin < 0.02 rad", agree, excused)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto cfg = oracle::damped_config(0.85);
  const auto base = fs::temp_directory_path() / "fraceco_acceptance";
  fs::remove_all(base);
  emit(base / "a", cfg, run(cfg));
  emit(base / "b", cfg, run(cfg));
  int same = 0, total = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    ++total;
    same += slurp(e.path()) == slurp(base / "b" / e.path().filename());
  }
  const bool csv = slurp(base / "a" / "timeseries.csv") == slurp(base / "b" / "timeseries.csv");
  fs::remove_all(base);
  return {csv && same == total, fmt("%d/%d artifacts byte-identical", same, total)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> known_red;
  app.add_option("--known-red", known_red,
                 "criteria expected to fail; they are still reported")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected_red(known_red.begin(), known_red.end());

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"solver oracle", solver_oracle},
      {"caputo quadrature", caputo_oracle},
      {"two-species checklist table", coexistence_checklist2},
      {"three-species checklist table", coexistence_checklist3},
      {"damping with memory", damping},
      {"harvest stabilisation", harvest},
      {"positivity", positivity},
      {"lipschitz bounds", lipschitz},
      {"equilibrium completeness", completeness},
      {"stability-simulation concordance", concordance},
      {"determinism", determinism},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool known = expected_red.count(id) > 0;
    std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str(), !o.pass && known ? " [known]" : "");
    std::fflush(stdout);
    unexpected += !o.pass && !known;
  }
  return unexpected == 0 ? 0 : 1;
}
