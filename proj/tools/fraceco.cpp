#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "fraceco/fraceco.hpp"

using namespace fraceco;
namespace fs = std::filesystem;

namespace {

// --out, then FRACECO_OUT, then "fraceco_out".
fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FRACECO_OUT"); env && *env) return env;
  return "fraceco_out";
}

ScenarioConfig load(const std::string& path, const std::optional<double>& alpha) {
  ScenarioConfig cfg = load_scenario(path);
  if (alpha) cfg.alpha = FracOrder(*alpha);
  return cfg;
}

void print_paths(const std::vector<fs::path>& paths) {
  for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
}

int cmd_simulate(const std::string& config, const std::optional<double>& alpha,
                 const std::string& out) {
  const auto cfg = load(config, alpha);
  const auto result = run(cfg);
  print_paths(emit(output_dir(out), cfg, result));
  std::cout << to_json(result.metrics).dump(2) << "\n";
  return 0;
}

int cmd_equilibria(const std::string& config, const std::string& out) {
  const auto cfg = load(config, std::nullopt);
  Json arr = Json::array();
  for (const auto& e : equilibria_for(cfg)) arr.push_back(to_json(e));
  const auto path = output_dir(out) / "equilibria.json";
  write_text_file(path, arr.dump(2) + "\n");
  std::cout << arr.dump(2) << "\nwrote " << path.string() << "\n";
  return 0;
}

int cmd_stability(const std::string& config, const std::optional<double>& alpha,
                  const std::string& out) {
  const auto cfg = load(config, alpha);
  const auto reports = stability_reports_for(cfg, equilibria_for(cfg));
  const fs::path dir = output_dir(out);
  write_text_file(dir / "stability.json", reports_json(reports).dump(2) + "\n");
  write_text_file(dir / "stability.md", checklist_markdown(reports));
  write_text_file(dir / "stability.csv", checklist_csv(reports));
  std::cout << checklist_markdown(reports);
  print_paths({dir / "stability.json", dir / "stability.md", dir / "stability.csv"});
  return 0;
}

int cmd_sweep(const std::string& config, const std::string& axis,
              const std::vector<double>& values, const std::string& out) {
  const auto cfg = load(config, std::nullopt);
  const auto rows = sweep(cfg, axis, values);
  const std::string csv = sweep_csv(axis, rows);
  const auto path = output_dir(out) / ("sweep_" + axis + ".csv");
  write_text_file(path, csv);
  std::cout << csv << "wrote " << path.string() << "\n";
  return 0;
}

// Built-in oracle checks against closed forms.
int cmd_validate() {
  int failed = 0;
  auto check = [&](const char* name, bool ok, double value) {
    std::printf("%s %-44s %.6g\n", ok ? "ok  " : "FAIL", name, value);
    failed += !ok;
  };

  check("Gamma(0.5)^2 = pi", std::abs(gamma_fn(0.5) * gamma_fn(0.5) - std::numbers::pi) < 1e-13,
        gamma_fn(0.5));
  check("E_1(1) = e", std::abs(mittag_leffler(1.0, 1.0) - std::numbers::e) < 1e-14,
        mittag_leffler(1.0, 1.0));
  check("E_2(-4) = cos 2", std::abs(mittag_leffler(2.0, -4.0) - std::cos(2.0)) < 1e-13,
        mittag_leffler(2.0, -4.0));
  {
    const double x = -0.8;
    const double ref = std::exp(x * x) * std::erfc(-x);
    check("E_0.5(x) = exp(x^2) erfc(-x)",
          std::abs(mittag_leffler(0.5, x) - ref) < 1e-13, mittag_leffler(0.5, x));
  }
  {
    const auto g = TimeGrid::spanning(0.0, 1.0, 1e-3);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.t(i) * g.t(i);
    const double d = caputo_derivative_of_samples(f, g, FracOrder(0.5)).back();
    const double exact = 2.0 / gamma_fn(2.5);
    check("D^0.5 t^2 at t=1 (rel err)", std::abs(d - exact) / exact < 0.01,
          std::abs(d - exact) / exact);
  }
  for (double a : {0.6, 0.8, 0.95}) {
    const auto g = TimeGrid::spanning(0.0, 5.0, 1e-3);
    const double y0[] = {1.0};
    const auto traj = solve_caputo_ivp(
        [](std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; },
        FracOrder(a), y0, g);
    double err = 0.0;
    for (std::size_t i = 0; i < traj.rows(); ++i) {
      const double exact = mittag_leffler(a, -std::pow(g.t(i), a));
      err = std::max(err, std::abs(traj(i, 0) - exact) / std::abs(exact));
    }
    const std::string name = "D^a x = -x vs E_a(-t^a), a = " + detail::g6(a);
    check(name.c_str(), err <= 1e-3, err);
  }
  {
    const auto cf = coexistence_closed_form2(Params2{1, 19, 2, 0.4, 1});
    check("two-species omega = 2/15", std::abs(cf.omega - 2.0 / 15.0) < 1e-15, cf.omega);
    check("two-species critical order in [1.17, 1.21]",
          cf.order_bound >= 1.17 && cf.order_bound <= 1.21, cf.order_bound);
  }
  {
    const Params3 p{0.61, 1, 7, 0.01, 1.4, 0.02, 0.12, 0.43, 0.06};
    double omega = 0.0;
    for (const auto& e : equilibria3(p)) {
      if (e.label == EquilibriumLabel::E5) omega = std::max(omega, e.coords[0]);
    }
    check("three-species coexistence omega in [0.79, 0.81]",
          omega >= 0.79 && omega <= 0.81, omega);
  }
  std::printf("%s\n", failed ? "validation FAILED" : "all checks passed");
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order predator-prey simulator"};
  app.require_subcommand(1);
  std::string config, out, axis;
  std::optional<double> alpha;
  std::vector<double> values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "scenario JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out,-o", out, "output directory (else FRACECO_OUT, else ./fraceco_out)");
  };

  auto* sim = app.add_subcommand("simulate", "integrate a scenario and write artifacts");
  add_common(sim);
  sim->add_option("--alpha", alpha, "override the fractional order");

  auto* eq = app.add_subcommand("equilibria", "list equilibria with feasibility");
  add_common(eq);

  auto* st = app.add_subcommand("stability", "stability checklist for feasible equilibria");
  add_common(st);
  st->add_option("--alpha", alpha, "override the fractional order");

  auto* sw = app.add_subcommand("sweep", "one run per value of a parameter");
  add_common(sw);
  sw->add_option("--axis", axis, "alpha or a model parameter name")->required();
  sw->add_option("--values", values, "comma-separated values")->delimiter(',');

  auto* val = app.add_subcommand("validate", "run the built-in oracle checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(config, alpha, out);
    if (*eq) return cmd_equilibria(config, out);
    if (*st) return cmd_stability(config, alpha, out);
    if (*sw) return cmd_sweep(config, axis, values, out);
    if (*val) return cmd_validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
