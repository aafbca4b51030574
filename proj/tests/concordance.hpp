#pragma once

// Stability verdict vs simulated behaviour near the two-species
// coexistence point.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fraceco/equilibria.hpp"
#include "fraceco/solver.hpp"
#include "fraceco/stability.hpp"

namespace oracle {

struct ConcordanceCase {
  fraceco::Params2 params;
  double alpha;
  fraceco::Verdict verdict;
  double margin;
  bool converged;  // within 1e-3 of E3 at the horizon
  bool exited;     // left the 0.05-ball at some grid time
  bool agrees;
  bool excused;  // disagreement at |margin| < 0.02 rad
};

inline std::vector<ConcordanceCase> concordance_cases(int count, unsigned seed,
                                                      double horizon = 200.0,
                                                      double h = 0.02) {
  using namespace fraceco;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ConcordanceCase> out;
  while (static_cast<int>(out.size()) < count) {
    const Params2 p{0.3 + 2.0 * u(rng), 1.0 + 20.0 * u(rng), 0.1 + 3.0 * u(rng),
                    0.6 * u(rng), 0.6 * u(rng)};
    const auto eqs = equilibria2(p);
    const auto& e3 = eqs[2];
    // Keep the perturbed start strictly inside the positive quadrant.
    if (!e3.feasible || e3.coords[0] < 0.05 || e3.coords[1] < 0.05) continue;
    const double alpha = 0.75 + 0.25 * u(rng);
    const auto rep = stability_report(p, e3, FracOrder(alpha));

    const double theta = 2.0 * std::numbers::pi * u(rng);
    const double r0 = 0.01;
    const double y0[] = {e3.coords[0] + r0 * std::cos(theta),
                         e3.coords[1] + r0 * std::sin(theta)};
    const auto traj = solve_caputo_ivp(System2{p}, FracOrder(alpha), y0,
                                       TimeGrid::spanning(0.0, horizon, h));
    auto dist = [&](std::size_t i) {
      return std::hypot(traj(i, 0) - e3.coords[0], traj(i, 1) - e3.coords[1]);
    };
    bool exited = false;
    for (std::size_t i = 0; i < traj.rows(); ++i) exited = exited || dist(i) > 0.05;
    const bool converged = dist(traj.rows() - 1) <= 1e-3;

    ConcordanceCase c{p, alpha, rep.verdict, rep.matignon_margin, converged, exited,
                      false, false};
    c.agrees = (rep.verdict == Verdict::stable && converged) ||
               (rep.verdict == Verdict::unstable && exited);
    c.excused = !c.agrees && std::abs(rep.matignon_margin) < 0.02;
    out.push_back(c);
  }
  return out;
}

}  // namespace oracle
