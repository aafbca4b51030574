#pragma once

// Independent oracles for the equilibria module: a sign-scan root finder
// for the coexistence cubic and a grid search plus damped Newton polish
// for stationary points of either system.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "fraceco/equilibria.hpp"
#include "fraceco/models.hpp"

namespace oracle {

// Roots of the cubic on (0, hi], located by sign changes on a uniform grid
// and refined by bisection.
inline std::vector<double> sign_scan_e5(const fraceco::Params3& p,
                                        double hi = 2.0, double step = 1e-6) {
  const auto k = fraceco::e5_cubic(p);
  auto f = [&](double w) { return ((k[0] * w + k[1]) * w + k[2]) * w + k[3]; };
  std::vector<double> roots;
  const auto n = static_cast<std::size_t>(std::llround(hi / step));
  double a = step, fa = f(a);
  for (std::size_t i = 2; i <= n; ++i) {
    const double b = static_cast<double>(i) * step, fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      double lo = a, hi2 = b, flo = fa;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi2), fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi2 = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi2));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

template <std::size_t N, typename Rhs>
double max_abs(Rhs&& rhs, const std::array<double, N>& s) {
  double m = 0.0;
  for (double v : rhs(s)) m = std::max(m, std::abs(v));
  return m;
}

// Damped Newton on the vector field with a forward-difference Jacobian.
template <std::size_t N, typename Rhs>
std::array<double, N> newton_polish(Rhs&& rhs, std::array<double, N> s,
                                    int iters = 60) {
  for (int it = 0; it < iters; ++it) {
    const auto f = rhs(s);
    double fn = 0.0;
    for (double v : f) fn = std::max(fn, std::abs(v));
    if (fn < 1e-14) break;
    double J[N][N];
    for (std::size_t j = 0; j < N; ++j) {
      auto t = s;
      const double h = 1e-7 * std::max(1.0, std::abs(s[j]));
      t[j] += h;
      const auto ft = rhs(t);
      for (std::size_t i = 0; i < N; ++i) J[i][j] = (ft[i] - f[i]) / h;
    }
    // Gaussian elimination with partial pivoting for J d = -f.
    double A[N][N + 1];
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) A[i][j] = J[i][j];
      A[i][N] = -f[i];
    }
    bool singular = false;
    for (std::size_t c = 0; c < N; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < N; ++r) {
        if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
      }
      if (std::abs(A[piv][c]) < 1e-300) {
        singular = true;
        break;
      }
      for (std::size_t j = 0; j <= N; ++j) std::swap(A[c][j], A[piv][j]);
      for (std::size_t r = c + 1; r < N; ++r) {
        const double m = A[r][c] / A[c][c];
        for (std::size_t j = c; j <= N; ++j) A[r][j] -= m * A[c][j];
      }
    }
    if (singular) break;
    std::array<double, N> d{};
    for (std::size_t i = N; i-- > 0;) {
      double v = A[i][N];
      for (std::size_t j = i + 1; j < N; ++j) v -= A[i][j] * d[j];
      d[i] = v / A[i][i];
    }
    double lambda = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls) {
      auto t = s;
      for (std::size_t i = 0; i < N; ++i) t[i] += lambda * d[i];
      bool ok = true;
      for (double v : t) ok = ok && std::isfinite(v) && v > -0.5;
      if (ok && max_abs<N>(rhs, t) < fn) {
        s = t;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) break;
  }
  return s;
}

// Grid search over [0, 2]^N: every grid point whose residual is a local
// minimum among its axis neighbours seeds a Newton polish. Returns the
// distinct polished points that are feasible (>= -1e-9) with residual
// <= 1e-10.
template <std::size_t N, typename Rhs>
std::vector<std::array<double, N>> grid_equilibria(Rhs&& rhs, double step,
                                                    std::size_t max_seeds = 400) {
  const auto n = static_cast<std::size_t>(std::llround(2.0 / step)) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < N; ++i) total *= n;
  std::vector<double> res(total);
  auto point = [&](std::size_t idx) {
    std::array<double, N> s{};
    for (std::size_t i = 0; i < N; ++i) {
      s[i] = static_cast<double>(idx % n) * step;
      idx /= n;
    }
    return s;
  };
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto s = point(idx);
    double r;
    try {
      r = max_abs<N>(rhs, s);
    } catch (...) {
      r = INFINITY;
    }
    res[idx] = r;
  }
  std::vector<std::pair<double, std::size_t>> seeds;
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool is_min = true;
    std::size_t stride = 1, rem = idx;
    for (std::size_t i = 0; i < N && is_min; ++i) {
      const std::size_t c = rem % n;
      rem /= n;
      if (c > 0 && res[idx - stride] < res[idx]) is_min = false;
      if (c + 1 < n && res[idx + stride] < res[idx]) is_min = false;
      stride *= n;
    }
    if (is_min) seeds.push_back({res[idx], idx});
  }
  std::sort(seeds.begin(), seeds.end());
  if (seeds.size() > max_seeds) seeds.resize(max_seeds);

  std::vector<std::array<double, N>> found;
  for (const auto& [r, idx] : seeds) {
    std::array<double, N> s;
    try {
      s = newton_polish<N>(rhs, point(idx));
      if (max_abs<N>(rhs, s) > 1e-10) continue;
    } catch (...) {
      continue;
    }
    bool feasible = true;
    for (double v : s) feasible = feasible && v >= -1e-9;
    if (!feasible) continue;
    bool dup = false;
    for (const auto& f : found) {
      double d = 0.0;
      for (std::size_t i = 0; i < N; ++i) d = std::max(d, std::abs(f[i] - s[i]));
      dup = dup || d < 1e-7;
    }
    if (!dup) found.push_back(s);
  }
  return found;
}

// True when some feasible point in the closed-form list lies within tol of s.
template <std::size_t N>
bool listed(const std::vector<fraceco::EquilibriumPoint>& eqs,
            const std::array<double, N>& s, double tol = 1e-6) {
  for (const auto& e : eqs) {
    if (!e.feasible) continue;
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i) d = std::max(d, std::abs(e.coords[i] - s[i]));
    if (d < tol) return true;
  }
  return false;
}

inline fraceco::Params2 random_params2(auto& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {0.3 + 2.0 * u(rng), 1.0 + 20.0 * u(rng), 0.1 + 3.0 * u(rng),
          0.6 * u(rng), 0.6 * u(rng)};
}

inline fraceco::Params3 random_params3(auto& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {0.3 + 1.2 * u(rng),  0.5 + 4.5 * u(rng), 0.5 + 7.5 * u(rng),
          0.01 + u(rng),       0.1 + 2.0 * u(rng), 0.01 + u(rng),
          0.3 * u(rng),        0.1 + 1.4 * u(rng), 0.05 + u(rng)};
}

}  // namespace oracle
