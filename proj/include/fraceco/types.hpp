#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraceco {

/// Fractional order of a Caputo derivative, restricted to (0, 1].
class FracOrder {
 public:
  explicit FracOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw std::domain_error("FracOrder: alpha must lie in (0, 1], got " +
                              std::to_string(alpha));
    }
  }

  double value() const { return alpha_; }
  bool is_integer() const { return alpha_ == 1.0; }

  friend bool operator==(FracOrder, FracOrder) = default;

 private:
  double alpha_;
};

/// Uniform time grid t_i = t0 + i*h, i = 0..n_steps.
class TimeGrid {
 public:
  TimeGrid(double t0, double h, std::size_t n_steps)
      : t0_(t0), h_(h), n_steps_(n_steps) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::invalid_argument("TimeGrid: step h must be positive");
    }
    if (n_steps == 0) {
      throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
    }
    if (!std::isfinite(t0)) {
      throw std::invalid_argument("TimeGrid: t0 must be finite");
    }
  }

  /// Grid covering [t0, t_end] with step h; t_end is rounded to the
  /// nearest grid point.
  static TimeGrid spanning(double t0, double t_end, double h) {
    const double steps = std::round((t_end - t0) / h);
    if (!(steps >= 1.0)) {
      throw std::invalid_argument("TimeGrid: t_end must exceed t0 by >= h");
    }
    return TimeGrid(t0, h, static_cast<std::size_t>(steps));
  }

  double t0() const { return t0_; }
  double h() const { return h_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t size() const { return n_steps_ + 1; }
  double t(std::size_t i) const { return t0_ + static_cast<double>(i) * h_; }
  double t_end() const { return t(n_steps_); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t0_;
  double h_;
  std::size_t n_steps_;
};

/// States of a d-dimensional system sampled on a TimeGrid, row-major.
class Trajectory {
 public:
  Trajectory(TimeGrid grid, std::size_t dim)
      : grid_(grid), dim_(dim), data_(grid.size() * dim, 0.0) {
    if (dim == 0) {
      throw std::invalid_argument("Trajectory: dim must be >= 1");
    }
  }

  const TimeGrid& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return grid_.size(); }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double operator()(std::size_t i, std::size_t c) const {
    return data_[i * dim_ + c];
  }
  double& operator()(std::size_t i, std::size_t c) {
    return data_[i * dim_ + c];
  }

  /// Component c as a contiguous series.
  std::vector<double> component(std::size_t c) const {
    std::vector<double> out(rows());
    for (std::size_t i = 0; i < rows(); ++i) out[i] = (*this)(i, c);
    return out;
  }

  std::span<const double> data() const { return data_; }

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace fraceco
