#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fraceco {

using Complex = std::complex<double>;

/// Square matrix of order 1..3, row-major.
class SmallMatrix {
 public:
  explicit SmallMatrix(std::size_t n) : n_(n), m_{} {
    if (n < 1 || n > 3) {
      throw std::invalid_argument("SmallMatrix: order must be 1, 2 or 3");
    }
  }
  SmallMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SmallMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n_) {
        throw std::invalid_argument("SmallMatrix: ragged initializer");
      }
      std::size_t j = 0;
      for (double v : r) (*this)(i, j++) = v;
      ++i;
    }
  }

  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return m_[i * 3 + j]; }
  double& operator()(std::size_t i, std::size_t j) { return m_[i * 3 + j]; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double determinant() const {
    const auto& a = *this;
    switch (n_) {
      case 1:
        return a(0, 0);
      case 2:
        return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
      default:
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }
  }

  /// Sum of the principal 2x2 minors.
  double principal_minor_sum() const {
    const auto& a = *this;
    if (n_ < 2) return 0.0;
    double s = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (n_ == 3) {
      s += a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
      s += a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    }
    return s;
  }

 private:
  std::size_t n_;
  std::array<double, 9> m_;
};

/// Monic polynomial lambda^n + a1 lambda^(n-1) + ... + an, n in {1, 2, 3}.
struct CharPoly {
  std::vector<double> coeffs;  // a1..an

  std::size_t degree() const { return coeffs.size(); }
  double a(std::size_t i) const { return coeffs.at(i - 1); }

  /// Discriminant. For n = 3:
  /// 18 a1 a2 a3 + (a1 a2)^2 - 4 a3 a1^3 - 4 a2^3 - 27 a3^2.
  double discriminant() const {
    switch (degree()) {
      case 1:
        return 1.0;
      case 2:
        return a(1) * a(1) - 4.0 * a(2);
      case 3: {
        const double a1 = a(1), a2 = a(2), a3 = a(3);
        return 18.0 * a1 * a2 * a3 + (a1 * a2) * (a1 * a2) -
               4.0 * a3 * a1 * a1 * a1 - 4.0 * a2 * a2 * a2 - 27.0 * a3 * a3;
      }
      default:
        throw std::invalid_argument("CharPoly: degree must be 1, 2 or 3");
    }
  }

  Complex evaluate(Complex z) const {
    Complex v = 1.0;
    for (double c : coeffs) v = v * z + c;
    return v;
  }

  Complex derivative(Complex z) const {
    const std::size_t n = degree();
    Complex v = static_cast<double>(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      v = v * z + static_cast<double>(n - 1 - i) * coeffs[i];
    }
    return v;
  }

  double max_abs_coeff() const {
    double m = 1.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }
};

/// Characteristic polynomial det(lambda I - A) from trace and minor sums.
inline CharPoly char_poly(const SmallMatrix& m) {
  switch (m.order()) {
    case 1:
      return {{-m.trace()}};
    case 2:
      return {{-m.trace(), m.determinant()}};
    default:
      return {{-m.trace(), m.principal_minor_sum(), -m.determinant()}};
  }
}

namespace detail {

inline Complex polish_root(const CharPoly& p, Complex z) {
  for (int it = 0; it < 3; ++it) {
    const Complex f = p.evaluate(z);
    const Complex df = p.derivative(z);
    if (std::abs(df) == 0.0) break;
    const Complex next = z - f / df;
    if (!(std::abs(p.evaluate(next)) < std::abs(f))) break;
    z = next;
  }
  return z;
}

inline std::vector<Complex> quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Avoid cancellation in the smaller-magnitude root.
    const double q = -0.5 * (b + std::copysign(s, b));
    if (q == 0.0) return {0.0, 0.0};
    return {q, c / q};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {Complex(re, im), Complex(re, -im)};
}

// Roots of x^3 + a x^2 + b x + c.
inline std::vector<Complex> cubic_roots(double a, double b, double c) {
  const double q = (a * a - 3.0 * b) / 9.0;
  const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
  const double shift = a / 3.0;
  const double q3 = q * q * q;
  if (r * r < q3) {
    // Three distinct real roots: trigonometric form.
    const double theta = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    constexpr double tau = 2.0 * std::numbers::pi;
    return {m * std::cos(theta / 3.0) - shift,
            m * std::cos((theta + tau) / 3.0) - shift,
            m * std::cos((theta - tau) / 3.0) - shift};
  }
  // Cardano.
  const double big_a =
      -std::copysign(std::cbrt(std::abs(r) + std::sqrt(std::max(0.0, r * r - q3))), r);
  const double big_b = big_a == 0.0 ? 0.0 : q / big_a;
  const double re = -0.5 * (big_a + big_b) - shift;
  const double im = 0.5 * std::sqrt(3.0) * (big_a - big_b);
  return {big_a + big_b - shift, Complex(re, im), Complex(re, -im)};
}

}  // namespace detail

/// All roots of a monic polynomial of degree 1..3 by closed-form formulas,
/// each refined with a few Newton steps.
inline std::vector<Complex> eigen(const CharPoly& p) {
  std::vector<Complex> roots;
  switch (p.degree()) {
    case 1:
      return {Complex(-p.a(1), 0.0)};
    case 2:
      roots = detail::quadratic_roots(p.a(1), p.a(2));
      break;
    case 3:
      roots = detail::cubic_roots(p.a(1), p.a(2), p.a(3));
      break;
    default:
      throw std::invalid_argument("eigen: degree must be 1, 2 or 3");
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Complex& z = roots[i];
    const bool real = z.imag() == 0.0;
    z = detail::polish_root(p, z);
    if (real) {
      z = Complex(z.real(), 0.0);
    } else if (i + 1 < roots.size()) {
      // Complex roots come in adjacent conjugate pairs.
      roots[i + 1] = std::conj(z);
      ++i;
    }
  }
  return roots;
}

inline std::vector<Complex> eigen(const SmallMatrix& m) {
  return eigen(char_poly(m));
}

}  // namespace fraceco
