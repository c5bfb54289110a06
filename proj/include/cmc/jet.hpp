#pragma once

// Truncated bivariate Taylor expansions ("jets").  A jet of order k at
// (x0,y0) carries the raw partial derivatives d^{i+j}f / dx^i dy^j for
// i+j <= k in total-degree order: (0,0),(1,0),(0,1),(2,0),(1,1),(0,2),...
// Arithmetic is the truncated ring; univariate functions compose by the
// chain rule.

#include <cstdint>
#include <span>
#include <vector>

#include "cmc/errors.hpp"

namespace cmc {

class Jet {
 public:
  Jet() = default;
  Jet(int order, double x0, double y0);

  static Jet constant(double value, int order, double x0, double y0);
  static Jet var_x(int order, double x0, double y0);
  static Jet var_y(int order, double x0, double y0);

  static int coeff_count(int order) { return (order + 1) * (order + 2) / 2; }

  int order() const { return order_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double value() const { return coef_[0]; }

  double deriv(int i, int j) const;
  double& deriv(int i, int j);
  std::span<const double> coefficients() const { return coef_; }

  Jet truncated(int order) const;
  // Derivative jets, one order lower.
  Jet d_dx() const;
  Jet d_dy() const;
  // Antiderivative in x with zero x-constant part, same order (the top
  // total-degree coefficients of *this drop out).
  Jet integrate_x() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) { coef_[0] += s; return *this; }
  Jet& operator-=(double s) { coef_[0] -= s; return *this; }
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  // Composition f(u) where derivs[m] = f^(m) at u.value(), m = 0..order.
  friend Jet compose_univariate(const Jet& u, std::span<const double> derivs);

  double max_abs_diff(const Jet& o) const;

 private:
  void require_compatible(const Jet& o) const;

  int order_ = 0;
  double x0_ = 0.0, y0_ = 0.0;
  std::vector<double> coef_ = std::vector<double>(1, 0.0);
};

Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet tan(const Jet& u);
Jet sinh(const Jet& u);
Jet cosh(const Jet& u);
Jet tanh(const Jet& u);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sqrt(const Jet& u);
Jet atan(const Jet& u);
Jet reciprocal(const Jet& u);
Jet pow_int(const Jet& u, long long n);
Jet pow_real(const Jet& u, double e);

}  // namespace cmc
