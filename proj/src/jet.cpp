#include "cmc/jet.hpp"

#include <algorithm>
#include <cmath>

namespace cmc {

namespace {

constexpr int kMaxOrder = 16;

// Pascal triangle, binom[n][k] for n <= kMaxOrder.
const double* binom_row(int n) {
  static const auto table = [] {
    static double rows[kMaxOrder + 1][kMaxOrder + 1] = {};
    for (int n = 0; n <= kMaxOrder; ++n) {
      rows[n][0] = rows[n][n] = 1.0;
      for (int k = 1; k < n; ++k)
        rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return &rows[0];
  }();
  return table[n];
}

int coeff_index(int i, int j) {
  const int d = i + j;
  return d * (d + 1) / 2 + j;
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

Jet::Jet(int order, double x0, double y0)
    : order_(order), x0_(x0), y0_(y0), coef_(coeff_count(order), 0.0) {
  if (order < 0 || order > kMaxOrder) throw Error("jet order out of range");
}

Jet Jet::constant(double value, int order, double x0, double y0) {
  Jet j(order, x0, y0);
  j.coef_[0] = value;
  return j;
}

Jet Jet::var_x(int order, double x0, double y0) {
  Jet j(order, x0, y0);
  j.coef_[0] = x0;
  if (order >= 1) j.coef_[coeff_index(1, 0)] = 1.0;
  return j;
}

Jet Jet::var_y(int order, double x0, double y0) {
  Jet j(order, x0, y0);
  j.coef_[0] = y0;
  if (order >= 1) j.coef_[coeff_index(0, 1)] = 1.0;
  return j;
}

double Jet::deriv(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return 0.0;
  return coef_[coeff_index(i, j)];
}

double& Jet::deriv(int i, int j) {
  return coef_[coeff_index(i, j)];
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet r(order, x0_, y0_);
  std::copy(coef_.begin(), coef_.begin() + coeff_count(order),
            r.coef_.begin());
  return r;
}

Jet Jet::d_dx() const {
  if (order_ == 0) throw Error("cannot differentiate an order-0 jet");
  Jet r(order_ - 1, x0_, y0_);
  for (int d = 0; d < order_; ++d)
    for (int j = 0; j <= d; ++j)
      r.coef_[coeff_index(d - j, j)] = coef_[coeff_index(d - j + 1, j)];
  return r;
}

Jet Jet::d_dy() const {
  if (order_ == 0) throw Error("cannot differentiate an order-0 jet");
  Jet r(order_ - 1, x0_, y0_);
  for (int d = 0; d < order_; ++d)
    for (int j = 0; j <= d; ++j)
      r.coef_[coeff_index(d - j, j)] = coef_[coeff_index(d - j, j + 1)];
  return r;
}

Jet Jet::integrate_x() const {
  Jet r(order_, x0_, y0_);
  for (int d = 0; d < order_; ++d)
    for (int j = 0; j <= d; ++j)
      r.coef_[coeff_index(d - j + 1, j)] = coef_[coeff_index(d - j, j)];
  return r;
}

void Jet::require_compatible(const Jet& o) const {
  if (order_ != o.order_ || x0_ != o.x0_ || y0_ != o.y0_)
    throw Error("jet operands have mismatched order or base point");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& c : r.coef_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  require_compatible(o);
  for (size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_compatible(o);
  for (size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coef_) c *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  const int k = a.order_;
  Jet r(k, a.x0_, a.y0_);
  // Leibniz: (fg)^(i,j) = sum C(i,p) C(j,q) f^(p,q) g^(i-p,j-q).
  for (int d = 0; d <= k; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const double* bi = binom_row(i);
      const double* bj = binom_row(j);
      double acc = 0.0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q)
          acc += bi[p] * bj[q] * a.coef_[coeff_index(p, q)] *
                 b.coef_[coeff_index(i - p, j - q)];
      r.coef_[coeff_index(i, j)] = acc;
    }
  }
  return r;
}

Jet compose_univariate(const Jet& u, std::span<const double> derivs) {
  const int k = u.order();
  if (static_cast<int>(derivs.size()) < k + 1)
    throw Error("compose_univariate: derivative list too short");
  Jet delta = u;
  delta -= u.value();
  Jet result = Jet::constant(derivs[0], k, u.x0(), u.y0());
  Jet power = Jet::constant(1.0, k, u.x0(), u.y0());
  for (int m = 1; m <= k; ++m) {
    power = power * delta;
    Jet term = power;
    term *= derivs[m] / factorial(m);
    result += term;
  }
  return result;
}

Jet operator/(const Jet& a, const Jet& b) {
  return a * reciprocal(b);
}

namespace {

std::vector<double> dlist(int k) { return std::vector<double>(k + 1, 0.0); }

}  // namespace

Jet sin(const Jet& u) {
  auto d = dlist(u.order());
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cycle[4] = {s, c, -s, -c};
  for (int m = 0; m <= u.order(); ++m) d[m] = cycle[m % 4];
  return compose_univariate(u, d);
}

Jet cos(const Jet& u) {
  auto d = dlist(u.order());
  const double s = std::sin(u.value()), c = std::cos(u.value());
  const double cycle[4] = {c, -s, -c, s};
  for (int m = 0; m <= u.order(); ++m) d[m] = cycle[m % 4];
  return compose_univariate(u, d);
}

Jet sinh(const Jet& u) {
  auto d = dlist(u.order());
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  for (int m = 0; m <= u.order(); ++m) d[m] = (m % 2 == 0) ? s : c;
  return compose_univariate(u, d);
}

Jet cosh(const Jet& u) {
  auto d = dlist(u.order());
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  for (int m = 0; m <= u.order(); ++m) d[m] = (m % 2 == 0) ? c : s;
  return compose_univariate(u, d);
}

Jet exp(const Jet& u) {
  auto d = dlist(u.order());
  const double e = std::exp(u.value());
  for (int m = 0; m <= u.order(); ++m) d[m] = e;
  return compose_univariate(u, d);
}

Jet log(const Jet& u) {
  if (u.value() <= 0.0)
    throw JetDomainError("log of a non-positive value");
  auto d = dlist(u.order());
  d[0] = std::log(u.value());
  double p = 1.0;  // (m-1)! (-1)^(m-1) / x^m
  for (int m = 1; m <= u.order(); ++m) {
    p = (m == 1) ? 1.0 / u.value() : p * (-(m - 1.0) / u.value());
    d[m] = p;
  }
  return compose_univariate(u, d);
}

Jet sqrt(const Jet& u) {
  if (u.value() <= 0.0)
    throw JetDomainError("sqrt of a non-positive value");
  // d[m] = (1/2)(1/2-1)...(1/2-m+1) x^(1/2-m).
  auto d = dlist(u.order());
  d[0] = std::sqrt(u.value());
  double p = d[0];
  for (int m = 1; m <= u.order(); ++m) {
    p *= (0.5 - (m - 1)) / u.value();
    d[m] = p;
  }
  return compose_univariate(u, d);
}

Jet reciprocal(const Jet& u) {
  if (u.value() == 0.0)
    throw JetDomainError("division by zero");
  auto d = dlist(u.order());
  double p = 1.0 / u.value();
  d[0] = p;
  for (int m = 1; m <= u.order(); ++m) {
    p *= -static_cast<double>(m) / u.value();
    d[m] = p;
  }
  return compose_univariate(u, d);
}

Jet tan(const Jet& u) {
  return sin(u) * reciprocal(cos(u));
}

Jet tanh(const Jet& u) {
  return sinh(u) * reciprocal(cosh(u));
}

Jet atan(const Jet& u) {
  // atan^(n)(x) = P_n(x) / (1+x^2)^n with P_1 = 1 and
  // P_{n+1} = P_n' (1+x^2) - 2n x P_n.
  const int k = u.order();
  auto d = dlist(k);
  d[0] = std::atan(u.value());
  std::vector<double> P{1.0};
  const double x = u.value();
  const double q = 1.0 + x * x;
  double qn = q;
  for (int n = 1; n <= k; ++n) {
    double val = 0.0, xp = 1.0;
    for (double pc : P) {
      val += pc * xp;
      xp *= x;
    }
    d[n] = val / qn;
    if (n == k) break;
    std::vector<double> next(P.size() + 1, 0.0);
    for (size_t i = 0; i < P.size(); ++i) {
      if (i >= 1) {
        next[i - 1] += static_cast<double>(i) * P[i];  // P' * 1
        next[i + 1] += static_cast<double>(i) * P[i];  // P' * x^2
      }
      next[i + 1] -= 2.0 * n * P[i];  // -2n x P
    }
    P = std::move(next);
    qn *= q;
  }
  return compose_univariate(u, d);
}

Jet pow_int(const Jet& u, long long n) {
  if (n < 0) return pow_int(reciprocal(u), -n);
  Jet result = Jet::constant(1.0, u.order(), u.x0(), u.y0());
  Jet base = u;
  long long e = n;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Jet pow_real(const Jet& u, double e) {
  if (u.value() <= 0.0)
    throw JetDomainError("non-integer power of a non-positive base");
  return exp(log(u) * e);
}

double Jet::max_abs_diff(const Jet& o) const {
  require_compatible(o);
  double m = 0.0;
  for (size_t i = 0; i < coef_.size(); ++i)
    m = std::max(m, std::abs(coef_[i] - o.coef_[i]));
  return m;
}

}  // namespace cmc
