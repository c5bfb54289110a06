#include "cmc/ambient.hpp"

#include <cmath>

namespace cmc {

namespace {

void check_chart(const AmbientPoint& p) {
  if (p.c != 1.0 && p.c != -1.0) {
    throw ChartDomainError("curvature sign c must be +1 or -1");
  }
  const double denom = 1.0 + p.c * (p.u * p.u + p.v * p.v);
  if (denom <= 0.0 || !std::isfinite(denom)) {
    throw ChartDomainError(
        p.c < 0 ? "point outside the Poincare disk (u^2+v^2 >= 1)"
                : "conformal denominator degenerate (chart antipode)");
  }
}

}  // namespace

bool same_point(const AmbientPoint& p, const AmbientPoint& q) {
  return p.u == q.u && p.v == q.v && p.t == q.t && p.c == q.c;
}

double conformal_factor(const AmbientPoint& p) {
  check_chart(p);
  return 2.0 / (1.0 + p.c * (p.u * p.u + p.v * p.v));
}

Eigen::Matrix3d ambient_metric(const AmbientPoint& p) {
  const double l2 = conformal_factor(p) * conformal_factor(p);
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 0) = l2;
  g(1, 1) = l2;
  g(2, 2) = 1.0;
  return g;
}

double ambient_inner(const AmbientPoint& p, const Eigen::Vector3d& a,
                     const Eigen::Vector3d& b) {
  const double l2 = conformal_factor(p) * conformal_factor(p);
  return l2 * (a(0) * b(0) + a(1) * b(1)) + a(2) * b(2);
}

std::array<Eigen::Matrix3d, 3> ambient_christoffels(const AmbientPoint& p) {
  check_chart(p);
  // For the conformal factor lambda, with l = log(lambda):
  //   G^u_uu = l_u, G^u_uv = l_v, G^u_vv = -l_u,
  //   G^v_vv = l_v, G^v_uv = l_u, G^v_uu = -l_v,
  // and every symbol with a t index is zero (product metric).
  const double denom = 1.0 + p.c * (p.u * p.u + p.v * p.v);
  const double lu = -2.0 * p.c * p.u / denom;
  const double lv = -2.0 * p.c * p.v / denom;

  std::array<Eigen::Matrix3d, 3> G;
  for (auto& m : G) m = Eigen::Matrix3d::Zero();
  G[0](0, 0) = lu;
  G[0](0, 1) = lv;
  G[0](1, 0) = lv;
  G[0](1, 1) = -lu;
  G[1](0, 0) = -lv;
  G[1](0, 1) = lu;
  G[1](1, 0) = lu;
  G[1](1, 1) = lv;
  return G;
}

AmbientVector partial_t(const AmbientPoint& p) {
  return AmbientVector{Eigen::Vector3d(0.0, 0.0, 1.0), p};
}

AmbientVector star_project(const AmbientVector& x) {
  AmbientVector h = x;
  h.comp(2) = 0.0;
  return h;
}

double ambient_curvature(const AmbientVector& x, const AmbientVector& y,
                         const AmbientVector& z, const AmbientVector& w) {
  if (!same_point(x.base, y.base) || !same_point(x.base, z.base) ||
      !same_point(x.base, w.base)) {
    throw Error("ambient_curvature: mismatched base points");
  }
  const AmbientPoint& p = x.base;
  const double l2 = conformal_factor(p) * conformal_factor(p);
  auto hdot = [l2](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return l2 * (a(0) * b(0) + a(1) * b(1));
  };
  return -p.c * (hdot(x.comp, z.comp) * hdot(y.comp, w.comp) -
                 hdot(y.comp, z.comp) * hdot(x.comp, w.comp));
}

}  // namespace cmc
