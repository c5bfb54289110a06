#pragma once

// Conformal-chart model of the product spaces S2xR (c = +1) and H2xR
// (c = -1): metric, connection, the parallel field d_t and the closed-form
// curvature tensor of the product metric.

#include <Eigen/Dense>

#include <array>

#include "cmc/errors.hpp"

namespace cmc {

// Chart point of M2(c)xR. For c = -1 the (u,v) chart is the Poincare disk
// u^2+v^2 < 1; for c = +1 it is the stereographic plane (one antipodal
// point missing, at infinity in the chart).
struct AmbientPoint {
  double u = 0.0;
  double v = 0.0;
  double t = 0.0;
  double c = 1.0;  // curvature sign of the factor M2(c), +1 or -1
};

// Tangent vector (a_u, a_v, a_t) attached to a base point.
struct AmbientVector {
  Eigen::Vector3d comp = Eigen::Vector3d::Zero();
  AmbientPoint base;
};

bool same_point(const AmbientPoint& p, const AmbientPoint& q);

// lambda(u,v) = 2 / (1 + c(u^2+v^2)).  The ambient metric is
// lambda^2 (du^2 + dv^2) + dt^2.
double conformal_factor(const AmbientPoint& p);

Eigen::Matrix3d ambient_metric(const AmbientPoint& p);

double ambient_inner(const AmbientPoint& p, const Eigen::Vector3d& a,
                     const Eigen::Vector3d& b);

// Christoffel symbols of the product metric, christoffels[k](i,j) = G^k_ij
// with index order (u,v,t).  Every symbol with a t index vanishes.
std::array<Eigen::Matrix3d, 3> ambient_christoffels(const AmbientPoint& p);

// The parallel field d_t = (0,0,1) at p.
AmbientVector partial_t(const AmbientPoint& p);

// Horizontal part x - <x,d_t> d_t.  Idempotent.
AmbientVector star_project(const AmbientVector& x);

// <R(x,y)z, w> of the product metric, with the curvature sign convention
// R_{x,y}z = D_x D_y z - D_y D_x z - D_[x,y] z:
//
//   <R(x,y)z,w> = -c { <x*,z*><y*,w*> - <y*,z*><x*,w*> },
//
// where v* is the horizontal part of v.  All four vectors must share a
// base point.
double ambient_curvature(const AmbientVector& x, const AmbientVector& y,
                         const AmbientVector& z, const AmbientVector& w);

}  // namespace cmc
