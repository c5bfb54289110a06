#pragma once

// Intrinsic differential operators on surface grids: metric-weighted
// scalar Laplacian, covariant derivatives of operator fields, the rough
// Laplacian and the Codazzi residual.  All stencils are second-order
// centered; non-periodic boundary rings are marked invalid and sup-norms
// run over an interior core.

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "cmc/grid.hpp"

namespace cmc {

// Count of invalid node rings at each non-periodic edge.
struct Margins {
  int xlo = 0, xhi = 0, ylo = 0, yhi = 0;

  Margins grown(const GridDomain& d, int by = 1) const {
    Margins m = *this;
    if (!d.periodic_x) { m.xlo += by; m.xhi += by; }
    if (!d.periodic_y) { m.ylo += by; m.yhi += by; }
    return m;
  }
  Margins merged(const Margins& o) const {
    return Margins{std::max(xlo, o.xlo), std::max(xhi, o.xhi),
                   std::max(ylo, o.ylo), std::max(yhi, o.yhi)};
  }
};

struct ScalarField {
  const SurfaceGrid* grid = nullptr;
  std::vector<double> v;
  Margins m;

  double at(int i, int j) const { return v[grid->idx(i, j)]; }
  double& at(int i, int j) { return v[grid->idx(i, j)]; }
};

struct OperatorField {
  const SurfaceGrid* grid = nullptr;
  std::vector<Eigen::Matrix2d> v;
  Margins m;

  const Eigen::Matrix2d& at(int i, int j) const { return v[grid->idx(i, j)]; }
  Eigen::Matrix2d& at(int i, int j) { return v[grid->idx(i, j)]; }
};

ScalarField make_scalar_field(const SurfaceGrid& g,
                              const std::function<double(const ShapeData&)>& f);
OperatorField make_operator_field(
    const SurfaceGrid& g,
    const std::function<Eigen::Matrix2d(const ShapeData&)>& f);

// Metric Laplacian (1/sqrt(det g)) d_i (sqrt(det g) g^{ij} d_j f) by
// centered differences on the metric-weighted flux.
ScalarField scalar_laplacian(const ScalarField& f);

// g^{ij} d_i f d_j f by centered differences.
ScalarField scalar_gradient_sq(const ScalarField& f);

struct CovariantDerivative {
  OperatorField dx;      // (nabla_x W)^i_j
  OperatorField dy;      // (nabla_y W)^i_j
  ScalarField norm_sq;   // |nabla W|^2
};

CovariantDerivative covariant_derivative(const OperatorField& W);

// |(nabla_{f1} W) f2 - (nabla_{f2} W) f1| in the orthonormal frame, plus
// its interior-core sup.
ScalarField codazzi_residual_field(const OperatorField& W);

// Rough Laplacian: trace of the second covariant derivative, by nested
// first-derivative stencils.  Needs >= 9 nodes per non-periodic axis.
OperatorField rough_laplacian(const OperatorField& W);

// <P, Q> = tr(P^T g Q g^{-1}) per node (the tensor inner product).
ScalarField operator_inner_field(const OperatorField& P, const OperatorField& Q);

double operator_inner(const Eigen::Matrix2d& P, const Eigen::Matrix2d& Q,
                      const ShapeData& sd);

// Sup and mean of |field| over the interior core: nodes at least
// max(2, margin) rings inside each non-periodic edge, measured in physical
// units so grids of different spacing can be compared over a common core.
struct CoreStats {
  double sup = 0.0;
  double mean = 0.0;
  long count = 0;
};
CoreStats core_stats(const ScalarField& f, double phys_x, double phys_y);

// Physical core margin this field needs on its own grid.
double own_core_margin_x(const ScalarField& f);
double own_core_margin_y(const ScalarField& f);

// Metric-weighted grid sum  sum sqrt(det g) f h_x h_y  (discrete integral).
double weighted_sum(const ScalarField& f);

}  // namespace cmc
