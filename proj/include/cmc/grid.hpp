#pragma once

// Rectangular parameter grids with per-node ShapeData.  Periodic axes wrap
// with period equal to the domain length; non-periodic boundaries lose
// nodes to stencils and sup-norm cores.

#include <functional>
#include <memory>
#include <vector>

#include "cmc/immersion.hpp"

namespace cmc {

struct GridDomain {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;
  int nx = 5, ny = 5;
  bool periodic_x = false, periodic_y = false;

  double hx() const { return (x1 - x0) / (periodic_x ? nx : nx - 1); }
  double hy() const { return (y1 - y0) / (periodic_y ? ny : ny - 1); }
  double x(int i) const { return x0 + i * hx(); }
  double y(int j) const { return y0 + j * hy(); }
};

// Halving refinement that keeps nodes shared: periodic axes double the
// node count, non-periodic axes go n -> 2n-1.
GridDomain refined(const GridDomain& d);

struct CmcDeviation {
  double max_deviation = 0.0;
  double median_H = 0.0;
  int sign = 0;  // sign of the median
};

class SurfaceGrid {
 public:
  GridDomain dom;
  double c = 1.0;
  int jet_order = 3;
  bool flipped = false;  // normal orientation was flipped to make median H >= 0
  std::vector<ShapeData> nodes;  // row-major, index j*nx + i

  int idx(int i, int j) const { return j * dom.nx + i; }
  const ShapeData& at(int i, int j) const { return nodes[idx(i, j)]; }

  CmcDeviation cmc_deviation() const;
};

// Evaluate the map over the domain.  The normal orientation is chosen so
// the median H is >= 0.  Declared-periodic axes are validated: ShapeData
// at identified edges must agree to 1e-9.
SurfaceGrid build_surface_grid(const ImmersionMap& F, const GridDomain& dom,
                               double c, int jet_order = 3);

double cmc_tolerance();  // admission threshold for CMC-only identities

}  // namespace cmc
