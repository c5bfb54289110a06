#include "cmc/grid.hpp"

#include <algorithm>
#include <cmath>

namespace cmc {

GridDomain refined(const GridDomain& d) {
  GridDomain r = d;
  r.nx = d.periodic_x ? 2 * d.nx : 2 * d.nx - 1;
  r.ny = d.periodic_y ? 2 * d.ny : 2 * d.ny - 1;
  return r;
}

double cmc_tolerance() { return 1e-6; }

CmcDeviation SurfaceGrid::cmc_deviation() const {
  std::vector<double> hs;
  hs.reserve(nodes.size());
  for (const auto& sd : nodes) hs.push_back(sd.H);
  std::sort(hs.begin(), hs.end());
  const size_t n = hs.size();
  const double med =
      n % 2 == 1 ? hs[n / 2] : 0.5 * (hs[n / 2 - 1] + hs[n / 2]);
  double dev = 0.0;
  for (double h : hs) dev = std::max(dev, std::abs(h - med));
  return CmcDeviation{dev, med, med > 0 ? 1 : (med < 0 ? -1 : 0)};
}

namespace {

double shape_edge_distance(const ShapeData& a, const ShapeData& b) {
  double d = 0.0;
  d = std::max(d, (a.g - b.g).cwiseAbs().maxCoeff());
  d = std::max(d, (a.A - b.A).cwiseAbs().maxCoeff());
  d = std::max(d, (a.S - b.S).cwiseAbs().maxCoeff());
  d = std::max(d, std::abs(a.nu - b.nu));
  d = std::max(d, std::abs(a.H - b.H));
  return d;
}

}  // namespace

SurfaceGrid build_surface_grid(const ImmersionMap& F, const GridDomain& dom,
                               double c, int jet_order) {
  if (dom.nx < 5 || dom.ny < 5)
    throw GridError("grid too small: need at least 5 nodes per axis");
  if (!(dom.x1 > dom.x0) || !(dom.y1 > dom.y0))
    throw GridError("empty grid domain");

  SurfaceGrid grid;
  grid.dom = dom;
  grid.c = c;
  grid.jet_order = jet_order;
  grid.nodes.resize(static_cast<size_t>(dom.nx) * dom.ny);

  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i)
      grid.nodes[grid.idx(i, j)] =
          shape_data(F, dom.x(i), dom.y(j), c, jet_order);

  if (grid.cmc_deviation().median_H < 0.0) {
    grid.flipped = true;
    for (auto& sd : grid.nodes) flip_orientation(sd);
  }

  // Identified edges of a declared-periodic axis must carry the same
  // geometry.
  constexpr double kEdgeTol = 1e-9;
  if (dom.periodic_x) {
    for (int j = 0; j < dom.ny; j += std::max(1, dom.ny / 16)) {
      ShapeData wrap = shape_data(F, dom.x0 + (dom.x1 - dom.x0), dom.y(j), c,
                                  jet_order, grid.flipped);
      if (shape_edge_distance(grid.at(0, j), wrap) > kEdgeTol)
        throw GridError("x axis declared periodic but geometry differs at the identified edge");
    }
  }
  if (dom.periodic_y) {
    for (int i = 0; i < dom.nx; i += std::max(1, dom.nx / 16)) {
      ShapeData wrap = shape_data(F, dom.x(i), dom.y0 + (dom.y1 - dom.y0), c,
                                  jet_order, grid.flipped);
      if (shape_edge_distance(grid.at(i, 0), wrap) > kEdgeTol)
        throw GridError("y axis declared periodic but geometry differs at the identified edge");
    }
  }
  return grid;
}

}  // namespace cmc
