#pragma once

// Shared test helpers: finite-difference oracles, refinement comparisons
// and common grids.

#include <cmath>
#include <functional>

#include "cmc/calculus.hpp"

namespace testsupport {

// Nested central differences.  The step is adapted to the derivative
// order: for third derivatives a 1e-4 step leaves only ~1e-4 relative
// accuracy in doubles, so higher orders use a larger step.
inline double fd_step(int total_order) {
  return total_order <= 2 ? 1e-4 : 1.5e-3;
}

inline double fd_deriv(const std::function<double(double, double)>& f,
                       double x0, double y0, int i, int j, double h) {
  if (i > 0)
    return (fd_deriv(f, x0 + h, y0, i - 1, j, h) -
            fd_deriv(f, x0 - h, y0, i - 1, j, h)) /
           (2 * h);
  if (j > 0)
    return (fd_deriv(f, x0, y0 + h, i, j - 1, h) -
            fd_deriv(f, x0, y0 - h, i, j - 1, h)) /
           (2 * h);
  return f(x0, y0);
}

inline double fd_deriv(const std::function<double(double, double)>& f,
                       double x0, double y0, int i, int j) {
  const double h = fd_step(i + j);
  if (i + j < 3) return fd_deriv(f, x0, y0, i, j, h);
  // Richardson extrapolation keeps third derivatives accurate even where
  // the fifth derivative is large.
  const double d1 = fd_deriv(f, x0, y0, i, j, h);
  const double d2 = fd_deriv(f, x0, y0, i, j, 0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

// Sup over shared core nodes of |coarse - fine| where the fine grid is the
// node-sharing refinement of the coarse one (coarse (i,j) <-> fine (2i,2j)).
inline double shared_sup_diff(const cmc::ScalarField& coarse,
                              const cmc::ScalarField& fine, double phys_x,
                              double phys_y) {
  const auto& d = coarse.grid->dom;
  double sup = 0.0;
  for (int j = 0; j < d.ny; ++j) {
    const double yy = d.y(j);
    if (!d.periodic_y && (yy - d.y0 < phys_y - 1e-12 || d.y1 - yy < phys_y - 1e-12))
      continue;
    for (int i = 0; i < d.nx; ++i) {
      const double xx = d.x(i);
      if (!d.periodic_x && (xx - d.x0 < phys_x - 1e-12 || d.x1 - xx < phys_x - 1e-12))
        continue;
      sup = std::max(sup, std::abs(coarse.at(i, j) - fine.at(2 * i, 2 * j)));
    }
  }
  return sup;
}

}  // namespace testsupport
