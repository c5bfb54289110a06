#include "cmc/calculus.hpp"

#include <cmath>

namespace cmc {

namespace {

void require_stencil_room(const SurfaceGrid& g, int rings) {
  const int need = 2 * rings + 1;
  if ((!g.dom.periodic_x && g.dom.nx < need) ||
      (!g.dom.periodic_y && g.dom.ny < need) ||
      g.dom.nx < 5 || g.dom.ny < 5)
    throw GridError("grid too small for the requested stencil");
}

// Wrapped index for a periodic axis; -1 if outside a non-periodic axis.
inline int wrap(int i, int n, bool periodic) {
  if (periodic) {
    i %= n;
    return i < 0 ? i + n : i;
  }
  return (i < 0 || i >= n) ? -1 : i;
}

}  // namespace

ScalarField make_scalar_field(const SurfaceGrid& g,
                              const std::function<double(const ShapeData&)>& f) {
  ScalarField out{&g, std::vector<double>(g.nodes.size()), Margins{}};
  for (size_t k = 0; k < g.nodes.size(); ++k) out.v[k] = f(g.nodes[k]);
  return out;
}

OperatorField make_operator_field(
    const SurfaceGrid& g,
    const std::function<Eigen::Matrix2d(const ShapeData&)>& f) {
  OperatorField out{&g, std::vector<Eigen::Matrix2d>(g.nodes.size()), Margins{}};
  for (size_t k = 0; k < g.nodes.size(); ++k) out.v[k] = f(g.nodes[k]);
  return out;
}

namespace {

// Centered partial derivatives of a scalar field; caller guarantees the
// neighbors exist (interior/periodic node).
inline double ddx(const ScalarField& f, int i, int j) {
  const auto& d = f.grid->dom;
  const int ip = wrap(i + 1, d.nx, d.periodic_x);
  const int im = wrap(i - 1, d.nx, d.periodic_x);
  return (f.at(ip, j) - f.at(im, j)) / (2.0 * d.hx());
}

inline double ddy(const ScalarField& f, int i, int j) {
  const auto& d = f.grid->dom;
  const int jp = wrap(j + 1, d.ny, d.periodic_y);
  const int jm = wrap(j - 1, d.ny, d.periodic_y);
  return (f.at(i, jp) - f.at(i, jm)) / (2.0 * d.hy());
}

inline Eigen::Matrix2d ddx(const OperatorField& f, int i, int j) {
  const auto& d = f.grid->dom;
  const int ip = wrap(i + 1, d.nx, d.periodic_x);
  const int im = wrap(i - 1, d.nx, d.periodic_x);
  return (f.at(ip, j) - f.at(im, j)) / (2.0 * d.hx());
}

inline Eigen::Matrix2d ddy(const OperatorField& f, int i, int j) {
  const auto& d = f.grid->dom;
  const int jp = wrap(j + 1, d.ny, d.periodic_y);
  const int jm = wrap(j - 1, d.ny, d.periodic_y);
  return (f.at(i, jp) - f.at(i, jm)) / (2.0 * d.hy());
}

struct NodeRange {
  int i0, i1, j0, j1;  // half-open in each axis
};

NodeRange valid_range(const GridDomain& d, const Margins& m) {
  return NodeRange{d.periodic_x ? 0 : m.xlo, d.periodic_x ? d.nx : d.nx - m.xhi,
                   d.periodic_y ? 0 : m.ylo, d.periodic_y ? d.ny : d.ny - m.yhi};
}

template <typename Field, typename Fn>
void for_valid(Field& out, const Fn& fn) {
  const NodeRange r = valid_range(out.grid->dom, out.m);
  for (int j = r.j0; j < r.j1; ++j)
    for (int i = r.i0; i < r.i1; ++i) fn(i, j);
}

}  // namespace

ScalarField scalar_laplacian(const ScalarField& f) {
  const SurfaceGrid& g = *f.grid;
  require_stencil_room(g, 2);

  // Flux components sqrt(det g) g^{ij} d_j f at nodes.
  ScalarField fx{&g, std::vector<double>(g.nodes.size(), 0.0), f.m.grown(g.dom)};
  ScalarField fy = fx;
  for_valid(fx, [&](int i, int j) {
    const ShapeData& sd = g.at(i, j);
    const double sq = std::sqrt(sd.det_g);
    const double dxf = ddx(f, i, j), dyf = ddy(f, i, j);
    fx.at(i, j) = sq * (sd.g_inv(0, 0) * dxf + sd.g_inv(0, 1) * dyf);
    fy.at(i, j) = sq * (sd.g_inv(1, 0) * dxf + sd.g_inv(1, 1) * dyf);
  });

  ScalarField out{&g, std::vector<double>(g.nodes.size(), 0.0),
                  fx.m.grown(g.dom)};
  for_valid(out, [&](int i, int j) {
    const double sq = std::sqrt(g.at(i, j).det_g);
    out.at(i, j) = (ddx(fx, i, j) + ddy(fy, i, j)) / sq;
  });
  return out;
}

ScalarField scalar_gradient_sq(const ScalarField& f) {
  const SurfaceGrid& g = *f.grid;
  require_stencil_room(g, 1);
  ScalarField out{&g, std::vector<double>(g.nodes.size(), 0.0), f.m.grown(g.dom)};
  for_valid(out, [&](int i, int j) {
    const ShapeData& sd = g.at(i, j);
    const Eigen::Vector2d df(ddx(f, i, j), ddy(f, i, j));
    out.at(i, j) = df.dot(sd.g_inv * df);
  });
  return out;
}

namespace {

// (nabla_k W)^i_j = d_k W^i_j + G^i_kl W^l_j - G^l_kj W^i_l.
Eigen::Matrix2d cov_component(const OperatorField& W, int i, int j, int k) {
  const ShapeData& sd = W.grid->at(i, j);
  Eigen::Matrix2d d = (k == 0) ? ddx(W, i, j) : ddy(W, i, j);
  const Eigen::Matrix2d& Wm = W.at(i, j);
  Eigen::Matrix2d gk;  // gk(i,l) = G^i_{k l}
  gk << sd.gamma[0](k, 0), sd.gamma[0](k, 1), sd.gamma[1](k, 0), sd.gamma[1](k, 1);
  return d + gk * Wm - Wm * gk;
}

}  // namespace

double operator_inner(const Eigen::Matrix2d& P, const Eigen::Matrix2d& Q,
                      const ShapeData& sd) {
  return (P.transpose() * sd.g * Q * sd.g_inv).trace();
}

CovariantDerivative covariant_derivative(const OperatorField& W) {
  const SurfaceGrid& g = *W.grid;
  require_stencil_room(g, 1);
  const Margins m = W.m.grown(g.dom);
  CovariantDerivative out{
      {&g, std::vector<Eigen::Matrix2d>(g.nodes.size(), Eigen::Matrix2d::Zero()), m},
      {&g, std::vector<Eigen::Matrix2d>(g.nodes.size(), Eigen::Matrix2d::Zero()), m},
      {&g, std::vector<double>(g.nodes.size(), 0.0), m}};
  for_valid(out.norm_sq, [&](int i, int j) {
    const ShapeData& sd = g.at(i, j);
    const Eigen::Matrix2d cx = cov_component(W, i, j, 0);
    const Eigen::Matrix2d cy = cov_component(W, i, j, 1);
    out.dx.at(i, j) = cx;
    out.dy.at(i, j) = cy;
    out.norm_sq.at(i, j) = sd.g_inv(0, 0) * operator_inner(cx, cx, sd) +
                           2.0 * sd.g_inv(0, 1) * operator_inner(cx, cy, sd) +
                           sd.g_inv(1, 1) * operator_inner(cy, cy, sd);
  });
  return out;
}

ScalarField codazzi_residual_field(const OperatorField& W) {
  const SurfaceGrid& g = *W.grid;
  require_stencil_room(g, 1);
  ScalarField out{&g, std::vector<double>(g.nodes.size(), 0.0), W.m.grown(g.dom)};
  for_valid(out, [&](int i, int j) {
    const ShapeData& sd = g.at(i, j);
    const Eigen::Matrix2d cx = cov_component(W, i, j, 0);
    const Eigen::Matrix2d cy = cov_component(W, i, j, 1);
    // (nabla_{f_a} W) = sum_k E(k,a) (nabla_k W); apply to the other frame
    // vector and take the difference.
    const Eigen::Matrix2d c1 = sd.E_frame(0, 0) * cx + sd.E_frame(1, 0) * cy;
    const Eigen::Matrix2d c2 = sd.E_frame(0, 1) * cx + sd.E_frame(1, 1) * cy;
    const Eigen::Vector2d f1 = sd.E_frame.col(0), f2 = sd.E_frame.col(1);
    const Eigen::Vector2d r = c1 * f2 - c2 * f1;
    out.at(i, j) = std::sqrt(r.dot(sd.g * r));
  });
  return out;
}

OperatorField rough_laplacian(const OperatorField& W) {
  const SurfaceGrid& g = *W.grid;
  if ((!g.dom.periodic_x && g.dom.nx < 9) || (!g.dom.periodic_y && g.dom.ny < 9))
    throw GridError("rough_laplacian needs at least 9 nodes per non-periodic axis");
  CovariantDerivative first = covariant_derivative(W);

  OperatorField out{&g,
                    std::vector<Eigen::Matrix2d>(g.nodes.size(), Eigen::Matrix2d::Zero()),
                    first.dx.m.grown(g.dom)};
  // Second covariant derivative of the (1,2) field T^i_{kj} = (nabla_k W)^i_j:
  //   (nabla_l T)^i_{kj} = d_l T^i_{kj} + G^i_{lm} T^m_{kj}
  //                        - G^m_{lk} T^i_{mj} - G^m_{lj} T^i_{km},
  // then (nabla^2 W)^i_j = g^{lk} (nabla_l T)^i_{kj}.
  for_valid(out, [&](int i, int j) {
    const ShapeData& sd = g.at(i, j);
    const OperatorField* comp[2] = {&first.dx, &first.dy};
    Eigen::Matrix2d gl[2];
    for (int l = 0; l < 2; ++l)
      gl[l] << sd.gamma[0](l, 0), sd.gamma[0](l, 1), sd.gamma[1](l, 0),
          sd.gamma[1](l, 1);

    Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
    for (int l = 0; l < 2; ++l) {
      for (int k = 0; k < 2; ++k) {
        Eigen::Matrix2d d =
            (l == 0) ? ddx(*comp[k], i, j) : ddy(*comp[k], i, j);
        Eigen::Matrix2d term = d + gl[l] * comp[k]->at(i, j) -
                               comp[k]->at(i, j) * gl[l];
        for (int m = 0; m < 2; ++m)
          term -= sd.gamma[m](l, k) * comp[m]->at(i, j);
        acc += sd.g_inv(l, k) * term;
      }
    }
    out.at(i, j) = acc;
  });
  return out;
}

ScalarField operator_inner_field(const OperatorField& P, const OperatorField& Q) {
  const SurfaceGrid& g = *P.grid;
  ScalarField out{&g, std::vector<double>(g.nodes.size(), 0.0), P.m.merged(Q.m)};
  for_valid(out, [&](int i, int j) {
    out.at(i, j) = operator_inner(P.at(i, j), Q.at(i, j), g.at(i, j));
  });
  return out;
}

double own_core_margin_x(const ScalarField& f) {
  const auto& d = f.grid->dom;
  if (d.periodic_x) return 0.0;
  return std::max(2, std::max(f.m.xlo, f.m.xhi)) * d.hx();
}

double own_core_margin_y(const ScalarField& f) {
  const auto& d = f.grid->dom;
  if (d.periodic_y) return 0.0;
  return std::max(2, std::max(f.m.ylo, f.m.yhi)) * d.hy();
}

CoreStats core_stats(const ScalarField& f, double phys_x, double phys_y) {
  const auto& d = f.grid->dom;
  const double eps = 1e-12 * std::max(d.x1 - d.x0, d.y1 - d.y0);
  CoreStats st;
  double acc = 0.0;
  const NodeRange r = valid_range(d, f.m);
  for (int j = r.j0; j < r.j1; ++j) {
    const double yy = d.y(j);
    if (!d.periodic_y && (yy - d.y0 < phys_y - eps || d.y1 - yy < phys_y - eps))
      continue;
    for (int i = r.i0; i < r.i1; ++i) {
      const double xx = d.x(i);
      if (!d.periodic_x && (xx - d.x0 < phys_x - eps || d.x1 - xx < phys_x - eps))
        continue;
      const double a = std::abs(f.at(i, j));
      st.sup = std::max(st.sup, a);
      acc += a;
      ++st.count;
    }
  }
  if (st.count > 0) st.mean = acc / st.count;
  return st;
}

double weighted_sum(const ScalarField& f) {
  const auto& d = f.grid->dom;
  double acc = 0.0;
  const NodeRange r = valid_range(d, f.m);
  for (int j = r.j0; j < r.j1; ++j)
    for (int i = r.i0; i < r.i1; ++i)
      acc += std::sqrt(f.grid->at(i, j).det_g) * f.at(i, j);
  return acc * d.hx() * d.hy();
}

}  // namespace cmc
