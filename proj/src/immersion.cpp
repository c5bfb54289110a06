#include "cmc/immersion.hpp"

#include <cmath>

namespace cmc {

ExprImmersion::ExprImmersion(expr::ExprAst u, expr::ExprAst v, expr::ExprAst t,
                             std::vector<double> param_values)
    : u_(std::move(u)), v_(std::move(v)), t_(std::move(t)),
      params_(std::move(param_values)) {}

std::array<Jet, 3> ExprImmersion::eval(const Jet& x, const Jet& y) const {
  return {expr::eval_jet(u_, x, y, params_), expr::eval_jet(v_, x, y, params_),
          expr::eval_jet(t_, x, y, params_)};
}

Eigen::Matrix2d to_orthonormal(const Eigen::Matrix2d& W, const Eigen::Matrix2d& L) {
  // E = L^{-T}; W_frame = E^{-1} W E = L^T W L^{-T}.
  Eigen::Matrix2d Lt = L.transpose();
  return Lt * W * Lt.inverse();
}

double tensor_norm_sq(const Eigen::Matrix2d& W, const Eigen::Matrix2d& g) {
  Eigen::LLT<Eigen::Matrix2d> llt(g);
  Eigen::Matrix2d on = to_orthonormal(W, Eigen::Matrix2d(llt.matrixL()));
  return on.squaredNorm();
}

double tensor_norm(const Eigen::Matrix2d& W, const Eigen::Matrix2d& g) {
  return std::sqrt(tensor_norm_sq(W, g));
}

void flip_orientation(ShapeData& sd) {
  sd.N = -sd.N;
  sd.nu = -sd.nu;
  sd.A = -sd.A;
  sd.A_on = -sd.A_on;
  sd.H = -sd.H;
  sd.phi = -sd.phi;
  sd.phi_on = -sd.phi_on;
  // S, Q20, curvatures, metric data and T are orientation-invariant.
}

namespace {

// Brioschi formula: K from E,F,G and their derivatives to second order.
double brioschi(const Jet& E, const Jet& F, const Jet& G) {
  const double Ev = E.deriv(0, 1), Evv = E.deriv(0, 2), Eu = E.deriv(1, 0);
  const double Fu = F.deriv(1, 0), Fv = F.deriv(0, 1), Fuv = F.deriv(1, 1);
  const double Gu = G.deriv(1, 0), Gv = G.deriv(0, 1), Guu = G.deriv(2, 0);
  const double e = E.value(), f = F.value(), gg = G.value();

  Eigen::Matrix3d M1, M2;
  M1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
        Fv - 0.5 * Gu, e, f,
        0.5 * Gv, f, gg;
  M2 << 0.0, 0.5 * Ev, 0.5 * Gu,
        0.5 * Ev, e, f,
        0.5 * Gu, f, gg;
  const double det_g = e * gg - f * f;
  return (M1.determinant() - M2.determinant()) / (det_g * det_g);
}

}  // namespace

ShapeData shape_data(const ImmersionMap& F, double x0, double y0, double c,
                     int jet_order, bool flip_normal) {
  if (jet_order < 3)
    throw Error("shape_data requires jet order >= 3");
  if (c != 1.0 && c != -1.0)
    throw ChartDomainError("curvature sign c must be +1 or -1");

  const auto FJ = F.eval_at(x0, y0, jet_order);
  const Jet& U = FJ[0];
  const Jet& V = FJ[1];
  const Jet& Tc = FJ[2];

  ShapeData sd;
  sd.point = AmbientPoint{U.value(), V.value(), Tc.value(), c};
  const double lam = conformal_factor(sd.point);  // validates the chart domain

  // Metric as order-2 jets: g_ij = lam^2 (u_i u_j + v_i v_j) + t_i t_j.
  const int mo = jet_order - 1;
  const Jet Um = U.truncated(mo), Vm = V.truncated(mo);
  const Jet Ux = U.d_dx().truncated(mo), Uy = U.d_dy().truncated(mo);
  const Jet Vx = V.d_dx().truncated(mo), Vy = V.d_dy().truncated(mo);
  const Jet Tx = Tc.d_dx().truncated(mo), Ty = Tc.d_dy().truncated(mo);
  const Jet lam2 =
      pow_int(2.0 * reciprocal(1.0 + c * (Um * Um + Vm * Vm)), 2);
  const Jet Ej = lam2 * (Ux * Ux + Vx * Vx) + Tx * Tx;
  const Jet Fj = lam2 * (Ux * Uy + Vx * Vy) + Tx * Ty;
  const Jet Gj = lam2 * (Uy * Uy + Vy * Vy) + Ty * Ty;

  sd.g << Ej.value(), Fj.value(), Fj.value(), Gj.value();
  sd.det_g = sd.g.determinant();
  if (!(sd.det_g >= kDegenerateDetTol))
    throw DegenerateImmersionError("immersion is degenerate: det g = " +
                                   std::to_string(sd.det_g));
  sd.g_inv = sd.g.inverse();

  // Induced Christoffels from the analytic metric derivatives:
  // G^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
  double dg[2][2][2];  // dg[k][i][j] = d_k g_ij
  dg[0][0][0] = Ej.deriv(1, 0);
  dg[0][0][1] = dg[0][1][0] = Fj.deriv(1, 0);
  dg[0][1][1] = Gj.deriv(1, 0);
  dg[1][0][0] = Ej.deriv(0, 1);
  dg[1][0][1] = dg[1][1][0] = Fj.deriv(0, 1);
  dg[1][1][1] = Gj.deriv(0, 1);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 2; ++l)
          acc += sd.g_inv(k, l) * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        sd.gamma[k](i, j) = 0.5 * acc;
      }
    }
  }

  sd.K_int = brioschi(Ej, Fj, Gj);

  // Ambient tangents and the unit normal.
  sd.F_x = Eigen::Vector3d(Ux.value(), Vx.value(), Tx.value());
  sd.F_y = Eigen::Vector3d(Uy.value(), Vy.value(), Ty.value());
  const double l2 = lam * lam;
  auto lower = [l2](const Eigen::Vector3d& a) {
    return Eigen::Vector3d(l2 * a(0), l2 * a(1), a(2));
  };
  Eigen::Vector3d Ncand = lower(sd.F_x).cross(lower(sd.F_y));
  const double nlen = std::sqrt(ambient_inner(sd.point, Ncand, Ncand));
  sd.N = Ncand / nlen;
  if (flip_normal) sd.N = -sd.N;

  sd.nu = sd.N(2);
  sd.T = sd.g_inv * Eigen::Vector2d(Tx.value(), Ty.value());

  // Second fundamental form II_ij = <D_{F_i} F_j, N> via ambient
  // Christoffels, then A = g^{-1} II.
  const auto Gam = ambient_christoffels(sd.point);
  const Eigen::Vector3d Fd[2] = {sd.F_x, sd.F_y};
  Eigen::Vector3d Fdd[2][2];
  Fdd[0][0] = Eigen::Vector3d(U.deriv(2, 0), V.deriv(2, 0), Tc.deriv(2, 0));
  Fdd[0][1] = Eigen::Vector3d(U.deriv(1, 1), V.deriv(1, 1), Tc.deriv(1, 1));
  Fdd[1][0] = Fdd[0][1];
  Fdd[1][1] = Eigen::Vector3d(U.deriv(0, 2), V.deriv(0, 2), Tc.deriv(0, 2));

  Eigen::Matrix2d II;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector3d cov = Fdd[i][j];
      for (int gidx = 0; gidx < 3; ++gidx)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            cov(gidx) += Gam[gidx](a, b) * Fd[i](a) * Fd[j](b);
      II(i, j) = ambient_inner(sd.point, cov, sd.N);
    }
  }
  sd.A = sd.g_inv * II;
  sd.H = 0.5 * sd.A.trace();
  sd.phi = sd.A - sd.H * Eigen::Matrix2d::Identity();

  // S X = 2H A X - c <X,T> T + ((c/2)(1-nu^2) - 2H^2) X.
  const Eigen::Vector2d T_flat = sd.g * sd.T;  // <., T> as a covector
  sd.S = 2.0 * sd.H * sd.A - c * sd.T * T_flat.transpose() +
         (0.5 * c * (1.0 - sd.nu * sd.nu) - 2.0 * sd.H * sd.H) *
             Eigen::Matrix2d::Identity();

  // Orthonormal frame via the Cholesky factor with positive diagonal.
  Eigen::LLT<Eigen::Matrix2d> llt(sd.g);
  sd.L = llt.matrixL();
  sd.E_frame = sd.L.transpose().inverse();
  sd.A_on = sd.L.transpose() * sd.A * sd.E_frame;
  sd.phi_on = sd.L.transpose() * sd.phi * sd.E_frame;
  sd.S_on = sd.L.transpose() * sd.S * sd.E_frame;
  sd.T_on = sd.L.transpose() * sd.T;

  sd.A2 = sd.A_on.squaredNorm();
  sd.phi2 = sd.phi_on.squaredNorm();
  sd.S2 = sd.S_on.squaredNorm();

  // (2,0)-part of Q in the orthonormal frame, q_ab = 2H A_ab - c T_a T_b;
  // |Q^(2,0)|^2 = (((q11-q22)/2)^2 + q12^2) / 4.
  const Eigen::Matrix2d q =
      2.0 * sd.H * sd.A_on - c * sd.T_on * sd.T_on.transpose();
  const double qd = 0.5 * (q(0, 0) - q(1, 1));
  sd.Q20_abs2 = 0.25 * (qd * qd + q(0, 1) * q(0, 1));

  sd.K_ext = sd.A.determinant();
  return sd;
}

}  // namespace cmc
