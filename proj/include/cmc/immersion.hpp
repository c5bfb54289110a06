#pragma once

// Pointwise geometry of an immersed surface in M2(c)xR computed from jets
// of the immersion map: induced metric and connection, unit normal, the
// angle function nu, the tangential field T, the Weingarten operator A,
// the traceless part phi, the operator S and the squared modulus of the
// (2,0)-part of the quadratic differential Q.

#include <Eigen/Dense>

#include <array>
#include <memory>

#include "cmc/ambient.hpp"
#include "cmc/expr.hpp"
#include "cmc/jet.hpp"

namespace cmc {

// An immersion map (x,y) -> (u,v,t) evaluated on jets, so derivatives are
// exact to the jet order and maps compose (reparametrization = feeding
// composed coordinate jets).
struct ImmersionMap {
  virtual ~ImmersionMap() = default;
  virtual std::array<Jet, 3> eval(const Jet& x, const Jet& y) const = 0;

  std::array<Jet, 3> eval_at(double x0, double y0, int order) const {
    return eval(Jet::var_x(order, x0, y0), Jet::var_y(order, x0, y0));
  }
};

// Immersion defined by three DSL expressions sharing one parameter list.
class ExprImmersion : public ImmersionMap {
 public:
  ExprImmersion(expr::ExprAst u, expr::ExprAst v, expr::ExprAst t,
                std::vector<double> param_values);
  std::array<Jet, 3> eval(const Jet& x, const Jet& y) const override;

 private:
  expr::ExprAst u_, v_, t_;
  std::vector<double> params_;
};

struct ShapeData {
  AmbientPoint point;

  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();      // induced metric
  Eigen::Matrix2d g_inv = Eigen::Matrix2d::Zero();
  double det_g = 0.0;
  std::array<Eigen::Matrix2d, 2> gamma{};           // gamma[k](i,j) = G^k_ij

  Eigen::Vector3d F_x = Eigen::Vector3d::Zero();    // ambient tangents dF
  Eigen::Vector3d F_y = Eigen::Vector3d::Zero();
  Eigen::Vector3d N = Eigen::Vector3d::Zero();      // unit normal
  double nu = 0.0;                                  // <N, d_t>
  Eigen::Vector2d T = Eigen::Vector2d::Zero();      // tangential part of d_t,
                                                    // parameter frame
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();      // Weingarten, mixed indices
  double H = 0.0;                                   // tr(A)/2
  Eigen::Matrix2d phi = Eigen::Matrix2d::Zero();    // A - H I
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();

  // Orthonormal-frame data.  g = L L^T (Cholesky, positive diagonal);
  // frame vectors are the columns of E = L^{-T}.
  Eigen::Matrix2d L = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d E_frame = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d A_on = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d phi_on = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d S_on = Eigen::Matrix2d::Zero();
  Eigen::Vector2d T_on = Eigen::Vector2d::Zero();

  double A2 = 0.0;        // |A|^2
  double phi2 = 0.0;      // |phi|^2
  double S2 = 0.0;        // |S|^2
  double Q20_abs2 = 0.0;  // |Q^(2,0)|^2, pinned convention |S|^2 / 8
  double K_int = 0.0;     // intrinsic Gauss curvature (Brioschi on g)
  double K_ext = 0.0;     // det A
};

inline constexpr double kDegenerateDetTol = 1e-12;

// Compute all pointwise data at parameter point (x0,y0).  jet_order >= 3
// (order-3 jets of F give order-2 jets of g, enough for the Brioschi
// curvature and the analytic induced Christoffels).
ShapeData shape_data(const ImmersionMap& F, double x0, double y0, double c,
                     int jet_order = 3, bool flip_normal = false);

// Operator to orthonormal-frame components: L^T W L^{-T}.
Eigen::Matrix2d to_orthonormal(const Eigen::Matrix2d& W, const Eigen::Matrix2d& L);

// |W|^2 = sum of squared orthonormal-frame components; frame independent.
double tensor_norm_sq(const Eigen::Matrix2d& W, const Eigen::Matrix2d& g);
double tensor_norm(const Eigen::Matrix2d& W, const Eigen::Matrix2d& g);

// Flip the normal orientation of already-computed data in place.
void flip_orientation(ShapeData& sd);

}  // namespace cmc
