#include "cmc/identities.hpp"

#include <cmath>

namespace cmc {

namespace {

void require_cmc(const SurfaceGrid& g) {
  const auto dev = g.cmc_deviation();
  if (dev.max_deviation > cmc_tolerance())
    throw PreconditionError("surface is not CMC: cmc_deviation = " +
                            std::to_string(dev.max_deviation));
}

void require_nonzero_H(const SurfaceGrid& g) {
  if (std::abs(g.cmc_deviation().median_H) < 1e-6)
    throw PreconditionError("identity requires nonzero mean curvature");
}

// Push a tangent vector given in the parameter frame to an AmbientVector.
AmbientVector push(const ShapeData& sd, const Eigen::Vector2d& v) {
  return AmbientVector{v(0) * sd.F_x + v(1) * sd.F_y, sd.point};
}

ScalarField zero_field(const SurfaceGrid& g) {
  return ScalarField{&g, std::vector<double>(g.nodes.size(), 0.0), Margins{}};
}

OperatorField field_A(const SurfaceGrid& g) {
  return make_operator_field(g, [](const ShapeData& sd) { return sd.A; });
}
OperatorField field_phi(const SurfaceGrid& g) {
  return make_operator_field(g, [](const ShapeData& sd) { return sd.phi; });
}
OperatorField field_S(const SurfaceGrid& g) {
  return make_operator_field(g, [](const ShapeData& sd) { return sd.S; });
}

}  // namespace

STraces s_traces(const ShapeData& sd) {
  STraces t;
  const Eigen::Vector2d ST = sd.S_on * sd.T_on;
  t.ST_sq = ST.squaredNorm();
  t.STT = sd.T_on.dot(ST);
  const double c = sd.point.c, H = sd.H;
  t.tr_AS = (sd.S2 + c * t.STT) / (2.0 * H);
  t.tr_AS2 = c / (2.0 * H) * t.ST_sq +
             (H - c / (4.0 * H) * (1.0 - sd.nu * sd.nu)) * sd.S2;
  return t;
}

STraces s_traces_direct(const ShapeData& sd) {
  STraces t;
  const Eigen::Vector2d ST = sd.S_on * sd.T_on;
  t.ST_sq = ST.squaredNorm();
  t.STT = sd.T_on.dot(ST);
  t.tr_AS = (sd.A_on * sd.S_on).trace();
  t.tr_AS2 = (sd.A_on * sd.S_on * sd.S_on).trace();
  return t;
}

// ---------------------------------------------------------------------------
// Analytic (stencil-free) identities

ScalarField gauss_residual_field(const SurfaceGrid& g) {
  ScalarField out = zero_field(g);
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    const ShapeData& sd = g.nodes[n];
    const double c = g.c;
    const Eigen::Matrix2d& A = sd.A_on;
    const Eigen::Vector2d& T = sd.T_on;
    auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    double worst = 0.0;
    // R(f_a, f_b) f_i = K (delta_{bi} f_a - delta_{ai} f_b) intrinsically;
    // the extrinsic side follows the Gauss equation term by term.
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const double lhs = sd.K_int * (kron(b, i) * kron(a, j) -
                                           kron(a, i) * kron(b, j));
            const double rhs =
                A(b, i) * A(a, j) - A(a, i) * A(b, j) +
                c * (kron(b, i) * kron(a, j) - kron(a, i) * kron(b, j) -
                     T(a) * kron(b, i) * T(j) - T(b) * T(i) * kron(a, j) +
                     T(b) * kron(a, i) * T(j) + T(a) * T(i) * kron(b, j));
            worst = std::max(worst, std::abs(lhs - rhs));
          }
    out.v[n] = worst;
  }
  return out;
}

ScalarField rbar_A_residual_field(const SurfaceGrid& g) {
  ScalarField out = zero_field(g);
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    const ShapeData& sd = g.nodes[n];
    const double c = g.c, H = sd.H, nu2 = sd.nu * sd.nu;

    AmbientVector e[2] = {push(sd, sd.E_frame.col(0)), push(sd, sd.E_frame.col(1))};
    AmbientVector Ae[2] = {push(sd, sd.A * sd.E_frame.col(0)),
                           push(sd, sd.A * sd.E_frame.col(1))};
    AmbientVector Nv{sd.N, sd.point};

    // <Rbar(A)x,y> = sum_i ( -<Ax, R_{e_i,y} e_i> - <Ay, R_{e_i,x} e_i>
    //   + <Ay,x><N, R_{e_i,N} e_i> - 2 <A e_i, R_{e_i,x} y> ).
    Eigen::Matrix2d lhs;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double acc = 0.0;
        for (int i = 0; i < 2; ++i) {
          acc -= ambient_curvature(e[i], e[b], e[i], Ae[a]);
          acc -= ambient_curvature(e[i], e[a], e[i], Ae[b]);
          acc += sd.A_on(a, b) * ambient_curvature(e[i], Nv, e[i], Nv);
          acc -= 2.0 * ambient_curvature(e[i], e[a], e[b], Ae[i]);
        }
        lhs(a, b) = acc;
      }
    }
    const Eigen::Matrix2d rhs =
        c * (5.0 * nu2 - 1.0) * sd.A_on -
        4.0 * c * H * nu2 * Eigen::Matrix2d::Identity();
    out.v[n] = (lhs - rhs).cwiseAbs().maxCoeff();
  }
  return out;
}

ScalarField normal_curvature_residual_field(const SurfaceGrid& g) {
  ScalarField out = zero_field(g);
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    const ShapeData& sd = g.nodes[n];
    AmbientVector e[2] = {push(sd, sd.E_frame.col(0)), push(sd, sd.E_frame.col(1))};
    AmbientVector Nv{sd.N, sd.point};
    const double T2 = sd.T_on.squaredNorm();
    double worst = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double lhs = ambient_curvature(Nv, e[a], e[b], Nv);
        const double rhs =
            -g.c * (sd.T_on(a) * sd.T_on(b) - (a == b ? 1.0 : 0.0) * T2);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    out.v[n] = worst;
  }
  return out;
}

ScalarField ar_differential_residual_field(const SurfaceGrid& g) {
  ScalarField out = zero_field(g);
  for (size_t n = 0; n < g.nodes.size(); ++n)
    out.v[n] = std::abs(g.nodes[n].Q20_abs2 - g.nodes[n].S2 / 8.0);
  return out;
}

// ---------------------------------------------------------------------------
// Stencil identities

ScalarField hessian_A_residual_field(const SurfaceGrid& g) {
  require_cmc(g);
  OperatorField lap = rough_laplacian(field_A(g));
  ScalarField out = zero_field(g);
  out.m = lap.m;
  for (int j = 0; j < g.dom.ny; ++j)
    for (int i = 0; i < g.dom.nx; ++i) {
      const ShapeData& sd = g.at(i, j);
      const double c = g.c, H = sd.H, nu2 = sd.nu * sd.nu;
      const Eigen::Matrix2d lhs = to_orthonormal(lap.at(i, j), sd.L);
      const Eigen::Matrix2d rhs =
          (-sd.A2 + c * (5.0 * nu2 - 1.0)) * sd.A_on -
          4.0 * c * H * nu2 * Eigen::Matrix2d::Identity() -
          2.0 * c * H *
              (sd.T_on * sd.T_on.transpose() -
               sd.T_on.squaredNorm() * Eigen::Matrix2d::Identity()) +
          2.0 * H * sd.A_on * sd.A_on;
      out.at(i, j) = (lhs - rhs).cwiseAbs().maxCoeff();
    }
  return out;
}

ScalarField trace_hessian_A_I_residual_field(const SurfaceGrid& g) {
  require_cmc(g);
  OperatorField lap = rough_laplacian(field_A(g));
  ScalarField out = zero_field(g);
  out.m = lap.m;
  for (int j = 0; j < g.dom.ny; ++j)
    for (int i = 0; i < g.dom.nx; ++i)
      out.at(i, j) = std::abs(to_orthonormal(lap.at(i, j), g.at(i, j).L).trace());
  return out;
}

ScalarField trace_hessian_A_A_residual_field(const SurfaceGrid& g) {
  require_cmc(g);
  OperatorField lap = rough_laplacian(field_A(g));
  ScalarField out = zero_field(g);
  out.m = lap.m;
  for (int j = 0; j < g.dom.ny; ++j)
    for (int i = 0; i < g.dom.nx; ++i) {
      const ShapeData& sd = g.at(i, j);
      const double c = g.c, H = sd.H, nu2 = sd.nu * sd.nu;
      const double lhs =
          (to_orthonormal(lap.at(i, j), sd.L).transpose() * sd.A_on).trace();
      const double ATT = sd.T_on.dot(sd.A_on * sd.T_on);
      const double trA3 = (sd.A_on * sd.A_on * sd.A_on).trace();
      const double rhs = -sd.A2 * sd.A2 + c * (5.0 * nu2 - 1.0) * sd.A2 -
                         8.0 * c * H * H * nu2 - 2.0 * c * H * ATT +
                         4.0 * c * H * H * sd.T_on.squaredNorm() +
                         2.0 * H * trA3;
      out.at(i, j) = std::abs(lhs - rhs);
    }
  return out;
}

ScalarField simons_phi_residual_field(const SurfaceGrid& g) {
  require_cmc(g);
  ScalarField phi2 = make_scalar_field(g, [](const ShapeData& sd) { return sd.phi2; });
  ScalarField lap = scalar_laplacian(phi2);
  CovariantDerivative dphi = covariant_derivative(field_phi(g));
  ScalarField out = zero_field(g);
  out.m = lap.m.merged(dphi.norm_sq.m);
  for (int j = 0; j < g.dom.ny; ++j)
    for (int i = 0; i < g.dom.nx; ++i) {
      const ShapeData& sd = g.at(i, j);
      const double c = g.c, H = sd.H, nu2 = sd.nu * sd.nu;
      const double phiTT = sd.T_on.dot(sd.phi_on * sd.T_on);
      const double rhs = dphi.norm_sq.at(i, j) - sd.phi2 * sd.phi2 +
                         (2.0 * H * H + 5.0 * c * nu2 - c) * sd.phi2 -
                         2.0 * c * H * phiTT;
      out.at(i, j) = std::abs(0.5 * lap.at(i, j) - rhs);
    }
  return out;
}

ScalarField simons_S_residual_field(const SurfaceGrid& g, SimonsForm form) {
  require_cmc(g);
  require_nonzero_H(g);
  ScalarField S2f = make_scalar_field(g, [](const ShapeData& sd) { return sd.S2; });
  ScalarField lap = scalar_laplacian(S2f);
  CovariantDerivative dS = covariant_derivative(field_S(g));
  ScalarField out = zero_field(g);
  out.m = lap.m.merged(dS.norm_sq.m);
  for (int j = 0; j < g.dom.ny; ++j)
    for (int i = 0; i < g.dom.nx; ++i) {
      const ShapeData& sd = g.at(i, j);
      const double c = g.c, H = sd.H, nu2 = sd.nu * sd.nu;
      const STraces t = s_traces(sd);
      double rhs;
      if (form == SimonsForm::Published) {
        rhs = dS.norm_sq.at(i, j) - sd.S2 * sd.S2 +
              sd.S2 * (2.5 * c * nu2 - 0.5 * c + 2.0 * H * H -
                       c / H * t.STT) +
              c * t.ST_sq - t.STT * t.STT / (4.0 * H * H);
      } else {
        rhs = dS.norm_sq.at(i, j) + 2.0 * c * nu2 * sd.S2 +
              2.0 * H * t.tr_AS2 - t.tr_AS * t.tr_AS;
      }
      out.at(i, j) = std::abs(0.5 * lap.at(i, j) - rhs);
    }
  return out;
}

ScalarField hessian_S_residual_field(const SurfaceGrid& g) {
  require_cmc(g);
  require_nonzero_H(g);
  OperatorField lap = rough_laplacian(field_S(g));
  ScalarField out = zero_field(g);
  out.m = lap.m;
  for (int j = 0; j < g.dom.ny; ++j)
    for (int i = 0; i < g.dom.nx; ++i) {
      const ShapeData& sd = g.at(i, j);
      const double c = g.c, H = sd.H, nu2 = sd.nu * sd.nu;
      const Eigen::Matrix2d& A = sd.A_on;
      const Eigen::Matrix2d& S = sd.S_on;
      const double trAS = (A * S).trace();
      // <(nabla^2 S)x,y> = 2c nu^2 <Sx,y> + 2H <Ax,Sy> - <A^2 x, Sy>
      //                    + <Ay, S A x> - <Ax,y> tr(AS).
      const Eigen::Matrix2d rhs = 2.0 * c * nu2 * S + 2.0 * H * A * S -
                                  A * A * S + A * S * A - trAS * A;
      const Eigen::Matrix2d lhs = to_orthonormal(lap.at(i, j), sd.L);
      out.at(i, j) = (lhs - rhs).cwiseAbs().maxCoeff();
    }
  return out;
}

ScalarField codazzi_S_residual_field(const SurfaceGrid& g) {
  return codazzi_residual_field(field_S(g));
}

// ---------------------------------------------------------------------------
// Reports

namespace {

ResidualReport make_report(const std::string& id, const std::string& kind,
                           const ScalarField& field, const ScalarField* fine,
                           const TolerancePolicy& tol) {
  ResidualReport r;
  r.id = id;
  r.kind = kind;
  r.nx = field.grid->dom.nx;
  r.ny = field.grid->dom.ny;
  r.hx = field.grid->dom.hx();
  r.hy = field.grid->dom.hy();

  const double px = own_core_margin_x(field);
  const double py = own_core_margin_y(field);
  const CoreStats coarse = core_stats(field, px, py);
  r.sup = coarse.sup;
  r.mean = coarse.mean;

  if (fine != nullptr) {
    const CoreStats fs = core_stats(*fine, px, py);  // same physical core
    r.sup_fine = fs.sup;
    if (kind == "stencil") {
      if (coarse.sup <= tol.exact_floor && fs.sup <= tol.exact_floor) {
        r.verdict = "exact";
      } else if (fs.sup > 0.0) {
        r.order = std::log2(coarse.sup / fs.sup);
        r.verdict = (*r.order >= tol.order_lo && *r.order <= tol.order_hi)
                        ? "pass"
                        : "fail";
        if (r.verdict == "fail") r.note = "non-convergent";
      } else {
        r.verdict = "exact";
      }
      return r;
    }
  }

  if (kind == "analytic") {
    r.verdict = coarse.sup <= tol.analytic ? "pass" : "fail";
  } else {
    // A single grid cannot separate O(h^2) truncation from genuine failure;
    // only the identically-vanishing case is decidable.
    if (coarse.sup <= tol.exact) {
      r.verdict = "pass";
      r.note = "exact on this surface";
    } else {
      r.verdict = "unresolved";
      r.note = "needs a refinement pair for an order verdict";
    }
  }
  return r;
}

ResidualReport rejected_report(const std::string& id, const std::string& kind,
                               const SurfaceGrid& g, const std::string& why) {
  ResidualReport r;
  r.id = id;
  r.kind = kind;
  r.nx = g.dom.nx;
  r.ny = g.dom.ny;
  r.hx = g.dom.hx();
  r.hy = g.dom.hy();
  r.verdict = "rejected";
  r.note = why;
  return r;
}

using FieldFn = ScalarField (*)(const SurfaceGrid&);

ResidualReport run_identity(const std::string& id, const std::string& kind,
                            FieldFn fn, const SurfaceGrid& g,
                            const SurfaceGrid* fine, const TolerancePolicy& tol) {
  try {
    ScalarField field = fn(g);
    if (fine != nullptr) {
      ScalarField ff = fn(*fine);
      return make_report(id, kind, field, &ff, tol);
    }
    return make_report(id, kind, field, nullptr, tol);
  } catch (const PreconditionError& e) {
    return rejected_report(id, kind, g, e.what());
  }
}

}  // namespace

ResidualReport gauss_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                              const TolerancePolicy& tol) {
  return run_identity("gauss", "analytic", &gauss_residual_field, g, fine, tol);
}

ResidualReport rbar_A_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                               const TolerancePolicy& tol) {
  // Analytic in the grid sense (no stencils) but CMC-gated.
  try {
    require_cmc(g);
  } catch (const PreconditionError& e) {
    return rejected_report("rbar_A", "analytic", g, e.what());
  }
  return run_identity("rbar_A", "analytic", &rbar_A_residual_field, g, fine, tol);
}

ResidualReport normal_curvature_residual(const SurfaceGrid& g,
                                         const SurfaceGrid* fine,
                                         const TolerancePolicy& tol) {
  return run_identity("normal_curvature", "analytic",
                      &normal_curvature_residual_field, g, fine, tol);
}

ResidualReport hessian_A_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                                  const TolerancePolicy& tol) {
  return run_identity("hessian_A", "stencil", &hessian_A_residual_field, g, fine, tol);
}

std::vector<ResidualReport> trace_identities_residual(const SurfaceGrid& g,
                                                      const SurfaceGrid* fine,
                                                      const TolerancePolicy& tol) {
  return {run_identity("trace_hessian_A_I", "stencil",
                       &trace_hessian_A_I_residual_field, g, fine, tol),
          run_identity("trace_hessian_A_A", "stencil",
                       &trace_hessian_A_A_residual_field, g, fine, tol)};
}

ResidualReport simons_phi_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                                   const TolerancePolicy& tol) {
  return run_identity("simons_phi", "stencil", &simons_phi_residual_field, g, fine, tol);
}

namespace {
ScalarField simons_S_corrected_field(const SurfaceGrid& g) {
  return simons_S_residual_field(g, SimonsForm::Corrected);
}
ScalarField simons_S_published_field(const SurfaceGrid& g) {
  return simons_S_residual_field(g, SimonsForm::Published);
}
}  // namespace

ResidualReport simons_S_residual(const SurfaceGrid& g, SimonsForm form,
                                 const SurfaceGrid* fine, const TolerancePolicy& tol) {
  const char* id = form == SimonsForm::Corrected ? "simons_S_corrected"
                                                 : "simons_S_published";
  ResidualReport r = run_identity(
      id, "stencil",
      form == SimonsForm::Corrected ? &simons_S_corrected_field
                                    : &simons_S_published_field,
      g, fine, tol);
  if (form == SimonsForm::Published) {
    r.role = "informational";
    if (!r.note.empty()) r.note += "; ";
    r.note += "known-discrepancy form";
  }
  return r;
}

ResidualReport hessian_S_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                                  const TolerancePolicy& tol) {
  return run_identity("hessian_S", "stencil", &hessian_S_residual_field, g, fine, tol);
}

ResidualReport ar_differential_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                                        const TolerancePolicy& tol) {
  return run_identity("ar_differential", "analytic",
                      &ar_differential_residual_field, g, fine, tol);
}

ResidualReport codazzi_S_residual(const SurfaceGrid& g, const SurfaceGrid* fine,
                                  const TolerancePolicy& tol) {
  return run_identity("codazzi_S", "stencil", &codazzi_S_residual_field, g, fine, tol);
}

std::vector<ResidualReport> identity_ledger(const SurfaceGrid& g,
                                            const SurfaceGrid* fine,
                                            const TolerancePolicy& tol) {
  std::vector<ResidualReport> out;
  out.push_back(gauss_residual(g, fine, tol));
  out.push_back(rbar_A_residual(g, fine, tol));
  out.push_back(normal_curvature_residual(g, fine, tol));
  out.push_back(hessian_A_residual(g, fine, tol));
  for (auto& r : trace_identities_residual(g, fine, tol)) out.push_back(std::move(r));
  out.push_back(simons_phi_residual(g, fine, tol));
  out.push_back(simons_S_residual(g, SimonsForm::Corrected, fine, tol));
  out.push_back(simons_S_residual(g, SimonsForm::Published, fine, tol));
  out.push_back(hessian_S_residual(g, fine, tol));
  out.push_back(codazzi_S_residual(g, fine, tol));
  out.push_back(ar_differential_residual(g, fine, tol));
  return out;
}

}  // namespace cmc
