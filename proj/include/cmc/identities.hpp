#pragma once

// The residual ledger: one numerical check per curvature identity, each
// returning a per-node residual field and a report with sup-norm, mean and
// (when a refinement pair is supplied) the observed convergence order.

#include <optional>
#include <string>
#include <vector>

#include "cmc/calculus.hpp"

namespace cmc {

struct TolerancePolicy {
  double analytic = 1e-8;   // identities with no grid derivatives
  double exact = 1e-9;      // parallel-field / identically-vanishing cases
  double order_lo = 1.5;
  double order_hi = 2.5;
  // Refinement pairs whose sups sit below this floor on both grids are
  // identically zero for stencil purposes ("exact"), not order-measurable.
  double exact_floor = 1e-8;
};

struct ResidualReport {
  std::string id;
  std::string kind;  // "analytic" | "stencil"
  double sup = 0.0;
  double mean = 0.0;
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
  std::optional<double> sup_fine;
  std::optional<double> order;
  std::string verdict;  // pass | fail | unresolved | rejected | exact
  std::string role = "primary";
  std::string note;
};

enum class SimonsForm { Corrected, Published };

// Residual fields (|residual| per node).
ScalarField gauss_residual_field(const SurfaceGrid& g);
ScalarField rbar_A_residual_field(const SurfaceGrid& g);
ScalarField normal_curvature_residual_field(const SurfaceGrid& g);
ScalarField hessian_A_residual_field(const SurfaceGrid& g);
ScalarField trace_hessian_A_I_residual_field(const SurfaceGrid& g);
ScalarField trace_hessian_A_A_residual_field(const SurfaceGrid& g);
ScalarField simons_phi_residual_field(const SurfaceGrid& g);
ScalarField simons_S_residual_field(const SurfaceGrid& g, SimonsForm form);
ScalarField hessian_S_residual_field(const SurfaceGrid& g);
ScalarField ar_differential_residual_field(const SurfaceGrid& g);
ScalarField codazzi_S_residual_field(const SurfaceGrid& g);

// Reports (optionally with the matching field on a refined grid).
ResidualReport gauss_residual(const SurfaceGrid& g, const SurfaceGrid* fine = nullptr,
                              const TolerancePolicy& tol = {});
ResidualReport rbar_A_residual(const SurfaceGrid& g, const SurfaceGrid* fine = nullptr,
                               const TolerancePolicy& tol = {});
ResidualReport normal_curvature_residual(const SurfaceGrid& g,
                                         const SurfaceGrid* fine = nullptr,
                                         const TolerancePolicy& tol = {});
ResidualReport hessian_A_residual(const SurfaceGrid& g, const SurfaceGrid* fine = nullptr,
                                  const TolerancePolicy& tol = {});
std::vector<ResidualReport> trace_identities_residual(const SurfaceGrid& g,
                                                      const SurfaceGrid* fine = nullptr,
                                                      const TolerancePolicy& tol = {});
ResidualReport simons_phi_residual(const SurfaceGrid& g, const SurfaceGrid* fine = nullptr,
                                   const TolerancePolicy& tol = {});
ResidualReport simons_S_residual(const SurfaceGrid& g, SimonsForm form,
                                 const SurfaceGrid* fine = nullptr,
                                 const TolerancePolicy& tol = {});
ResidualReport hessian_S_residual(const SurfaceGrid& g, const SurfaceGrid* fine = nullptr,
                                  const TolerancePolicy& tol = {});
ResidualReport ar_differential_residual(const SurfaceGrid& g,
                                        const SurfaceGrid* fine = nullptr,
                                        const TolerancePolicy& tol = {});
ResidualReport codazzi_S_residual(const SurfaceGrid& g, const SurfaceGrid* fine = nullptr,
                                  const TolerancePolicy& tol = {});

// The full ledger in its fixed order.  CMC-gated identities on a surface
// violating their hypothesis come back with verdict "rejected".
std::vector<ResidualReport> identity_ledger(const SurfaceGrid& g,
                                            const SurfaceGrid* fine = nullptr,
                                            const TolerancePolicy& tol = {});

// Trace quantities of the S-equation, evaluated from ShapeData in the
// orthonormal frame (independent of any stencil).
struct STraces {
  double tr_AS = 0.0;
  double tr_AS2 = 0.0;
  double ST_sq = 0.0;   // |S T|^2
  double STT = 0.0;     // <S T, T>
};
STraces s_traces(const ShapeData& sd);          // closed-form route
STraces s_traces_direct(const ShapeData& sd);   // direct matrix traces

}  // namespace cmc
