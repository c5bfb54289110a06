#pragma once

// Built-in model surfaces: horizontal slices, the vertical plane over a
// diameter geodesic of H2, CMC cylinders over geodesic circles of S2, and
// the rotational CMC spheres obtained by integrating the profile system
//   rho' = cos(sigma),  t' = sin(sigma),  sigma' = 2H - sin(sigma) ct_c(rho)
// (ct_c = cot for c = +1, coth for c = -1) from the rotation axis.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmc/grid.hpp"

namespace cmc {

enum class CatalogKind { Slice, VerticalPlane, CmcCylinder, RotationalCmcSphere, Custom };

std::string to_string(CatalogKind k);
std::optional<CatalogKind> catalog_kind_from_string(const std::string& s);

struct CatalogSpec {
  CatalogKind kind = CatalogKind::Slice;
  double c = 1.0;
  double H = 1.0;    // cylinders, spheres
  double t0 = 0.0;   // slices
  GridDomain domain; // resolved by the factory when defaulted
  bool complete = true;
  bool closed = false;
};

// Slice M2(c) x {t0}: F(x,y) = (x, y, t0).
SurfaceGrid make_slice(double c, double t0, const GridDomain& dom, int jet_order = 3);
std::unique_ptr<ImmersionMap> slice_map(double t0);

// Vertical plane over a diameter geodesic of H2 (c = -1), arc-length in x:
// F(x,y) = (tanh(x/2), 0, y).
SurfaceGrid make_vertical_plane(const GridDomain& dom, int jet_order = 3);
std::unique_ptr<ImmersionMap> vertical_plane_map();

// Cylinder over the geodesic circle of S2 with curvature 2H (c = +1),
// periodic angle in x, height in y.
SurfaceGrid make_cmc_cylinder(double H, const GridDomain& dom, int jet_order = 3);
std::unique_ptr<ImmersionMap> cmc_cylinder_map(double H);

// Rotational profile and the sphere built from it; x = profile arc length,
// y = rotation angle (periodic).
class RotationalProfile {
 public:
  // Integrates the profile from the axis until it closes (rho back below
  // the start offset).  Throws ProfileClosureError with the final state if
  // it does not close within the arc-length budget.
  RotationalProfile(double c, double H);

  double c() const { return c_; }
  double H() const { return H_; }
  double arc_length() const { return s_end_; }

  struct State {
    double rho, t, sigma;
  };
  State state(double s) const;

  // s-derivative lists (raw derivatives, order k) of rho, t at s.
  void taylor(double s, int order, std::vector<double>& rho_d,
              std::vector<double>& t_d) const;

 private:
  State rhs(const State& y) const;
  State rk4_step(const State& y, double h) const;

  double c_, H_;
  double eps_ = 1e-4;    // axis offset of the start state
  double s_end_ = 0.0;
  double table_ds_ = 0.0;
  std::vector<State> table_;  // states at multiples of table_ds_
};

class RotationalSphereMap : public ImmersionMap {
 public:
  RotationalSphereMap(std::shared_ptr<const RotationalProfile> profile);
  std::array<Jet, 3> eval(const Jet& x, const Jet& y) const override;
  const RotationalProfile& profile() const { return *profile_; }

 private:
  std::shared_ptr<const RotationalProfile> profile_;
};

// Default s-domain for a sphere grid: caps of `cap_fraction` of the total
// arc length are excluded at both poles.
GridDomain rotational_sphere_domain(const RotationalProfile& p, int nx, int ny,
                                    double cap_fraction = 0.12);

SurfaceGrid make_rotational_cmc_sphere(double c, double H, const GridDomain& dom,
                                       int jet_order = 3);

// Surface from DSL expressions; no CMC guarantee.
SurfaceGrid make_custom(const std::string& u_src, const std::string& v_src,
                        const std::string& t_src,
                        const std::vector<std::string>& param_names,
                        const std::vector<double>& param_values, double c,
                        const GridDomain& dom, int jet_order = 3);

std::unique_ptr<ImmersionMap> custom_map(const std::string& u_src,
                                         const std::string& v_src,
                                         const std::string& t_src,
                                         const std::vector<std::string>& param_names,
                                         const std::vector<double>& param_values);

GridDomain default_domain(CatalogKind kind);

}  // namespace cmc
