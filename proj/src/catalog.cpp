#include "cmc/catalog.hpp"

#include <cmath>
#include <numbers>

namespace cmc {

std::string to_string(CatalogKind k) {
  switch (k) {
    case CatalogKind::Slice: return "slice";
    case CatalogKind::VerticalPlane: return "vertical_plane";
    case CatalogKind::CmcCylinder: return "cmc_cylinder";
    case CatalogKind::RotationalCmcSphere: return "rotational_cmc_sphere";
    case CatalogKind::Custom: return "custom";
  }
  return "?";
}

std::optional<CatalogKind> catalog_kind_from_string(const std::string& s) {
  if (s == "slice") return CatalogKind::Slice;
  if (s == "vertical_plane") return CatalogKind::VerticalPlane;
  if (s == "cmc_cylinder") return CatalogKind::CmcCylinder;
  if (s == "rotational_cmc_sphere") return CatalogKind::RotationalCmcSphere;
  if (s == "custom") return CatalogKind::Custom;
  return std::nullopt;
}

namespace {

class SliceMap : public ImmersionMap {
 public:
  explicit SliceMap(double t0) : t0_(t0) {}
  std::array<Jet, 3> eval(const Jet& x, const Jet& y) const override {
    return {x, y, Jet::constant(t0_, x.order(), x.x0(), x.y0())};
  }

 private:
  double t0_;
};

class VerticalPlaneMap : public ImmersionMap {
 public:
  std::array<Jet, 3> eval(const Jet& x, const Jet& y) const override {
    return {tanh(x * 0.5), Jet::constant(0.0, x.order(), x.x0(), x.y0()), y};
  }
};

class CylinderMap : public ImmersionMap {
 public:
  explicit CylinderMap(double H) {
    // Geodesic circle with curvature cot(rho) = 2H; chart radius tan(rho/2).
    const double rho = std::atan2(1.0, 2.0 * H);
    r0_ = std::tan(0.5 * rho);
  }
  std::array<Jet, 3> eval(const Jet& x, const Jet& y) const override {
    return {r0_ * cos(x), r0_ * sin(x), y};
  }

 private:
  double r0_;
};

}  // namespace

std::unique_ptr<ImmersionMap> slice_map(double t0) {
  return std::make_unique<SliceMap>(t0);
}

std::unique_ptr<ImmersionMap> vertical_plane_map() {
  return std::make_unique<VerticalPlaneMap>();
}

SurfaceGrid make_slice(double c, double t0, const GridDomain& dom, int jet_order) {
  return build_surface_grid(SliceMap(t0), dom, c, jet_order);
}

SurfaceGrid make_vertical_plane(const GridDomain& dom, int jet_order) {
  return build_surface_grid(VerticalPlaneMap(), dom, -1.0, jet_order);
}

std::unique_ptr<ImmersionMap> cmc_cylinder_map(double H) {
  if (!(H > 0.0)) throw InputError("cmc_cylinder requires H > 0");
  return std::make_unique<CylinderMap>(H);
}

SurfaceGrid make_cmc_cylinder(double H, const GridDomain& dom, int jet_order) {
  return build_surface_grid(*cmc_cylinder_map(H), dom, 1.0, jet_order);
}

// ---------------------------------------------------------------------------
// Rotational profile

RotationalProfile::RotationalProfile(double c, double H) : c_(c), H_(H) {
  if (c != 1.0 && c != -1.0) throw InputError("profile: c must be +1 or -1");
  if (!(H > 0.0)) throw InputError("rotational sphere requires H > 0");
  if (c == -1.0 && !(H > 0.5))
    throw InputError("rotational sphere in H2xR requires H > 1/2");

  // Series start just off the axis: sigma = H rho + (H^3/24 + c H/12) rho^3.
  State y{eps_, 0.5 * H * eps_ * eps_,
          H * eps_ + (H * H * H / 24.0 + c * H / 12.0) * eps_ * eps_ * eps_};

  // Coarse scan with a fixed step until rho dips back below the start
  // offset, then bisection to land on rho = eps.
  const double ds = 1e-4;
  const double s_max = 200.0;
  double s = 0.0;
  State prev = y;
  bool grew = false;
  while (s < s_max) {
    State next = rk4_step(y, ds);
    s += ds;
    if (next.rho > 2.0 * eps_) grew = true;
    if (grew && next.rho < eps_) {
      double lo = s - ds, hi = s;
      State ylo = y;
      for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        State ymid = rk4_step(ylo, mid - lo);
        if (ymid.rho < eps_) {
          hi = mid;
        } else {
          lo = mid;
          ylo = ymid;
        }
      }
      s_end_ = 0.5 * (lo + hi);
      break;
    }
    prev = y;
    y = next;
    if (!std::isfinite(y.rho) || !std::isfinite(y.sigma)) break;
  }
  if (s_end_ == 0.0)
    throw ProfileClosureError(
        "profile failed to close: final state rho=" + std::to_string(y.rho) +
        " t=" + std::to_string(y.t) + " sigma=" + std::to_string(y.sigma) +
        " at s=" + std::to_string(s));

  // Dense fixed-step table; queries finish with one short RK4 step, so the
  // state is a smooth function of s.
  const int n_table = 200000;
  table_ds_ = s_end_ / n_table;
  table_.reserve(n_table + 1);
  State w{eps_, 0.5 * H * eps_ * eps_,
          H * eps_ + (H * H * H / 24.0 + c * H / 12.0) * eps_ * eps_ * eps_};
  table_.push_back(w);
  for (int k = 0; k < n_table; ++k) {
    w = rk4_step(w, table_ds_);
    table_.push_back(w);
  }
}

RotationalProfile::State RotationalProfile::rhs(const State& y) const {
  const double ct = c_ == 1.0 ? std::cos(y.rho) / std::sin(y.rho)
                              : std::cosh(y.rho) / std::sinh(y.rho);
  return State{std::cos(y.sigma), std::sin(y.sigma),
               2.0 * H_ - std::sin(y.sigma) * ct};
}

RotationalProfile::State RotationalProfile::rk4_step(const State& y, double h) const {
  auto add = [](const State& a, const State& b, double s) {
    return State{a.rho + s * b.rho, a.t + s * b.t, a.sigma + s * b.sigma};
  };
  const State k1 = rhs(y);
  const State k2 = rhs(add(y, k1, 0.5 * h));
  const State k3 = rhs(add(y, k2, 0.5 * h));
  const State k4 = rhs(add(y, k3, h));
  return State{y.rho + h / 6.0 * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho),
               y.t + h / 6.0 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t),
               y.sigma + h / 6.0 * (k1.sigma + 2 * k2.sigma + 2 * k3.sigma + k4.sigma)};
}

RotationalProfile::State RotationalProfile::state(double s) const {
  if (s < 0.0 || s > s_end_ + 1e-9)
    throw Error("profile arc length out of range");
  const double idx = s / table_ds_;
  long k = static_cast<long>(idx);
  if (k >= static_cast<long>(table_.size()) - 1) k = table_.size() - 2;
  const double rem = s - k * table_ds_;
  State y = table_[k];
  if (rem != 0.0) y = rk4_step(y, rem);
  return y;
}

void RotationalProfile::taylor(double s, int order, std::vector<double>& rho_d,
                               std::vector<double>& t_d) const {
  const State y = state(s);
  // Picard iteration on univariate jets: each pass gains one order.
  Jet R = Jet::constant(y.rho, order, s, 0.0);
  Jet Sg = Jet::constant(y.sigma, order, s, 0.0);
  Jet Tt = Jet::constant(y.t, order, s, 0.0);
  for (int it = 0; it < order; ++it) {
    const Jet ct = c_ == 1.0 ? cos(R) / sin(R) : cosh(R) / sinh(R);
    const Jet Rn = y.rho + cos(Sg).integrate_x();
    const Jet Tn = y.t + sin(Sg).integrate_x();
    const Jet Sn = y.sigma + (2.0 * H_ - sin(Sg) * ct).integrate_x();
    R = Rn;
    Tt = Tn;
    Sg = Sn;
  }
  rho_d.assign(order + 1, 0.0);
  t_d.assign(order + 1, 0.0);
  for (int m = 0; m <= order; ++m) {
    rho_d[m] = R.deriv(m, 0);
    t_d[m] = Tt.deriv(m, 0);
  }
}

RotationalSphereMap::RotationalSphereMap(std::shared_ptr<const RotationalProfile> profile)
    : profile_(std::move(profile)) {}

std::array<Jet, 3> RotationalSphereMap::eval(const Jet& x, const Jet& y) const {
  std::vector<double> rho_d, t_d;
  profile_->taylor(x.value(), x.order(), rho_d, t_d);
  const Jet rho = compose_univariate(x, rho_d);
  const Jet tt = compose_univariate(x, t_d);
  // Chart radius of the geodesic circle: tan(rho/2) (c=+1), tanh (c=-1).
  const Jet r = profile_->c() == 1.0 ? tan(rho * 0.5) : tanh(rho * 0.5);
  return {r * cos(y), r * sin(y), tt};
}

GridDomain rotational_sphere_domain(const RotationalProfile& p, int nx, int ny,
                                    double cap_fraction) {
  GridDomain d;
  d.x0 = cap_fraction * p.arc_length();
  d.x1 = (1.0 - cap_fraction) * p.arc_length();
  d.y0 = 0.0;
  d.y1 = 2.0 * std::numbers::pi;
  d.nx = nx;
  d.ny = ny;
  d.periodic_x = false;
  d.periodic_y = true;
  return d;
}

SurfaceGrid make_rotational_cmc_sphere(double c, double H, const GridDomain& dom,
                                       int jet_order) {
  auto profile = std::make_shared<RotationalProfile>(c, H);
  RotationalSphereMap map(profile);
  return build_surface_grid(map, dom, c, jet_order);
}

std::unique_ptr<ImmersionMap> custom_map(const std::string& u_src,
                                         const std::string& v_src,
                                         const std::string& t_src,
                                         const std::vector<std::string>& param_names,
                                         const std::vector<double>& param_values) {
  if (param_names.size() != param_values.size())
    throw InputError("custom surface: parameter names and values differ in count");
  return std::make_unique<ExprImmersion>(
      expr::parse(u_src, param_names), expr::parse(v_src, param_names),
      expr::parse(t_src, param_names), param_values);
}

SurfaceGrid make_custom(const std::string& u_src, const std::string& v_src,
                        const std::string& t_src,
                        const std::vector<std::string>& param_names,
                        const std::vector<double>& param_values, double c,
                        const GridDomain& dom, int jet_order) {
  auto map = custom_map(u_src, v_src, t_src, param_names, param_values);
  return build_surface_grid(*map, dom, c, jet_order);
}

GridDomain default_domain(CatalogKind kind) {
  GridDomain d;
  switch (kind) {
    case CatalogKind::Slice:
    case CatalogKind::Custom:
      d = GridDomain{-0.5, 0.5, -0.5, 0.5, 65, 65, false, false};
      break;
    case CatalogKind::VerticalPlane:
      d = GridDomain{-1.0, 1.0, -1.0, 1.0, 65, 65, false, false};
      break;
    case CatalogKind::CmcCylinder:
      d = GridDomain{0.0, 2.0 * std::numbers::pi, 0.0, 2.0, 64, 65, true, false};
      break;
    case CatalogKind::RotationalCmcSphere:
      // x-range is profile-dependent; filled by the caller.
      d = GridDomain{0.0, 1.0, 0.0, 2.0 * std::numbers::pi, 97, 96, false, true};
      break;
  }
  return d;
}

}  // namespace cmc
