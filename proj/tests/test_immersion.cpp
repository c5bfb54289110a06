#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "cmc/catalog.hpp"
#include "cmc/grid.hpp"
#include "cmc/immersion.hpp"
#include "support.hpp"

using namespace cmc;

namespace {

// Linear reparametrization (x,y) -> (a x + b y, c x + d y) of another map.
struct Reparam : ImmersionMap {
  const ImmersionMap* base;
  double a, b, c, d;
  Reparam(const ImmersionMap* m, double aa, double bb, double cc, double dd)
      : base(m), a(aa), b(bb), c(cc), d(dd) {}
  std::array<Jet, 3> eval(const Jet& x, const Jet& y) const override {
    return base->eval(a * x + b * y, c * x + d * y);
  }
};

GridDomain small_domain(double lo, double hi) {
  return GridDomain{lo, hi, lo, hi, 9, 9, false, false};
}

}  // namespace

TEST_CASE("slice has the trivial profile") {
  for (double c : {1.0, -1.0}) {
    SurfaceGrid g = make_slice(c, 0.25, small_domain(-0.4, 0.4));
    for (const auto& sd : g.nodes) {
      CHECK(sd.nu * sd.nu == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(sd.T.norm() <= 1e-14);
      CHECK(sd.A.cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(std::abs(sd.H) <= 1e-12);
      CHECK(sd.phi.cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(sd.S.cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(sd.K_int == doctest::Approx(c).epsilon(1e-10));
      CHECK(sd.point.t == 0.25);
    }
  }
}

TEST_CASE("cmc cylinder closed forms") {
  const double H = 1.0;
  GridDomain dom{0.0, 2.0 * 3.14159265358979312, 0.0, 1.0, 24, 9, true, false};
  SurfaceGrid g = make_cmc_cylinder(H, dom);
  for (const auto& sd : g.nodes) {
    CHECK(std::abs(sd.nu) <= 1e-12);
    CHECK(sd.H == doctest::Approx(H).epsilon(1e-12));
    // Eigenvalues 2H and 0 along the horizontal/vertical frame directions.
    CHECK(sd.A_on(0, 0) == doctest::Approx(2.0 * H).epsilon(1e-11));
    CHECK(std::abs(sd.A_on(1, 1)) <= 1e-11);
    CHECK(std::abs(sd.A_on(0, 1)) <= 1e-11);
    // S = diag(2H^2 + 1/2, -(2H^2 + 1/2)) in that frame.
    const double a = 2.0 * H * H + 0.5;
    CHECK(sd.S_on(0, 0) == doctest::Approx(a).epsilon(1e-11));
    CHECK(sd.S_on(1, 1) == doctest::Approx(-a).epsilon(1e-11));
    CHECK(std::abs(sd.S_on(0, 1)) <= 1e-11);
    CHECK(std::sqrt(sd.S2) ==
          doctest::Approx(std::sqrt(2.0) / 2.0 * (4.0 * H * H + 1.0)).epsilon(1e-10));
    CHECK(sd.A2 == doctest::Approx(4.0).epsilon(1e-11));
    CHECK(sd.phi2 == doctest::Approx(sd.A2 - 2.0 * H * H).epsilon(1e-11));
    CHECK(sd.Q20_abs2 == doctest::Approx(12.5 / 8.0).epsilon(1e-11));
    // |T| = 1 along the vertical direction.
    CHECK(sd.T_on.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("vertical plane in H2xR") {
  SurfaceGrid g = make_vertical_plane(small_domain(-0.8, 0.8));
  for (const auto& sd : g.nodes) {
    CHECK(std::abs(sd.H) <= 1e-12);
    CHECK(sd.A2 <= 1e-12);
    CHECK(std::abs(sd.nu) <= 1e-14);
    CHECK(sd.T_on.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // Arc-length parametrization: the induced metric is the identity.
    CHECK((sd.g - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    // S is diag(1/2, -1/2) in the frame {T, E}; here T is the y direction.
    CHECK(sd.S_on(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sd.S_on(0, 0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sd.S2 == doctest::Approx(0.5).epsilon(1e-12));
    // sup(|A|^2 + 5 nu^2) = 0 for the minimal-surface hypothesis.
    CHECK(sd.A2 + 5.0 * sd.nu * sd.nu <= 1e-12);
  }
}

TEST_CASE("pointwise algebraic invariants across surfaces") {
  struct Entry {
    std::unique_ptr<ImmersionMap> map;
    double c;
    double lo_x, hi_x, lo_y, hi_y;
  };
  std::vector<Entry> entries;
  entries.push_back({slice_map(0.1), 1.0, -0.4, 0.4, -0.4, 0.4});
  entries.push_back({slice_map(-0.2), -1.0, -0.4, 0.4, -0.4, 0.4});
  entries.push_back({vertical_plane_map(), -1.0, -0.8, 0.8, -0.8, 0.8});
  for (double H : {0.6, 1.0, 2.0})
    entries.push_back({cmc_cylinder_map(H), 1.0, 0.0, 6.2, 0.0, 1.0});
  entries.push_back({custom_map("x", "y", "0.1*sin(x)*sin(y)", {}, {}), 1.0,
                     -0.5, 0.5, -0.5, 0.5});
  entries.push_back({custom_map("x + 0.05*y^2", "y - 0.03*x*y", "0.2*x + 0.1*cos(y)",
                                {}, {}),
                     -1.0, -0.3, 0.3, -0.3, 0.3});

  std::mt19937 rng(41);
  for (const auto& e : entries) {
    std::uniform_real_distribution<double> X(e.lo_x, e.hi_x), Y(e.lo_y, e.hi_y);
    for (int k = 0; k < 25; ++k) {
      const ShapeData sd = shape_data(*e.map, X(rng), Y(rng), e.c);
      const double T2 = sd.T_on.squaredNorm();
      CHECK(sd.nu * sd.nu + T2 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(sd.S_on.trace()) <= 1e-12 * std::max(1.0, sd.S2));
      CHECK(std::abs(sd.phi_on.trace()) <= 1e-12 * std::max(1.0, sd.phi2));
      CHECK(sd.phi2 ==
            doctest::Approx(sd.A2 - 2.0 * sd.H * sd.H).epsilon(1e-10));
      const double trA3 = (sd.A_on * sd.A_on * sd.A_on).trace();
      CHECK(trA3 == doctest::Approx(3.0 * sd.H * sd.phi2 +
                                    2.0 * sd.H * sd.H * sd.H)
                        .epsilon(1e-10));
      CHECK(sd.Q20_abs2 == doctest::Approx(sd.S2 / 8.0).epsilon(1e-10).scale(1.0));
      CHECK(sd.K_int == doctest::Approx(sd.K_ext + e.c * sd.nu * sd.nu)
                            .epsilon(1e-7)
                            .scale(1.0));
      // Self-adjointness with respect to g is checked, not imposed.
      CHECK(std::abs(sd.A_on(0, 1) - sd.A_on(1, 0)) <= 1e-9);
      CHECK(std::abs(sd.S_on(0, 1) - sd.S_on(1, 0)) <= 1e-9);
      // T is the tangential part of d_t.
      const Eigen::Vector3d T_amb = sd.T(0) * sd.F_x + sd.T(1) * sd.F_y;
      const Eigen::Vector3d expect = Eigen::Vector3d(0, 0, 1) - sd.nu * sd.N;
      CHECK((T_amb - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("scalar outputs are invariant under reparametrization") {
  auto base = custom_map("x + 0.05*y^2", "y - 0.04*x^2", "0.15*sin(x+y)", {}, {});
  Reparam swapped(base.get(), 0.0, 1.0, 1.0, 0.0);
  const double ang = 0.7;
  Reparam rotated(base.get(), std::cos(ang), -std::sin(ang), std::sin(ang),
                  std::cos(ang));
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> U(-0.25, 0.25);
  for (int k = 0; k < 40; ++k) {
    const double x0 = U(rng), y0 = U(rng);
    const ShapeData a = shape_data(*base, x0, y0, 1.0);

    // Swap reverses orientation; flip the normal back for comparison.
    const ShapeData b = shape_data(swapped, y0, x0, 1.0, 3, true);
    CHECK(a.nu == doctest::Approx(b.nu).epsilon(1e-9).scale(1.0));
    CHECK(a.H == doctest::Approx(b.H).epsilon(1e-9).scale(1.0));
    CHECK(a.A2 == doctest::Approx(b.A2).epsilon(1e-9).scale(1.0));
    CHECK(a.S2 == doctest::Approx(b.S2).epsilon(1e-9).scale(1.0));
    CHECK(a.Q20_abs2 == doctest::Approx(b.Q20_abs2).epsilon(1e-9).scale(1.0));
    CHECK(a.K_int == doctest::Approx(b.K_int).epsilon(1e-9).scale(1.0));

    // Rotation preserves orientation.
    const double xr = std::cos(ang) * x0 + std::sin(ang) * y0;
    const double yr = -std::sin(ang) * x0 + std::cos(ang) * y0;
    const ShapeData r = shape_data(rotated, xr, yr, 1.0);
    CHECK(a.nu == doctest::Approx(r.nu).epsilon(1e-9).scale(1.0));
    CHECK(a.H == doctest::Approx(r.H).epsilon(1e-9).scale(1.0));
    CHECK(a.A2 == doctest::Approx(r.A2).epsilon(1e-9).scale(1.0));
    CHECK(a.S2 == doctest::Approx(r.S2).epsilon(1e-9).scale(1.0));
    CHECK(a.Q20_abs2 == doctest::Approx(r.Q20_abs2).epsilon(1e-9).scale(1.0));
    CHECK(a.K_int == doctest::Approx(r.K_int).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("degenerate immersions are rejected") {
  auto degen = custom_map("x", "x", "x", {}, {});
  CHECK_THROWS_AS(shape_data(*degen, 0.1, 0.2, 1.0), DegenerateImmersionError);
}

TEST_CASE("tensor norms") {
  Eigen::Matrix2d g;
  g << 1.7, 0.3, 0.3, 2.1;
  CHECK(tensor_norm_sq(Eigen::Matrix2d::Identity(), g) == doctest::Approx(2.0));
  // diag(a,-a) in the orthonormal frame, pushed back to the parameter frame.
  Eigen::LLT<Eigen::Matrix2d> llt(g);
  const Eigen::Matrix2d L = llt.matrixL();
  Eigen::Matrix2d diag;
  diag << 1.3, 0, 0, -1.3;
  const Eigen::Matrix2d Lt = L.transpose();
  const Eigen::Matrix2d W = Lt.inverse() * diag * Lt;
  CHECK(tensor_norm_sq(W, g) == doctest::Approx(2.0 * 1.3 * 1.3));
}

TEST_CASE("cmc deviation: slice exact, perturbed graph large") {
  SurfaceGrid slice = make_slice(1.0, 0.0, small_domain(-0.4, 0.4));
  CHECK(slice.cmc_deviation().max_deviation <= 1e-13);

  GridDomain dom{-0.6, 0.6, -0.6, 0.6, 17, 17, false, false};
  SurfaceGrid graph =
      make_custom("x", "y", "0.1*sin(x)*sin(y)", {}, {}, 1.0, dom);
  CHECK(graph.cmc_deviation().max_deviation > 1e-2);
}

TEST_CASE("custom DSL slice reproduces the native slice") {
  auto native = slice_map(0.3);
  auto dsl = custom_map("x", "y", "0.3", {}, {});
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> U(-0.4, 0.4);
  for (int k = 0; k < 20; ++k) {
    const double x0 = U(rng), y0 = U(rng);
    const ShapeData a = shape_data(*native, x0, y0, -1.0);
    const ShapeData b = shape_data(*dsl, x0, y0, -1.0);
    CHECK((a.g - b.g).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((a.A - b.A).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(a.nu - b.nu) <= 1e-12);
    CHECK(std::abs(a.K_int - b.K_int) <= 1e-12);
  }
}
