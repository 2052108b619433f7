#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsflow/benchmarks.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/solve.hpp"
#include "lsflow/verify.hpp"

#include <cmath>

using namespace lsflow;

TEST_CASE("fitted rates recover exact power laws from the last three points") {
  std::vector<double> h{1.0, 0.5, 0.25};
  std::vector<double> err;
  for (double hi : h) err.push_back(3.0 * std::pow(hi, 2.37));
  CHECK(fitted_rate(h, err) == doctest::Approx(2.37).epsilon(1e-12));

  // earlier points do not contaminate the fit
  std::vector<double> h4{2.0, 1.0, 0.5, 0.25};
  std::vector<double> e4{999.0, 3.0, 3.0 * std::pow(0.5, 2.37),
                         3.0 * std::pow(0.25, 2.37)};
  CHECK(fitted_rate(h4, e4) == doctest::Approx(2.37).epsilon(1e-12));

  std::vector<double> two{1.0, 0.5};
  std::vector<double> etwo{1.0, 0.25};
  CHECK(fitted_rate(two, etwo) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(fitted_rate({1.0}, {1.0}), InsufficientData);
}

TEST_CASE("box quadrature integrates separable monomials") {
  double v = integrate_box(Vec3(0, 0, 0), Vec3(1, 1, 1), 2,
                           [](const Vec3& x) {
                             return x[0] * x[1] * x[1] * x[2] * x[2] * x[2];
                           });
  CHECK(v == doctest::Approx(1.0 / 24.0).epsilon(1e-13));

  // shell volume in spherical coordinates (radius, cosine, azimuth)
  double shell = integrate_box(Vec3(1, -1, 0), Vec3(2, 1, 2 * M_PI), 4,
                               [](const Vec3& p) { return p[0] * p[0]; });
  CHECK(shell == doctest::Approx(28.0 * M_PI / 3.0).epsilon(1e-13));
}

TEST_CASE("bulk integrals carry the gradient-norm weight") {
  Case cs = make_slab_case({{2, 2, 2}});
  double vol = integrate_bulk(*cs.mesh, *cs.phi, 4, 1e-10,
                              [](const BulkPoint& b) { return b.w; });
  CHECK(vol == doctest::Approx(0.5).epsilon(1e-12));

  double zmom = integrate_bulk(
      *cs.mesh, *cs.phi, 4, 1e-10,
      [](const BulkPoint& b) { return b.w * b.mp.x[2]; });
  CHECK(zmom == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("curved-channel bulk volume matches the meridian line integral") {
  AxisymOptions opt;
  opt.refine = 2;
  Case cs = make_axisymmetric_case(opt);
  double bulk = integrate_bulk(*cs.mesh, *cs.phi, 8, 1e-10,
                               [](const BulkPoint& b) { return b.w; });

  // independent reduction: per-level area of the surface of revolution,
  // integrated over the level range with plain Gauss rules
  Rule1D rc = gauss_legendre(24), rz = gauss_legendre(48);
  double total = 0.0;
  for (std::size_t i = 0; i < rc.points.size(); ++i) {
    double c = 1.0 + 0.2 * rc.points[i];  // [0.8, 1.2]
    double area = 0.0;
    for (std::size_t j = 0; j < rz.points.size(); ++j) {
      double z = 1.5 + 1.5 * rz.points[j];  // [0, 3]
      double rho = c + 0.2 * std::sin(1.0 + 3.0 * z);
      double drho = 0.6 * std::cos(1.0 + 3.0 * z);
      area += rz.weights[j] * 1.5 * 2.0 * M_PI * rho *
              std::sqrt(1.0 + drho * drho);
    }
    total += rc.weights[i] * 0.2 * area;
  }
  CHECK(bulk == doctest::Approx(total).epsilon(1e-3));
}

TEST_CASE("component errors add the weighted volume of a constant shift") {
  Case cs = make_slab_case({});
  VecX u = interpolate_velocity(*cs.problem.velocity, cs.exactVelocity);
  const double delta = 1e-3;
  for (int d = 0; d < cs.problem.velocity->n_dofs(); ++d) u[3 * d] += delta;
  double err = velocity_l2_error(cs.problem, u, cs.exactVelocity);
  CHECK(err == doctest::Approx(delta * std::sqrt(0.5)).epsilon(1e-10));
}

TEST_CASE("the dissipation functional matches a hand-computed shear flow") {
  Case cs = make_slab_case({});
  VecX u = interpolate_velocity(*cs.problem.velocity, [](const Vec3& x) {
    return Vec3(x[1], 0.0, 0.0);
  });
  // in-plane gradient has a single unit entry; mu/2 times the bulk volume
  CHECK(dissipation_functional(cs.problem, u) ==
        doctest::Approx(0.25).epsilon(1e-12));

  Mat3 g = Mat3::Zero();
  g(0, 1) = 1.0;
  CHECK(dissipation_functional_exact(cs.problem, [g](const Vec3&) { return g; }) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("strong residuals of the solved layered channel vanish") {
  Case cs = make_slab_case({});
  FlowState s = solve_stokes(cs.problem);
  ResidualNorms rn = residual_norms(cs.problem, s);
  CHECK(rn.momentum <= 1e-7);
  CHECK(rn.continuity <= 1e-7);
}

TEST_CASE("the strong viscous operator annihilates strain-free fields") {
  LevelSetSample flat;
  flat.value = 0.0;
  flat.grad = Vec3(0, 0, 1);
  GeometryFrame f = evaluate_frame(flat, 1e-10);
  FrameGradients fg;  // flat sheets: constant frame

  std::array<Mat3, 3> hessU{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  Vec3 v = strong_viscous_divergence(f, fg, Vec3(0.7, -0.2, 0.0), Mat3::Zero(),
                                     hessU, 0.5);
  CHECK(v.norm() <= 1e-14);

  // layered parabola: in-plane strain vanishes although curvature data does not
  Mat3 gradU = Mat3::Zero();
  gradU(0, 2) = 3.0;                  // dU/dz
  hessU[0](2, 2) = -8.0;              // d2U/dz2
  Vec3 w = strong_viscous_divergence(f, fg, Vec3(1.0, 0.0, 0.0), gradU, hessU,
                                     0.5);
  CHECK(w.norm() <= 1e-13);
}

TEST_CASE("node probes resolve vertices and reject other points") {
  Case cs = make_slab_case({});
  auto [elem, ref] = locate_node(*cs.mesh, Vec3(0, 0, 0), 1e-9);
  MapPoint mp = ElementMap(*cs.mesh, elem).map(ref, false);
  CHECK(mp.x.norm() <= 1e-12);
  CHECK_THROWS_AS(locate_node(*cs.mesh, Vec3(0.123, 0, 0), 1e-9),
                  ProbeOffSurface);
}

TEST_CASE("chart probes integrate closed surfaces to their exact area") {
  Case cs = make_torus_case({});
  REQUIRE(cs.energyProbes.size() == 3);
  // minor radius 0.5: area (2 pi R)(2 pi r) with R = 2
  const SurfaceProbe& probe = cs.energyProbes[1];
  double area = 0.0;
  for (const auto& pt : probe.pts) area += pt.w;
  CHECK(area == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-10));

  VecX u = interpolate_velocity(*cs.problem.velocity,
                                [](const Vec3&) { return Vec3(1, 0, 0); });
  double ek = kinetic_energy(*cs.problem.velocity, u, probe, 1.0);
  CHECK(ek == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-9));
}

TEST_CASE("the normal-flux measure isolates the through-surface component") {
  Case cs = make_slab_case({});
  VecX u = interpolate_velocity(*cs.problem.velocity,
                                [](const Vec3&) { return Vec3(0, 0, 1); });
  CHECK(normal_flux_measure(cs.problem, u) ==
        doctest::Approx(0.5).epsilon(1e-12));

  VecX ut = interpolate_velocity(*cs.problem.velocity,
                                 [](const Vec3&) { return Vec3(1, 1, 0); });
  CHECK(normal_flux_measure(cs.problem, ut) <= 1e-14);
}
