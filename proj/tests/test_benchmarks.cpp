#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsflow/benchmarks.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/verify.hpp"

#include <cmath>
#include <random>

using namespace lsflow;

namespace {

Vec3 shell_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> Uc(0.85, 1.15);
  std::uniform_real_distribution<double> Ut(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> Uz(0.2, 2.8);
  double c = Uc(rng), th = Ut(rng), z = Uz(rng);
  double rho = c + 0.2 * std::sin(1.0 + 3.0 * z);
  return Vec3(rho * std::cos(th), rho * std::sin(th), z);
}

}  // namespace

TEST_CASE("the channel level-set derivatives are internally consistent") {
  std::mt19937 rng(29);
  const double h = 1e-6;
  for (int trial = 0; trial < 15; ++trial) {
    Vec3 x = shell_point(rng);
    LevelSetSample s = axisym_level_set(x);
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      LevelSetSample sp = axisym_level_set(xp);
      LevelSetSample sm = axisym_level_set(xm);
      CHECK(s.grad[k] ==
            doctest::Approx((sp.value - sm.value) / (2 * h)).epsilon(1e-6));
      CHECK((s.hess.col(k) - (sp.grad - sm.grad) / (2 * h)).norm() <= 1e-6);
    }
  }
}

TEST_CASE("the exact channel velocity differentiates to its gradient") {
  std::mt19937 rng(31);
  const double h = 1e-6;
  for (int trial = 0; trial < 15; ++trial) {
    Vec3 x = shell_point(rng);
    Mat3 g = axisym_exact_velocity_gradient(x);
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      Vec3 fd = (axisym_exact_velocity(xp) - axisym_exact_velocity(xm)) /
                (2 * h);
      CHECK((g.col(k) - fd).norm() <= 1e-6);
    }
  }
}

TEST_CASE("the closed-form viscous force matches the strong operator") {
  std::mt19937 rng(37);
  const double mu = 0.1;
  const double hs = 1e-5;
  for (int trial = 0; trial < 8; ++trial) {
    Vec3 x = shell_point(rng);
    GeometryFrame f = evaluate_frame(axisym_level_set(x), 1e-10);

    FrameGradients fg;
    LevelSetSample s = axisym_level_set(x);
    fg.gradN = f.P * s.hess / f.normGrad;
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += hs;
      xm[k] -= hs;
      Mat3 Hp = evaluate_frame(axisym_level_set(xp), 1e-10).H;
      Mat3 Hm = evaluate_frame(axisym_level_set(xm), 1e-10).H;
      fg.gradH[k] = (Hp - Hm) / (2 * hs);
    }

    Vec3 u = axisym_exact_velocity(x);
    Mat3 gradu = axisym_exact_velocity_gradient(x);
    std::array<Mat3, 3> hessU{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    for (int j = 0; j < 3; ++j) {
      Vec3 xp = x, xm = x;
      xp[j] += hs;
      xm[j] -= hs;
      Mat3 gp = axisym_exact_velocity_gradient(xp);
      Mat3 gm = axisym_exact_velocity_gradient(xm);
      Mat3 fd = (gp - gm) / (2 * hs);
      for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 3; ++i) hessU[c](i, j) = fd(c, i);
    }

    Vec3 strong = strong_viscous_divergence(f, fg, u, gradu, hessU, mu);
    Vec3 closed = axisym_momentum_source(x, mu);
    CHECK((strong - closed).norm() <= 1e-4 * (closed.norm() + 1.0));
  }
}

TEST_CASE("the exact pressure balances the viscous force along the sheets") {
  std::mt19937 rng(41);
  const double mu = 0.1;
  const double h = 1e-6;
  for (int trial = 0; trial < 12; ++trial) {
    Vec3 x = shell_point(rng);
    GeometryFrame f = evaluate_frame(axisym_level_set(x), 1e-10);
    Vec3 gp;
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      gp[k] = (axisym_exact_pressure(xp, mu) - axisym_exact_pressure(xm, mu)) /
              (2 * h);
    }
    Vec3 force = axisym_momentum_source(x, mu);
    CHECK((f.P * gp - force).norm() <= 1e-4 * (force.norm() + 1.0));
  }
}

TEST_CASE("all case factories produce well-posed problems") {
  CHECK_NOTHROW(validate_problem(make_axisymmetric_case({}).problem));
  CHECK_NOTHROW(validate_problem(make_obstacle_case({}).problem));
  ObstacleOptions o2;
  o2.mapping = 2;
  CHECK_NOTHROW(validate_problem(make_obstacle_case(o2).problem));
  ObstacleOptions o3;
  o3.mapping = 3;
  CHECK_NOTHROW(validate_problem(make_obstacle_case(o3).problem));
  CHECK_NOTHROW(validate_problem(make_cavity_case({4, 2}).problem));
  CHECK_NOTHROW(validate_problem(make_torus_case({{6, 4, 1}}).problem));
  CHECK_NOTHROW(validate_problem(make_slab_case({}).problem));
}

TEST_CASE("obstacle stagnation probes sit on mesh vertices") {
  for (int mapping = 1; mapping <= 3; ++mapping) {
    ObstacleOptions opt;
    opt.mapping = mapping;
    Case cs = make_obstacle_case(opt);
    REQUIRE(cs.pointProbes.size() == 6);
    for (const auto& probe : cs.pointProbes) {
      auto [elem, ref] = locate_node(*cs.mesh, probe.x, 1e-8);
      MapPoint mp = ElementMap(*cs.mesh, elem).map(ref, false);
      CHECK((mp.x - probe.x).norm() <= 1e-8);
    }
  }
}

TEST_CASE("nodal level values span the flat thickness ranges") {
  Case obstacle = make_obstacle_case({});
  auto [lo1, hi1] = obstacle.phi->nodal_range();
  CHECK(lo1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(hi1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  Case cavity = make_cavity_case({4, 2});
  auto [lo2, hi2] = cavity.phi->nodal_range();
  CHECK(lo2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(hi2 == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("the inflow profile peaks at the channel midline") {
  Case cs = make_obstacle_case({});
  const DirichletBC* inflow = nullptr;
  for (const auto& bc : cs.problem.dirichlet)
    if (bc.tag == "inflow") inflow = &bc;
  REQUIRE(inflow != nullptr);

  // at the flat midline the first bulk map pushes (1, 0, 0) to (1.1, 0.4, 0)
  Vec3 v = inflow->value(Vec3::Zero(), Vec3(0.0, 0.205, 0.1), 0.0);
  CHECK((v - 1.5 * Vec3(1.1, 0.4, 0.0)).norm() <= 1e-7);

  // half-height runs at 3/4 of the peak
  Vec3 vh = inflow->value(Vec3::Zero(), Vec3(0.0, 0.1025, 0.1), 0.0);
  CHECK((vh - 0.75 * v).norm() <= 1e-7);
}

TEST_CASE("the swirling start state is tangential to every ring surface") {
  Case cs = make_torus_case({{6, 4, 1}});
  Vec3 spot = cs.initialVelocity(Vec3(2.5, 0.0, 0.0));
  CHECK((spot - Vec3(0.0, 0.05, 0.05)).norm() <= 1e-14);

  std::mt19937 rng(43);
  std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> Ur(0.25, 0.75);
  for (int trial = 0; trial < 25; ++trial) {
    Vec3 x = torus_chart(U(rng), U(rng), Ur(rng));
    Vec3 u = cs.initialVelocity(x);
    double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    Vec3 grad(2.0 * (rho - 2.0) * x[0] / rho, 2.0 * (rho - 2.0) * x[1] / rho,
              2.0 * x[2]);
    CHECK(std::abs(u.dot(grad)) <= 1e-13);
  }
}

TEST_CASE("the cavity pins its pressure along the mid-bottom node line") {
  Case cs = make_cavity_case({4, 2});
  DirichletData bc = collect_dirichlet(cs.problem, 0.0);
  CHECK(bc.pressureDofs.size() == 5);  // order-2 lattice through two layers
  for (int pd : bc.pressureDofs) {
    Vec3 q = cs.problem.pressure->dof_param(pd);
    CHECK(std::abs(q[0] - 0.5) <= 1e-9);
    CHECK(std::abs(q[1]) <= 1e-9);
  }
}

TEST_CASE("wall data beats lid data where the rims meet") {
  Case cs = make_cavity_case({4, 2});
  DirichletData bc = collect_dirichlet(cs.problem, 0.0);
  const FunctionSpace& vs = *cs.problem.velocity;
  bool sawRim = false, sawLid = false;
  for (std::size_t i = 0; i < bc.dofs.size(); ++i) {
    Vec3 q = vs.dof_param(bc.dofs[i]);
    if (std::abs(q[0]) < 1e-12 && std::abs(q[1] - 1.0) < 1e-12) {
      sawRim = true;
      CHECK(bc.values[i].norm() <= 1e-14);  // the wall wins the shared edge
    }
    if (std::abs(q[0] - 0.5) < 1e-12 && std::abs(q[1] - 1.0) < 1e-12 &&
        std::abs(q[2]) < 1e-12) {
      sawLid = true;
      // on the driven edge the sheet height vanishes, the drive is unit
      CHECK((bc.values[i] - Vec3(1, 0, 0)).norm() <= 1e-12);
    }
  }
  CHECK(sawRim);
  CHECK(sawLid);
}

TEST_CASE("nodal interpolation reproduces affine fields at their dofs") {
  Case cs = make_slab_case({{2, 2, 2}});
  const FunctionSpace& vs = *cs.problem.velocity;
  auto field = [](const Vec3& x) {
    return Vec3(1.0 + x[0] - 2.0 * x[1], x[2], x[0] + x[1]);
  };
  VecX u = interpolate_velocity(vs, field);
  for (int d = 0; d < vs.n_dofs(); ++d) {
    Vec3 wanted = field(vs.dof_position(d));
    for (int i = 0; i < 3; ++i)
      CHECK(u[3 * d + i] == doctest::Approx(wanted[i]).epsilon(1e-13));
  }
}
