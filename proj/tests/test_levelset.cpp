#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsflow/element.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/levelset.hpp"
#include "lsflow/mesh.hpp"

#include <cmath>
#include <optional>
#include <random>

using namespace lsflow;

namespace {

FaceTagger tag_all(const std::string& name) {
  return [name](const Vec3&) { return std::optional<std::string>(name); };
}

LevelSetField distance_field() {
  return LevelSetField::analytic([](const Vec3& x) {
    LevelSetSample s;
    double r = x.norm();
    Vec3 n = x / r;
    s.value = r;
    s.grad = n;
    s.hess = (Mat3::Identity() - n * n.transpose()) / r;
    return s;
  });
}

LevelSetSample ring_sample(const Vec3& x) {
  // squared distance to the circle of radius 2 in the z = 0 plane
  LevelSetSample s;
  double rxy = std::sqrt(x[0] * x[0] + x[1] * x[1]);
  double d = rxy - 2.0;
  s.value = d * d + x[2] * x[2];
  s.grad = Vec3(2.0 * d * x[0] / rxy, 2.0 * d * x[1] / rxy, 2.0 * x[2]);
  double r2 = rxy * rxy, r3 = r2 * rxy;
  s.hess(0, 0) = 2.0 * (x[0] * x[0] / r2 + d * x[1] * x[1] / r3);
  s.hess(1, 1) = 2.0 * (x[1] * x[1] / r2 + d * x[0] * x[0] / r3);
  s.hess(0, 1) = s.hess(1, 0) = 2.0 * x[0] * x[1] * (1.0 / r2 - d / r3);
  s.hess(2, 2) = 2.0;
  return s;
}

}  // namespace

TEST_CASE("spherical level sets have isotropic curvature") {
  LevelSetField phi = distance_field();
  Vec3 x(1.2, 0.0, 1.6);  // radius 2
  GeometryFrame f = evaluate_frame(phi.sample(x), 1e-10);

  CHECK(f.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.normGrad == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((f.n - x / 2.0).norm() <= 1e-14);
  Mat3 P = Mat3::Identity() - f.n * f.n.transpose();
  CHECK((f.P - P).norm() <= 1e-13);
  CHECK((f.H - 0.5 * P).norm() <= 1e-13);
  CHECK(f.kappa == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(f.kappa1 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.kappa2 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.gauss == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("the ring field separates its two principal curvatures") {
  GeometryFrame f = evaluate_frame(ring_sample(Vec3(2.5, 0.0, 0.0)), 1e-10);
  CHECK(f.normGrad == doctest::Approx(1.0).epsilon(1e-13));
  CHECK((f.n - Vec3(1, 0, 0)).norm() <= 1e-13);
  CHECK(f.kappa == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(f.kappa1 == doctest::Approx(-0.4).epsilon(1e-11));
  CHECK(f.kappa2 == doctest::Approx(-2.0).epsilon(1e-11));
  CHECK(f.gauss == doctest::Approx(0.8).epsilon(1e-10));
}

TEST_CASE("the curvature map matches differentiated normals") {
  auto sample = [](const Vec3& x) {
    LevelSetSample s;
    s.value = x[0] * x[0] / 4.0 + x[1] * x[1] / 9.0 + x[2] * x[2];
    s.grad = Vec3(x[0] / 2.0, 2.0 * x[1] / 9.0, 2.0 * x[2]);
    s.hess = Vec3(0.5, 2.0 / 9.0, 2.0).asDiagonal();
    return s;
  };
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> U(0.5, 1.5);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 x(U(rng), U(rng), U(rng));
    GeometryFrame f = evaluate_frame(sample(x), 1e-10);
    Mat3 Jn;
    for (int k = 0; k < 3; ++k) {
      Vec3 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      Vec3 np = evaluate_frame(sample(xp), 1e-10).n;
      Vec3 nm = evaluate_frame(sample(xm), 1e-10).n;
      Jn.col(k) = (np - nm) / (2.0 * h);
    }
    CHECK((f.H - f.P * Jn * f.P).norm() <= 1e-6);
    CHECK((f.H * f.n).norm() <= 1e-12);
    CHECK((f.H - f.H.transpose()).norm() <= 1e-12);
  }
}

TEST_CASE("nodal fields reproduce tensor-quadratic data exactly") {
  HexMesh mesh = build_structured_hex_mesh(Vec3(0, 0, 0), Vec3(1, 1, 1),
                                           {2, 2, 2}, 2, tag_all("wall"));
  auto value = [](const Vec3& x) {
    return 1.0 + x[0] + 0.5 * x[1] - x[2] + x[0] * x[0] + 2.0 * x[1] * x[1] +
           3.0 * x[2] * x[2] + x[0] * x[1] + x[1] * x[2] + x[0] * x[2];
  };
  auto grad = [](const Vec3& x) {
    return Vec3(1.0 + 2.0 * x[0] + x[1] + x[2],
                0.5 + 4.0 * x[1] + x[0] + x[2],
                -1.0 + 6.0 * x[2] + x[1] + x[0]);
  };
  Mat3 hess;
  hess << 2, 1, 1, 1, 4, 1, 1, 1, 6;

  VecX coeffs(mesh.n_nodes());
  for (int i = 0; i < mesh.n_nodes(); ++i) coeffs[i] = value(mesh.nodeCoords[i]);
  LevelSetField phi = LevelSetField::nodal(mesh, coeffs);
  CHECK(phi.is_nodal());

  TensorBasis geom({2, 2, 2});
  TensorBasis::Values vals;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.9, 0.9);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    ElementMap em(mesh, e);
    Vec3 r(U(rng), U(rng), U(rng));
    geom.eval(r, vals, true);
    MapPoint mp = em.map_from(vals, true);
    BasisPoint bp = ElementMap::push_forward(vals, mp, true);
    LevelSetSample s = phi.sample(em, bp, mp);
    CHECK(s.value == doctest::Approx(value(mp.x)).epsilon(1e-12));
    CHECK((s.grad - grad(mp.x)).norm() <= 1e-10);
    CHECK((s.hess - hess).norm() <= 1e-9);
  }

  // range queries and misuse guards
  auto [lo, hi] = phi.nodal_range();
  CHECK(lo == doctest::Approx(coeffs.minCoeff()).epsilon(1e-15));
  CHECK(hi == doctest::Approx(coeffs.maxCoeff()).epsilon(1e-15));
  CHECK_THROWS_AS(phi.sample(Vec3(0.5, 0.5, 0.5)), ValidationError);

  ElementMap em0(mesh, 0);
  geom.eval(Vec3(0.1, 0.2, 0.3), vals, false);
  MapPoint mp0 = em0.map_from(vals, false);
  BasisPoint flat = ElementMap::push_forward(vals, mp0, false);
  CHECK_THROWS_AS(phi.sample(em0, flat, mp0), MissingSecondDerivatives);
}

TEST_CASE("vanishing gradients are reported as degenerate") {
  LevelSetSample s;
  s.value = 0.0;
  s.grad = Vec3(1e-14, 0, 0);
  s.hess = Mat3::Identity();
  CHECK_THROWS_AS(evaluate_frame(s, 1e-10), DegenerateGradient);
}

TEST_CASE("boundary triads are right-handed and lean outward") {
  LevelSetSample s;
  s.value = 0.0;
  s.grad = Vec3(1, 0, 0);
  GeometryFrame f = evaluate_frame(s, 1e-10);

  BoundaryTriad up = boundary_frame(f, Vec3(0, 0, 1));
  CHECK((up.t - Vec3(0, 1, 0)).norm() <= 1e-14);
  CHECK((up.q - Vec3(0, 0, 1)).norm() <= 1e-14);

  // flipping the boundary normal flips the triad, keeping q . m positive
  BoundaryTriad down = boundary_frame(f, Vec3(0, 0, -1));
  CHECK((down.t - Vec3(0, -1, 0)).norm() <= 1e-14);
  CHECK((down.q - Vec3(0, 0, -1)).norm() <= 1e-14);
  CHECK(down.q.dot(Vec3(0, 0, -1)) > 0.0);

  CHECK_THROWS_AS(boundary_frame(f, Vec3(1, 0, 0)), DegenerateTriad);
}

TEST_CASE("frame gradients match the closed forms of the distance field") {
  HexMesh mesh = build_structured_hex_mesh(Vec3(1, 1, 1), Vec3(2, 2, 2),
                                           {1, 1, 1}, 1, tag_all("wall"));
  LevelSetField phi = distance_field();
  ElementMap em(mesh, 0);
  Vec3 ref(0.2, -0.3, 0.4);
  MapPoint mp = em.map(ref, true);
  GeometryFrame f = evaluate_frame(phi.sample(mp.x), 1e-10);
  FrameGradients fg = frame_gradients(phi, em, ref, mp, f, 1e-10);

  double r = mp.x.norm();
  CHECK((fg.gradN - f.P / r).norm() <= 1e-12);

  // dH/dx_k = -(P e_k n^T + n e_k^T P + P n_k) / r^2 for the distance field
  for (int k = 0; k < 3; ++k) {
    Vec3 pk = f.P.col(k);
    Mat3 want = -(pk * f.n.transpose() + f.n * pk.transpose() +
                  f.P * f.n[k]) /
                (r * r);
    CHECK((fg.gradH[k] - want).norm() <= 2e-5);
  }
}
