#include "lsflow/benchmarks.hpp"

#include "lsflow/errors.hpp"

#include <cmath>
#include <numbers>

namespace lsflow {

namespace {

constexpr double kPi = std::numbers::pi;

/// Geometry-node values of one mesh parameter component; the nodal level-set
/// coefficients of the bent-box cases.
VecX param_component_values(const HexMesh& mesh, int comp) {
  VecX vals = VecX::Zero(mesh.n_nodes());
  for (int e = 0; e < mesh.n_elems(); ++e)
    for (std::size_t a = 0; a < mesh.elemNodes[e].size(); ++a)
      vals[mesh.elemNodes[e][a]] = mesh.elemParams[e][a][comp];
  return vals;
}

std::shared_ptr<FunctionSpace> make_space(const HexMesh& mesh, int order) {
  return std::make_shared<FunctionSpace>(
      mesh, std::array<int, 3>{order, order, order});
}

}  // namespace

VecX interpolate_velocity(const FunctionSpace& vs,
                          const std::function<Vec3(const Vec3&)>& u) {
  VecX out = VecX::Zero(3 * vs.n_dofs());
  for (int d = 0; d < vs.n_dofs(); ++d) {
    Vec3 val = u(vs.dof_position(d));
    for (int i = 0; i < 3; ++i) out[3 * d + i] = val[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// rotational channel
// ---------------------------------------------------------------------------

Case make_axisymmetric_case(const AxisymOptions& opt) {
  if (opt.refine < 1)
    throw ValidationError("rotational channel: refine must be positive");
  if (opt.orderU < 2)
    throw ValidationError(
        "rotational channel: velocity order below two leaves no pressure "
        "space for the mixed pair");
  const int qGeom = opt.orderGeom > 0 ? opt.orderGeom : opt.orderU + 1;

  MeshBuilder mb;
  Block b;
  b.lo = Vec3(0.8, 0.0, 0.0);
  b.hi = Vec3(1.2, 2.0 * kPi, 3.0);
  b.div = {opt.refine, 6 * opt.refine, 4 * opt.refine};
  b.faceTags[0] = "free";
  b.faceTags[1] = "free";
  b.faceTags[4] = "inflow";
  b.faceTags[5] = "outflow";
  mb.blocks.push_back(b);
  mb.qGeom = qGeom;
  mb.geometryMap = [](const Vec3& p) {
    const double radius = p[0] + 0.2 * std::sin(1.0 + 3.0 * p[2]);
    return Vec3(radius * std::cos(p[1]), radius * std::sin(p[1]), p[2]);
  };

  Case cs;
  cs.name = "rotational-channel";
  cs.mesh = std::make_unique<HexMesh>(mb.build());
  cs.phi = std::make_unique<LevelSetField>(LevelSetField::analytic(
      [](const Vec3& x) { return axisym_level_set(x); }));

  cs.problem.mesh = cs.mesh.get();
  cs.problem.phi = cs.phi.get();
  cs.problem.velocity = make_space(*cs.mesh, opt.orderU);
  cs.problem.pressure = make_space(*cs.mesh, opt.orderU - 1);
  cs.problem.mu = opt.mu;
  cs.problem.rho = opt.rho;
  cs.problem.includeAdvection = false;
  cs.problem.dirichlet.push_back(
      {"inflow",
       [](const Vec3& x, const Vec3&, double) {
         return axisym_exact_velocity(x);
       },
       0});
  cs.problem.tractionFree = {"outflow"};
  cs.problem.freeTags = {"free"};

  cs.exactVelocity = [](const Vec3& x) { return axisym_exact_velocity(x); };
  cs.exactVelocityGradient = [](const Vec3& x) {
    return axisym_exact_velocity_gradient(x);
  };
  const double mu = opt.mu;
  cs.exactPressure = [mu](const Vec3& x) {
    return axisym_exact_pressure(x, mu);
  };
  return cs;
}

// ---------------------------------------------------------------------------
// channel with conical obstacle
// ---------------------------------------------------------------------------

Vec3 obstacle_mapping(int mapping, const Vec3& p) {
  const double a = p[0], b = p[1], c = p[2];
  switch (mapping) {
    case 1:
      return Vec3(a + 0.1 * b + 0.2 * c + 0.1 * std::sin(a) +
                      0.2 * std::sin(b) + 0.3 * std::sin(2.0 * c),
                  0.1 * a + b - 0.2 * c + 0.3 * std::sin(a) +
                      0.2 * std::sin(b) + 0.1 * std::sin(2.0 * c) -
                      (c - 0.5) * (c - 0.5),
                  -0.2 * a + 0.3 * b + c + 0.2 * std::sin(a) +
                      0.1 * std::sin(b) + 0.3 * std::sin(2.0 * c) +
                      0.25 * a * a);
    case 2: {
      const double q = -0.1 * a * a + 0.2 * a;
      const double s = -(1.0 + q) * (b - 0.205) *
                       std::cos(kPi / 6.0 * (1.0 - a));
      return Vec3(std::cos(0.25 * kPi * a) * (s + 1.2),
                  std::sin(0.25 * kPi * a) * (s + 1.2),
                  c + 0.5 * std::sin(2.0 * a) + 0.2 * std::sin(2.0 * b));
    }
    case 3: {
      const double s = -(1.0 - 0.1 * a * a + 0.2 * a) * (b - 0.205) *
                       std::cos(kPi / 6.0 * (1.0 - a));
      return Vec3(std::cos(0.25 * kPi * a) * (s + 1.2),
                  std::sin(0.25 * kPi * a) * (s + 1.2),
                  6.0 * a / 11.0 + c - 10.0 * a * c / 11.0 +
                      50.0 * a * a * c / 121.0 - 30.0 * a * a / 121.0 +
                      5.0 * (b - 0.205) * (b - 0.205) +
                      0.5 * std::sin(2.0 * a) + 0.2 * std::sin(2.0 * b));
    }
    default:
      throw ValidationError("obstacle channel: mapping index must be 1..3");
  }
}

namespace {

double obstacle_radius(double c) { return 0.05 + 0.03 * c; }

}  // namespace

Case make_obstacle_case(const ObstacleOptions& opt) {
  if (opt.refine < 1 || opt.layers < 1)
    throw ValidationError("obstacle channel: divisions must be positive");
  if (opt.orderU < 2)
    throw ValidationError(
        "obstacle channel: velocity order below two leaves no pressure "
        "space for the mixed pair");
  const double thickness = 1.0 / 3.0;
  const Vec3 center(0.2, 0.2, 0.0);

  // in-plane template: column/row strips with the obstacle cell ringed
  const std::array<double, 6> colX{0.0, 0.1, 0.3, 0.7, 1.4, 2.2};
  const std::array<int, 5> colDiv{1, 2, 2, 2, 2};
  const std::array<double, 4> rowY{0.0, 0.1, 0.3, 0.41};
  const std::array<int, 3> rowDiv{1, 2, 1};

  MeshBuilder mb;
  mb.qGeom = opt.orderGeom;
  mb.geometryMap = [m = opt.mapping](const Vec3& p) {
    return obstacle_mapping(m, p);
  };

  for (int ci = 0; ci < 5; ++ci)
    for (int ri = 0; ri < 3; ++ri) {
      if (ci == 1 && ri == 1) continue;  // ringed by the sector blocks
      Block b;
      b.lo = Vec3(colX[ci], rowY[ri], 0.0);
      b.hi = Vec3(colX[ci + 1], rowY[ri + 1], thickness);
      b.div = {colDiv[ci] * opt.refine, rowDiv[ri] * opt.refine, opt.layers};
      if (ci == 0) b.faceTags[0] = "inflow";
      if (ci == 4) b.faceTags[1] = "outflow";
      if (ri == 0) b.faceTags[2] = "wall";
      if (ri == 2) b.faceTags[3] = "wall";
      b.faceTags[4] = "free";
      b.faceTags[5] = "free";
      mb.blocks.push_back(b);
    }

  // four transfinite sectors between the conical obstacle and the inner
  // square [0.1,0.3]^2; block axes (radial, arc, thickness).  The arc count
  // is even so the sector midlines (front/back/top/bottom of the obstacle)
  // are vertex columns.
  const std::array<Vec3, 4> sqCorner{Vec3(0.3, 0.1, 0.0), Vec3(0.3, 0.3, 0.0),
                                     Vec3(0.1, 0.3, 0.0), Vec3(0.1, 0.1, 0.0)};
  for (int k = 0; k < 4; ++k) {
    Block b;
    b.lo = Vec3::Zero();
    b.hi = Vec3(1.0, 1.0, thickness);
    b.div = {opt.refine, 2 * opt.refine, opt.layers};
    const Vec3 outA = sqCorner[k];
    const Vec3 outB = sqCorner[(k + 1) % 4];
    const double theta0 = -0.25 * kPi + 0.5 * kPi * k;
    b.shape = [=](const Vec3& p) {
      const double beta = p[0], alpha = p[1], c = p[2];
      const double theta = theta0 + 0.5 * kPi * alpha;
      const double r = obstacle_radius(c);
      const Vec3 inner =
          center + r * Vec3(std::cos(theta), std::sin(theta), 0.0);
      const Vec3 outer = outA + alpha * (outB - outA);
      Vec3 q = (1.0 - beta) * inner + beta * outer;
      q[2] = c;
      return q;
    };
    b.faceTags[0] = "wall";  // obstacle surface
    b.faceTags[4] = "free";
    b.faceTags[5] = "free";
    mb.blocks.push_back(b);
  }

  Case cs;
  cs.name = "obstacle-channel-" + std::to_string(opt.mapping);
  cs.mesh = std::make_unique<HexMesh>(mb.build());
  cs.phi = std::make_unique<LevelSetField>(
      LevelSetField::nodal(*cs.mesh, param_component_values(*cs.mesh, 2)));

  cs.problem.mesh = cs.mesh.get();
  cs.problem.phi = cs.phi.get();
  cs.problem.velocity = make_space(*cs.mesh, opt.orderU);
  cs.problem.pressure = make_space(*cs.mesh, opt.orderU - 1);
  cs.problem.mu = opt.mu;
  cs.problem.rho = opt.rho;
  cs.problem.includeAdvection = true;

  const int mapping = opt.mapping;
  cs.problem.dirichlet.push_back(
      {"inflow",
       [mapping](const Vec3&, const Vec3& param, double) {
         const double b = param[1];
         const double flat = 6.0 * b * (0.41 - b) / (0.41 * 0.41);
         const double h = 1e-6;
         Vec3 da = (obstacle_mapping(mapping, param + Vec3(h, 0, 0)) -
                    obstacle_mapping(mapping, param - Vec3(h, 0, 0))) /
                   (2.0 * h);
         return (flat * da).eval();
       },
       0});
  cs.problem.dirichlet.push_back(
      {"wall", [](const Vec3&, const Vec3&, double) { return Vec3::Zero().eval(); },
       1});
  cs.problem.tractionFree = {"outflow"};
  cs.problem.freeTags = {"free"};

  for (double c : {0.0, thickness / 2.0, thickness}) {
    const double r = obstacle_radius(c);
    const std::string suffix = "_c" + std::to_string(c);
    cs.pointProbes.push_back(
        {"front" + suffix,
         obstacle_mapping(mapping, Vec3(0.2 - r, 0.2, c))});
    cs.pointProbes.push_back(
        {"back" + suffix, obstacle_mapping(mapping, Vec3(0.2 + r, 0.2, c))});
  }
  return cs;
}

// ---------------------------------------------------------------------------
// driven cavity on a stack of curved sheets
// ---------------------------------------------------------------------------

Case make_cavity_case(const CavityOptions& opt) {
  if (opt.plan < 2 || opt.layers < 1)
    throw ValidationError("cavity: divisions too small");
  if (opt.plan % 2 != 0)
    throw ValidationError(
        "cavity: in-plane divisions must be even so the pressure anchor "
        "line x = 0.5 lies on mesh nodes");
  const int qGeom = opt.orderGeom > 0 ? opt.orderGeom : opt.order + 1;

  MeshBuilder mb;
  Block b;
  b.lo = Vec3::Zero();
  b.hi = Vec3(1.0, 1.0, 0.125);
  b.div = {opt.plan, opt.plan, opt.layers};
  b.faceTags[0] = "wall";
  b.faceTags[1] = "wall";
  b.faceTags[2] = "wall";
  b.faceTags[3] = "lid";
  b.faceTags[4] = "free";
  b.faceTags[5] = "free";
  mb.blocks.push_back(b);
  mb.qGeom = qGeom;
  mb.geometryMap = [](const Vec3& p) {
    const double a = p[0], bb = p[1], c = p[2];
    const double z = 0.4 * std::sqrt(0.1 + c) *
                         (-1.0 + 8.0 * a + 2.0 * bb - 8.0 * a * a) *
                         (1.0 - bb) +
                     std::sin(c);
    return Vec3(a, bb, z);
  };

  Case cs;
  cs.name = "curved-cavity";
  cs.mesh = std::make_unique<HexMesh>(mb.build());
  cs.phi = std::make_unique<LevelSetField>(
      LevelSetField::nodal(*cs.mesh, param_component_values(*cs.mesh, 2)));

  cs.problem.mesh = cs.mesh.get();
  cs.problem.phi = cs.phi.get();
  cs.problem.velocity = make_space(*cs.mesh, opt.order);
  cs.problem.pressure = make_space(*cs.mesh, opt.order);
  cs.problem.mu = opt.mu;
  cs.problem.rho = opt.rho;
  cs.problem.includeAdvection = true;
  cs.problem.stab = Stabilization::pspg;

  cs.problem.dirichlet.push_back(
      {"lid",
       [](const Vec3& x, const Vec3&, double) {
         return Vec3(1.0 - 4.0 * x[2], 0.0, 0.0);
       },
       0});
  cs.problem.dirichlet.push_back(
      {"wall", [](const Vec3&, const Vec3&, double) { return Vec3::Zero().eval(); },
       1});
  cs.problem.freeTags = {"free"};
  cs.problem.constraint = PressureConstraint::pinAtNodes;
  cs.problem.pinPredicate = [](const Vec3& param) {
    return std::abs(param[0] - 0.5) < 1e-9 && std::abs(param[1]) < 1e-9;
  };
  return cs;
}

// ---------------------------------------------------------------------------
// nested tori
// ---------------------------------------------------------------------------

Vec3 torus_chart(double psi, double theta, double s) {
  const double ring = 2.0 + s * std::cos(theta);
  return Vec3(ring * std::cos(psi), ring * std::sin(psi), s * std::sin(theta));
}

Case make_torus_case(const TorusOptions& opt) {
  if (opt.div[0] < 3 || opt.div[1] < 3 || opt.div[2] < 1)
    throw ValidationError(
        "torus shell: angular directions need at least three divisions "
        "for the periodic seam");
  if (opt.orderU < 2)
    throw ValidationError(
        "torus shell: velocity order below two leaves no pressure space "
        "for the mixed pair");

  MeshBuilder mb;
  Block b;
  b.lo = Vec3(0.0, 0.0, 0.25);
  b.hi = Vec3(2.0 * kPi, 2.0 * kPi, 0.75);
  b.div = opt.div;
  b.faceTags[4] = "free";
  b.faceTags[5] = "free";
  mb.blocks.push_back(b);
  mb.qGeom = opt.orderGeom;
  mb.geometryMap = [](const Vec3& p) {
    return torus_chart(p[0], p[1], p[2]);
  };

  Case cs;
  cs.name = "torus-shell";
  cs.mesh = std::make_unique<HexMesh>(mb.build());
  cs.phi = std::make_unique<LevelSetField>(
      LevelSetField::analytic([](const Vec3& x) {
        LevelSetSample s;
        const double rxy = std::hypot(x[0], x[1]);
        const double d = rxy - 2.0;
        s.value = d * d + x[2] * x[2];
        s.grad = Vec3(2.0 * d * x[0] / rxy, 2.0 * d * x[1] / rxy, 2.0 * x[2]);
        const double r2 = rxy * rxy, r3 = r2 * rxy;
        s.hess(0, 0) = 2.0 * (x[0] * x[0] / r2 + d * x[1] * x[1] / r3);
        s.hess(1, 1) = 2.0 * (x[1] * x[1] / r2 + d * x[0] * x[0] / r3);
        s.hess(0, 1) = s.hess(1, 0) =
            2.0 * x[0] * x[1] * (1.0 / r2 - d / r3);
        s.hess(2, 2) = 2.0;
        return s;
      }));

  cs.problem.mesh = cs.mesh.get();
  cs.problem.phi = cs.phi.get();
  cs.problem.velocity = make_space(*cs.mesh, opt.orderU);
  cs.problem.pressure = make_space(*cs.mesh, opt.orderU - 1);
  cs.problem.mu = opt.mu;
  cs.problem.rho = opt.rho;
  cs.problem.includeAdvection = true;
  cs.problem.freeTags = {"free"};
  cs.problem.constraint = PressureConstraint::zeroWeightedMean;

  cs.initialVelocity = [](const Vec3& x) {
    const double rxy = x[0] * x[0] + x[1] * x[1];
    const double rt = std::sqrt(rxy);
    return Vec3(-(x[1] + 2.0 * x[0] * x[2]) / (8.0 * rxy),
                (x[0] - 2.0 * x[1] * x[2]) / (8.0 * rxy),
                (rt - 2.0) / (4.0 * rt));
  };

  // The probe cross-checks chart positions against the mesh geometry, which
  // is a per-element polynomial interpolant of the chart; the tolerance must
  // absorb that interpolation error (quartic in the angular element size for
  // cubic geometry) while still staying far below a wrong-chart mismatch.
  const double coarse = std::max(
      {1.0, std::pow(12.0 / opt.div[0], 4), std::pow(8.0 / opt.div[1], 4)});
  const double tol = std::min(0.03, 2e-3 * coarse);
  for (double r : opt.probeRadii) {
    cs.energyProbes.push_back(make_chart_probe(
        *cs.mesh, *cs.phi, r * r,
        [r](double s, double t) { return Vec3(s, t, r); },
        [r](double s, double t) { return torus_chart(s, t, r); },
        [r](double, double t) { return r * (2.0 + r * std::cos(t)); },
        {0.0, 2.0 * kPi, 0.0, 2.0 * kPi}, opt.probePoints,
        std::max(8, (2 * opt.probePoints) / 3), tol));
  }
  return cs;
}

// ---------------------------------------------------------------------------
// plane-foliated slab
// ---------------------------------------------------------------------------

Case make_slab_case(const SlabOptions& opt) {
  for (int d = 0; d < 3; ++d) {
    if (opt.div[d] < 1)
      throw ValidationError("slab: divisions must be positive");
    if (!(opt.extent[d] > 0))
      throw ValidationError("slab: extent must be positive");
  }

  MeshBuilder mb;
  Block b;
  b.lo = Vec3::Zero();
  b.hi = opt.extent;
  b.div = opt.div;
  b.faceTags[0] = "wall";
  b.faceTags[1] = "wall";
  b.faceTags[2] = "wall";
  b.faceTags[3] = "wall";
  b.faceTags[4] = "free";
  b.faceTags[5] = "free";
  mb.blocks.push_back(b);
  mb.qGeom = opt.orderGeom;

  Case cs;
  cs.name = "layered-slab";
  cs.mesh = std::make_unique<HexMesh>(mb.build());
  cs.phi = std::make_unique<LevelSetField>(
      LevelSetField::analytic([](const Vec3& x) {
        LevelSetSample s;
        s.value = x[2];
        s.grad = Vec3(0.0, 0.0, 1.0);
        return s;
      }));

  cs.problem.mesh = cs.mesh.get();
  cs.problem.phi = cs.phi.get();
  cs.problem.velocity = make_space(*cs.mesh, opt.orderU);
  cs.problem.pressure = make_space(*cs.mesh, opt.orderP);
  cs.problem.mu = opt.mu;
  cs.problem.rho = opt.rho;
  cs.problem.includeAdvection = false;

  const double h = opt.extent[2];
  auto profile = [h](double z) {
    const double d = z - 0.5 * h;
    return 1.0 - 4.0 * d * d / (h * h);
  };
  cs.exactVelocity = [profile](const Vec3& x) {
    return Vec3(profile(x[2]), 0.0, 0.0);
  };
  cs.exactVelocityGradient = [h](const Vec3& x) {
    Mat3 g = Mat3::Zero();
    g(0, 2) = -8.0 * (x[2] - 0.5 * h) / (h * h);
    return g;
  };
  const double G = opt.pressureGradient;
  cs.exactPressure = [G](const Vec3& x) { return -G * x[0]; };

  cs.problem.dirichlet.push_back(
      {"wall",
       [profile](const Vec3& x, const Vec3&, double) {
         return Vec3(profile(x[2]), 0.0, 0.0);
       },
       0});
  cs.problem.freeTags = {"free"};
  cs.problem.constraint = PressureConstraint::pinAtNodes;
  const double tol = 1e-9 * cs.mesh->diameter;
  cs.problem.pinPredicate = [tol](const Vec3& param) {
    return std::abs(param[0]) < tol && std::abs(param[1]) < tol;
  };
  cs.problem.bodyForce = [G](const Vec3&, double) {
    return Vec3(-G, 0.0, 0.0);
  };
  return cs;
}

}  // namespace lsflow
