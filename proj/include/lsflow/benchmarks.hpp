#pragma once

#include "lsflow/assembly.hpp"
#include "lsflow/levelset.hpp"
#include "lsflow/mesh.hpp"
#include "lsflow/solve.hpp"
#include "lsflow/verify.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lsflow {

// Closed-form reference data for the rotational channel family bounded by
// surfaces of revolution with a sinusoidally modulated meridian.  The exact
// velocity follows the meridian of every surface, the exact pressure balances
// the viscous force so that the tangential body force vanishes identically.
Vec3 axisym_exact_velocity(const Vec3& x);
Mat3 axisym_exact_velocity_gradient(const Vec3& x);
/// 2 mu P div_G eps_cov(u), the viscous force of the exact field.
Vec3 axisym_momentum_source(const Vec3& x, double mu);
LevelSetSample axisym_level_set(const Vec3& x);
/// Meridian line integral of the viscous force anchored at the traction-free
/// outlet; the exact pressure of the rotational channel.
double axisym_exact_pressure(const Vec3& x, double mu);

/// A named physical probe location; placed on mesh vertices by construction.
struct PointProbe {
  std::string name;
  Vec3 x = Vec3::Zero();
};

/// A fully wired flow case.  Mesh, level-set field, and spaces are owned here
/// so the raw pointers inside `problem` stay valid for the case's lifetime.
/// Cases are movable, not copyable.
struct Case {
  std::string name;
  std::unique_ptr<HexMesh> mesh;
  std::unique_ptr<LevelSetField> phi;
  FlowProblem problem;
  std::function<Vec3(const Vec3&)> exactVelocity;          // empty when none
  std::function<Mat3(const Vec3&)> exactVelocityGradient;  // empty when none
  std::function<double(const Vec3&)> exactPressure;        // empty when none
  std::function<Vec3(const Vec3&)> initialVelocity;        // empty -> zero
  std::vector<SurfaceProbe> energyProbes;
  std::vector<PointProbe> pointProbes;

  Case() = default;
  Case(Case&&) = default;
  Case& operator=(Case&&) = default;
};

/// Rotational channel: bulk between surfaces of revolution, inflow at the
/// bottom rim, traction-free outlet at the top rim.  Zero tangential body
/// force; the exact solution is known in closed form.
struct AxisymOptions {
  int refine = 1;      // multiplies the base divisions (1, 6, 4)
  int orderU = 2;      // velocity order; pressure is one lower
  int orderGeom = -1;  // default orderU + 1
  double mu = 0.1;
  double rho = 1.0;
};
Case make_axisymmetric_case(const AxisymOptions& opt = {});

/// One of the three bulk maps of the curved-channel obstacle family applied
/// to flat coordinates (a, b, c).
Vec3 obstacle_mapping(int mapping, const Vec3& a);

/// Channel flow around a conical obstacle on curved level sets.  The flat
/// channel [0,2.2] x [0,0.41] x [0,1/3] carries a nodal level-set field
/// phi = c and is bent by one of three bulk maps.  The mesh rings the
/// obstacle so the front/back stagnation lines are mesh vertex columns.
struct ObstacleOptions {
  int mapping = 1;  // 1, 2, or 3
  int refine = 1;   // multiplies the in-plane division template
  int layers = 2;   // thickness divisions
  int orderU = 2;   // velocity order; pressure one lower
  int orderGeom = 3;
  double mu = 0.01;
  double rho = 1.0;
};
Case make_obstacle_case(const ObstacleOptions& opt = {});

/// Lid-driven cavity on a stack of curved surfaces, equal-order elements
/// with pressure stabilization.  The flat box [0,1]^2 x [0,0.125] carries a
/// nodal field phi = c and is bent so every level set is a different curved
/// sheet sharing the straight driven edge.
struct CavityOptions {
  int plan = 12;   // in-plane divisions per direction
  int layers = 2;  // thickness divisions
  int order = 2;   // equal velocity and pressure order
  int orderGeom = -1;  // default order + 1
  double mu = 0.01;
  double rho = 1.0;
};
Case make_cavity_case(const CavityOptions& opt = {});

/// Torus point of the standard chart: angles psi (major), theta (minor),
/// minor radius s, major radius 2.
Vec3 torus_chart(double psi, double theta, double s);

/// Free decay of a swirling flow on a family of nested tori (major radius 2,
/// minor radii 0.25..0.75).  Closed surfaces: no boundary conditions, the
/// pressure is fixed by a zero weighted-mean constraint.
struct TorusOptions {
  std::array<int, 3> div{12, 8, 1};  // major angle, minor angle, radius
  int orderU = 2;  // velocity order; pressure one lower
  int orderGeom = 3;
  double mu = 1.0;
  double rho = 1.0;
  std::vector<double> probeRadii{0.25, 0.5, 0.75};
  int probePoints = 24;  // chart samples around the major angle
};
Case make_torus_case(const TorusOptions& opt = {});

/// Plane-foliated slab [0,extent]: phi = z, every level set a flat sheet.
/// All side walls carry Dirichlet data of the layered translation profile
/// u = (U(z), 0, 0) with the parabola U(z) = 1 - 4 (z - h/2)^2 / h^2,
/// h = extent_z.  The body force (-G, 0, 0) induces the exact pressure -G x,
/// pinned along the x = y = 0 edge.  Both fields are exactly representable,
/// so the discrete solution matches them to solver precision.
struct SlabOptions {
  std::array<int, 3> div{4, 4, 2};
  Vec3 extent = Vec3(1.0, 1.0, 0.5);
  int orderU = 2;
  int orderP = 1;
  int orderGeom = 1;
  double mu = 1.0;
  double rho = 0.0;
  double pressureGradient = 1.0;  // G: body force (-G, 0, 0), pressure -G x
};
Case make_slab_case(const SlabOptions& opt = {});

/// Nodal interpolation of a velocity field into interleaved coefficients.
VecX interpolate_velocity(const FunctionSpace& vs,
                          const std::function<Vec3(const Vec3&)>& u);

}  // namespace lsflow
