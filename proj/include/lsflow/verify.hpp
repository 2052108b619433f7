#pragma once

#include "lsflow/assembly.hpp"
#include "lsflow/solve.hpp"

#include <array>
#include <functional>
#include <vector>

namespace lsflow {

/// Level-set frame at an element-local point (nodal or analytic field).
GeometryFrame frame_at(const HexMesh& mesh, const LevelSetField& phi, int elem,
                       const Vec3& ref, double gradFloor);

/// Discrete field evaluation at an element-local point.
Vec3 velocity_at(const FunctionSpace& vs, const VecX& u, int elem,
                 const Vec3& ref);
Mat3 velocity_gradient_at(const FunctionSpace& vs, const VecX& u, int elem,
                          const Vec3& ref);
double pressure_at(const FunctionSpace& ps, const VecX& p, int elem,
                   const Vec3& ref);

/// Finds the mesh vertex at x (within tol) and returns an owning element and
/// the vertex's reference coordinates; ProbeOffSurface if no vertex matches.
std::pair<int, Vec3> locate_node(const HexMesh& mesh, const Vec3& x,
                                 double tol);

/// Sum of per-component weighted L2 errors:
/// sum_i sqrt( int (u_i^h - u_i^ex)^2 |grad phi| ).
double velocity_l2_error(const FlowProblem& pb, const VecX& u,
                         const std::function<Vec3(const Vec3&)>& exact,
                         int degreeBoost = 3);

/// Dissipation functional mu/2 int (P grad v P):(P grad v P) |grad phi| for
/// the discrete field / for an analytic gradient.
double dissipation_functional(const FlowProblem& pb, const VecX& u);
double dissipation_functional_exact(
    const FlowProblem& pb, const std::function<Mat3(const Vec3&)>& gradExact,
    int degreeBoost = 3);

/// Element-interior strong residual norms of a discrete solution: momentum
/// (with transport when the problem advects) and continuity.
struct ResidualNorms {
  double momentum = 0.0;
  double continuity = 0.0;
};
ResidualNorms residual_norms(const FlowProblem& pb, const FlowState& s);

/// Strong viscous operator of a discrete/analytic velocity at a point:
/// 2 mu * P * surface divergence of the tangential covariant strain.
Vec3 strong_viscous_divergence(const GeometryFrame& f,
                               const FrameGradients& fg, const Vec3& uval,
                               const Mat3& gradU,
                               const std::array<Mat3, 3>& hessU, double mu);

/// Least-squares slope of log(err) vs log(h) over the last three points
/// (two when only two are given); InsufficientData below that.
double fitted_rate(const std::vector<double>& h,
                   const std::vector<double>& err);

/// Quadrature over an axis-aligned box with an explicit integrand (any
/// Jacobian factors are the caller's).  npts Gauss points per direction.
double integrate_box(const Vec3& lo, const Vec3& hi, int npts,
                     const std::function<double(const Vec3&)>& f);

/// Bulk quadrature point with its co-area weight w = quadrature weight *
/// |det J| * |grad phi|.
struct BulkPoint {
  int elem = 0;
  Vec3 ref = Vec3::Zero();
  MapPoint mp;
  GeometryFrame frame;
  double w = 0.0;
};

/// Integrates f over the whole bulk with the co-area weight folded into
/// BulkPoint::w; deterministic pairwise reduction.
double integrate_bulk(const HexMesh& mesh, const LevelSetField& phi,
                      int degree, double gradFloor,
                      const std::function<double(const BulkPoint&)>& f);

/// Quadrature points on one level set, carried as element-local coordinates
/// so discrete fields can be evaluated without inverse mappings.
struct SurfacePoint {
  int elem = 0;
  Vec3 ref = Vec3::Zero();
  Vec3 x = Vec3::Zero();
  double w = 0.0;   // surface measure weight
};
struct SurfaceProbe {
  double level = 0.0;
  std::vector<SurfacePoint> pts;
};

/// Builds a probe from an explicit chart (s, t) of one level set:
/// paramOf(s,t) -> mesh parameter point (resolved by locate_param),
/// chartX(s,t) -> physical position, areaEl(s,t) -> surface area element.
/// Verifies that the mapped mesh point reproduces chartX and that the level
/// set value matches `level` (ProbeOffSurface otherwise).
SurfaceProbe make_chart_probe(
    const HexMesh& mesh, const LevelSetField& phi, double level,
    const std::function<Vec3(double, double)>& paramOf,
    const std::function<Vec3(double, double)>& chartX,
    const std::function<double(double, double)>& areaEl,
    const std::array<double, 4>& bounds, int nS, int nT, double tol);

/// 1/2 rho int |u|^2 over the probe surface.
double kinetic_energy(const FunctionSpace& vs, const VecX& u,
                      const SurfaceProbe& probe, double rho);

/// int (u . n)^2 |grad phi| over the bulk (penalty efficacy measure).
double normal_flux_measure(const FlowProblem& pb, const VecX& u);

}  // namespace lsflow
