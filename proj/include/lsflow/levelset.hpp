#pragma once

#include "lsflow/element.hpp"
#include "lsflow/types.hpp"

#include <functional>
#include <memory>

namespace lsflow {

/// Pointwise data of a scalar bulk field: value, classical gradient and
/// Hessian.
struct LevelSetSample {
  double value = 0.0;
  Vec3 grad = Vec3::Zero();
  Mat3 hess = Mat3::Zero();
};

/// Scalar field whose level sets carry the flow.  Either analytic callables
/// of the physical position, or a nodal interpolant over a mesh's geometry
/// space whose derivatives are those of the interpolant.
class LevelSetField {
public:
  static LevelSetField analytic(
      std::function<LevelSetSample(const Vec3&)> fn);
  static LevelSetField nodal(const HexMesh& mesh, VecX nodeValues);

  bool is_nodal() const { return nodal_; }

  /// Analytic evaluation at a physical point; throws for nodal fields
  /// (their derivatives only exist element-wise).
  LevelSetSample sample(const Vec3& x) const;

  /// Evaluation inside an element.  For nodal fields the basis data must
  /// carry second derivatives.
  LevelSetSample sample(const ElementMap& em, const BasisPoint& bp,
                        const MapPoint& mp) const;

  /// Nodal value bounds (nodal fields); used for level ranges.
  std::pair<double, double> nodal_range() const;
  const VecX& node_values() const { return coeffs_; }

private:
  bool nodal_ = false;
  std::function<LevelSetSample(const Vec3&)> fn_;
  const HexMesh* mesh_ = nullptr;
  VecX coeffs_;
};

/// First- and second-order surface geometry at a point: unit normal, in-plane
/// projector, gradient norm, Weingarten map and curvatures.
struct GeometryFrame {
  double value = 0.0;
  double normGrad = 0.0;
  Vec3 n = Vec3::Zero();
  Mat3 P = Mat3::Zero();
  Mat3 H = Mat3::Zero();       // Weingarten map, symmetric and in-plane
  double kappa = 0.0;          // summed curvature, tr(H)
  double kappa1 = 0.0, kappa2 = 0.0;  // principal curvatures
  double gauss = 0.0;          // kappa1 * kappa2 (diagnostic)
};

/// Builds the frame from a sample.  gradFloor is the absolute gradient-norm
/// floor below which the frame is considered degenerate
/// (DegenerateGradient); pass 1e-10 times the domain diameter.
GeometryFrame evaluate_frame(const LevelSetSample& s, double gradFloor);

/// Co-normal triad at a bulk boundary point with outward boundary normal m:
/// t = m x n normalized, q = n x t normalized.  Throws DegenerateTriad when
/// m and n are (anti)parallel within tolerance.
struct BoundaryTriad {
  Vec3 t = Vec3::Zero();
  Vec3 q = Vec3::Zero();
};

BoundaryTriad boundary_frame(const GeometryFrame& f, const Vec3& m,
                             double tol = 1e-8);

/// Spatial derivatives of the frame used by strong-form residuals:
/// gradN(i,k) = d n_i / d x_k exactly from the Hessian; gradH[k] = d H / d x_k
/// by central differences along reference coordinates.
struct FrameGradients {
  Mat3 gradN = Mat3::Zero();
  MatGrad gradH{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
};

FrameGradients frame_gradients(const LevelSetField& phi, const ElementMap& em,
                               const Vec3& ref, const MapPoint& mp,
                               const GeometryFrame& frame, double gradFloor);

}  // namespace lsflow
