#pragma once

#include "lsflow/lagrange.hpp"
#include "lsflow/mesh.hpp"
#include "lsflow/space.hpp"
#include "lsflow/types.hpp"

#include <vector>

namespace lsflow {

/// Geometry data of one element at one reference point.
struct MapPoint {
  Vec3 x;                  // physical position
  Vec3 param;              // parameter-space position
  Mat3 J;                  // dx/dr
  Mat3 Jinv;
  double detJ = 0.0;
  MatGrad d2x;             // d2x[i] = reference Hessian of x_i
};

/// Physical-space basis data of one space at one reference point.
struct BasisPoint {
  VecX n;                       // values
  MatX grad;                    // nbasis x 3, physical gradients
  std::vector<Mat3> hess;       // physical Hessians (optional)
  bool hasSecond = false;
};

/// Per-element evaluator: caches the geometry basis and maps reference
/// points through the element geometry.  Throws SingularJacobian /
/// InvertedElement on degenerate mappings.
class ElementMap {
public:
  ElementMap(const HexMesh& mesh, int elem);

  int elem() const { return elem_; }
  const HexMesh& mesh() const { return *mesh_; }

  MapPoint map(const Vec3& r, bool second = true) const;
  /// Same, from precomputed reference geometry-basis values.
  MapPoint map_from(const TensorBasis::Values& v, bool second = true) const;
  /// Physical basis data from precomputed reference values.
  static BasisPoint push_forward(const TensorBasis::Values& ref,
                                 const MapPoint& mp, bool second);

  /// Interpolates a scalar nodal field given by global coefficients over the
  /// geometry space.
  double geom_value(const VecX& coeffs, const TensorBasis::Values& ref) const;
  Vec3 geom_gradient(const VecX& coeffs, const BasisPoint& bp) const;

private:
  const HexMesh* mesh_;
  int elem_;
  TensorBasis geom_;
};

/// Outward unit normal and surface measure of an element face at a face
/// quadrature point; (u, v) in [-1,1]^2 are the in-face coordinates.
struct FacePoint {
  Vec3 x;
  Vec3 param;
  Vec3 m;          // outward unit normal of the bulk boundary
  double dA = 0.0; // physical area element per unit reference area
  Vec3 ref;        // reference coordinates in the element
  MapPoint mp;
};

FacePoint face_point(const ElementMap& em, int side, double u, double v);

}  // namespace lsflow
