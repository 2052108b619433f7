#include "lsflow/element.hpp"

#include "lsflow/errors.hpp"

#include <cmath>

namespace lsflow {

ElementMap::ElementMap(const HexMesh& mesh, int elem)
    : mesh_(&mesh), elem_(elem),
      geom_({mesh.qGeom, mesh.qGeom, mesh.qGeom}) {}

MapPoint ElementMap::map(const Vec3& r, bool second) const {
  TensorBasis::Values v;
  geom_.eval(r, v, second);
  return map_from(v, second);
}

MapPoint ElementMap::map_from(const TensorBasis::Values& v, bool second) const {
  MapPoint mp;
  mp.x = Vec3::Zero();
  mp.param = Vec3::Zero();
  mp.J = Mat3::Zero();
  if (second)
    for (auto& m : mp.d2x) m = Mat3::Zero();

  const auto& nodes = mesh_->elemNodes[elem_];
  const auto& params = mesh_->elemParams[elem_];
  for (int a = 0; a < geom_.size(); ++a) {
    const Vec3& X = mesh_->nodeCoords[nodes[a]];
    mp.x += v.n(a) * X;
    mp.param += v.n(a) * params[a];
    for (int d = 0; d < 3; ++d) mp.J.col(d) += v.dn(a, d) * X;
    if (second)
      for (int i = 0; i < 3; ++i) mp.d2x[i] += X[i] * v.d2n[a];
  }
  mp.detJ = mp.J.determinant();
  if (!(std::abs(mp.detJ) > 1e-300))
    throw SingularJacobian("element " + std::to_string(elem_) +
                           ": vanishing Jacobian determinant");
  if (mp.detJ < 0.0)
    throw InvertedElement("element " + std::to_string(elem_) +
                          ": negative Jacobian determinant " +
                          std::to_string(mp.detJ));
  mp.Jinv = mp.J.inverse();
  return mp;
}

BasisPoint ElementMap::push_forward(const TensorBasis::Values& ref,
                                    const MapPoint& mp, bool second) {
  BasisPoint bp;
  const int n = static_cast<int>(ref.n.size());
  bp.n = ref.n;
  bp.grad.resize(n, 3);
  // physical gradient: J^{-T} dN/dr
  for (int a = 0; a < n; ++a) {
    Vec3 g = mp.Jinv.transpose() * Vec3(ref.dn(a, 0), ref.dn(a, 1),
                                        ref.dn(a, 2));
    bp.grad.row(a) = g.transpose();
  }
  if (second) {
    bp.hasSecond = true;
    bp.hess.resize(n);
    // d2N/dx2 = J^{-T} (d2N/dr2 - sum_i g_i d2x_i/dr2) J^{-1}
    for (int a = 0; a < n; ++a) {
      Mat3 corr = ref.d2n[a];
      for (int i = 0; i < 3; ++i) corr -= bp.grad(a, i) * mp.d2x[i];
      bp.hess[a] = mp.Jinv.transpose() * corr * mp.Jinv;
    }
  }
  return bp;
}

double ElementMap::geom_value(const VecX& coeffs,
                              const TensorBasis::Values& ref) const {
  const auto& nodes = mesh_->elemNodes[elem_];
  double s = 0.0;
  for (int a = 0; a < geom_.size(); ++a) s += ref.n(a) * coeffs(nodes[a]);
  return s;
}

Vec3 ElementMap::geom_gradient(const VecX& coeffs, const BasisPoint& bp) const {
  const auto& nodes = mesh_->elemNodes[elem_];
  Vec3 g = Vec3::Zero();
  for (int a = 0; a < static_cast<int>(nodes.size()); ++a)
    g += coeffs(nodes[a]) * bp.grad.row(a).transpose();
  return g;
}

FacePoint face_point(const ElementMap& em, int side, double u, double v) {
  auto axes = face_axes(side);
  int fixed = face_axis(side);
  Vec3 r;
  r[axes[0]] = u;
  r[axes[1]] = v;
  r[fixed] = face_at_upper(side) ? 1.0 : -1.0;

  FacePoint fp;
  fp.ref = r;
  fp.mp = em.map(r, true);
  fp.x = fp.mp.x;
  fp.param = fp.mp.param;

  Vec3 tu = fp.mp.J.col(axes[0]);
  Vec3 tv = fp.mp.J.col(axes[1]);
  Vec3 nrm = tu.cross(tv);
  double area = nrm.norm();
  if (area < 1e-300)
    throw SingularJacobian("degenerate face tangents on element " +
                           std::to_string(em.elem()));
  fp.dA = area;
  fp.m = nrm / area;
  // orient outward: positive along the fixed reference axis direction
  Vec3 outRef = Vec3::Zero();
  outRef[fixed] = face_at_upper(side) ? 1.0 : -1.0;
  Vec3 outPhys = fp.mp.J * outRef;
  if (fp.m.dot(outPhys) < 0.0) fp.m = -fp.m;
  return fp;
}

}  // namespace lsflow
