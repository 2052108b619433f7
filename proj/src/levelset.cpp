#include "lsflow/levelset.hpp"

#include "lsflow/errors.hpp"

#include <cmath>

namespace lsflow {

LevelSetField LevelSetField::analytic(
    std::function<LevelSetSample(const Vec3&)> fn) {
  LevelSetField f;
  f.nodal_ = false;
  f.fn_ = std::move(fn);
  return f;
}

LevelSetField LevelSetField::nodal(const HexMesh& mesh, VecX nodeValues) {
  if (nodeValues.size() != mesh.n_nodes())
    throw ValidationError(
       "LevelSetField::nodal: coefficient count does not match mesh nodes");
  LevelSetField f;
  f.nodal_ = true;
  f.mesh_ = &mesh;
  f.coeffs_ = std::move(nodeValues);
  return f;
}

LevelSetSample LevelSetField::sample(const Vec3& x) const {
  if (nodal_)
    throw ValidationError(
        "LevelSetField: nodal fields require element-local evaluation");
  return fn_(x);
}

LevelSetSample LevelSetField::sample(const ElementMap& em,
                                     const BasisPoint& bp,
                                     const MapPoint& mp) const {
  if (!nodal_) return fn_(mp.x);
  if (!bp.hasSecond)
    throw MissingSecondDerivatives(
        "LevelSetField: nodal sampling needs basis second derivatives");
  LevelSetSample s;
  const auto& nodes = em.mesh().elemNodes[em.elem()];
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    double c = coeffs_(nodes[a]);
    s.value += c * bp.n(a);
    s.grad += c * bp.grad.row(a).transpose();
    s.hess += c * bp.hess[a];
  }
  return s;
}

std::pair<double, double> LevelSetField::nodal_range() const {
  if (!nodal_)
    throw ValidationError("LevelSetField: nodal_range only for nodal fields");
  return {coeffs_.minCoeff(), coeffs_.maxCoeff()};
}

GeometryFrame evaluate_frame(const LevelSetSample& s, double gradFloor) {
  GeometryFrame f;
  f.value = s.value;
  f.normGrad = s.grad.norm();
  if (f.normGrad <= gradFloor)
    throw DegenerateGradient("evaluate_frame: |grad phi| = " +
                             std::to_string(f.normGrad) +
                             " at or below floor " +
                             std::to_string(gradFloor));
  f.n = s.grad / f.normGrad;
  f.P = Mat3::Identity() - f.n * f.n.transpose();
  f.H = f.P * s.hess * f.P / f.normGrad;
  f.kappa = f.H.trace();

  // principal curvatures: negatives of the two in-plane eigenvalues; the
  // third eigenvector is n with eigenvalue zero
  Eigen::SelfAdjointEigenSolver<Mat3> eig(f.H);
  int drop = 0;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    double align = std::abs(eig.eigenvectors().col(i).dot(f.n));
    if (align > best) {
      best = align;
      drop = i;
    }
  }
  double vals[2];
  int w = 0;
  for (int i = 0; i < 3; ++i)
    if (i != drop) vals[w++] = eig.eigenvalues()(i);
  f.kappa1 = -vals[0];
  f.kappa2 = -vals[1];
  f.gauss = f.kappa1 * f.kappa2;
  return f;
}

BoundaryTriad boundary_frame(const GeometryFrame& f, const Vec3& m,
                             double tol) {
  BoundaryTriad b;
  Vec3 t = m.cross(f.n);
  double nt = t.norm();
  if (nt <= tol)
    throw DegenerateTriad(
        "boundary_frame: boundary normal is parallel to the surface normal");
  b.t = t / nt;
  Vec3 q = f.n.cross(b.t);
  b.q = q / q.norm();
  return b;
}

FrameGradients frame_gradients(const LevelSetField& phi, const ElementMap& em,
                               const Vec3& ref, const MapPoint& mp,
                               const GeometryFrame& frame, double gradFloor) {
  FrameGradients fg;
  // grad(n) = Hess/|g| - n (n^T Hess)/|g|
  LevelSetSample s;
  if (phi.is_nodal()) {
    TensorBasis geom({em.mesh().qGeom, em.mesh().qGeom, em.mesh().qGeom});
    TensorBasis::Values v;
    geom.eval(ref, v, true);
    BasisPoint bp = ElementMap::push_forward(v, mp, true);
    s = phi.sample(em, bp, mp);
  } else {
    s = phi.sample(mp.x);
  }
  fg.gradN = (s.hess - frame.n * (frame.n.transpose() * s.hess)) /
             frame.normGrad;

  // grad(H) by central differences along reference axes, chain-ruled to
  // physical directions; reuses the element geometry so the same code path
  // serves analytic and nodal fields.
  const double dr = 1e-4;
  TensorBasis geom({em.mesh().qGeom, em.mesh().qGeom, em.mesh().qGeom});
  MatGrad dHdr;
  for (int d = 0; d < 3; ++d) {
    Mat3 Hs[2];
    for (int sgn = 0; sgn < 2; ++sgn) {
      Vec3 rp = ref;
      rp[d] += (sgn == 0 ? -dr : dr);
      MapPoint mpp = em.map(rp, true);
      LevelSetSample sp;
      if (phi.is_nodal()) {
        TensorBasis::Values v;
        geom.eval(rp, v, true);
        BasisPoint bp = ElementMap::push_forward(v, mpp, true);
        sp = phi.sample(em, bp, mpp);
      } else {
        sp = phi.sample(mpp.x);
      }
      GeometryFrame fp = evaluate_frame(sp, gradFloor);
      Hs[sgn] = fp.H;
    }
    dHdr[d] = (Hs[1] - Hs[0]) / (2.0 * dr);
  }
  for (int k = 0; k < 3; ++k) {
    fg.gradH[k] = Mat3::Zero();
    for (int d = 0; d < 3; ++d) fg.gradH[k] += dHdr[d] * mp.Jinv(d, k);
  }
  return fg;
}

}  // namespace lsflow
