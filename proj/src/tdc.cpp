#include "lsflow/tdc.hpp"

namespace lsflow {

Vec3 surface_gradient_scalar(const Vec3& grad, const GeometryFrame& f) {
  return f.P * grad;
}

Mat3 surface_gradient_dir(const Mat3& gradv, const GeometryFrame& f) {
  return gradv * f.P;
}

Mat3 surface_gradient_cov(const Mat3& gradv, const GeometryFrame& f) {
  return f.P * gradv * f.P;
}

double surface_divergence_vector(const Mat3& gradv, const GeometryFrame& f) {
  return (gradv * f.P).trace();
}

Vec3 surface_divergence_tensor(const MatGrad& rowGrads,
                               const GeometryFrame& f) {
  Vec3 d;
  for (int i = 0; i < 3; ++i) d[i] = (rowGrads[i] * f.P).trace();
  return d;
}

Mat3 strain_dir(const Mat3& gradu, const GeometryFrame& f) {
  Mat3 g = gradu * f.P;
  return 0.5 * (g + g.transpose());
}

Mat3 strain_cov(const Mat3& gradu, const GeometryFrame& f) {
  Mat3 s = 0.5 * (gradu + gradu.transpose());
  return f.P * s * f.P;
}

Mat3 strain_cov_tangential(const Vec3& u, const Mat3& gradu,
                           const GeometryFrame& f) {
  return strain_cov(gradu, f) - (u.dot(f.n)) * f.H;
}

Mat3 grad_cov_tangential(const Vec3& u, const Mat3& gradu,
                         const GeometryFrame& f) {
  return f.P * gradu * f.P - (u.dot(f.n)) * f.H;
}

Mat3 surface_stress(double p, const Vec3& u, const Mat3& gradu, double mu,
                    const GeometryFrame& f) {
  return -p * f.P + 2.0 * mu * strain_cov_tangential(u, gradu, f);
}

double vorticity_scalar(const Mat3& gradu, const GeometryFrame& f) {
  // n . curl of the covariant gradient: eps_ijk n_i B_kj with B = P grad(u) P.
  // The grad(P) correction terms vanish identically in this contraction.
  Mat3 B = f.P * gradu * f.P;
  Vec3 curl(B(2, 1) - B(1, 2), B(0, 2) - B(2, 0), B(1, 0) - B(0, 1));
  return f.n.dot(curl);
}

}  // namespace lsflow
