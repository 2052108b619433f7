#pragma once

#include "lsflow/levelset.hpp"
#include "lsflow/types.hpp"

namespace lsflow {

// Pointwise tangential calculus.  All kernels take classical derivatives of
// the fields; nothing here differentiates.  Gradient convention:
// (grad v)(i,j) = d v_i / d x_j.

/// P g: in-plane surface gradient of a scalar.
Vec3 surface_gradient_scalar(const Vec3& grad, const GeometryFrame& f);

/// (grad v) P: directional surface gradient of a vector field.
Mat3 surface_gradient_dir(const Mat3& gradv, const GeometryFrame& f);

/// P (grad v) P: covariant surface gradient.
Mat3 surface_gradient_cov(const Mat3& gradv, const GeometryFrame& f);

/// tr((grad v) P): surface divergence of a vector field.
double surface_divergence_vector(const Mat3& gradv, const GeometryFrame& f);

/// Row-wise surface divergence of a tensor field; rowGrads[i] is the
/// classical gradient of row i.
Vec3 surface_divergence_tensor(const MatGrad& rowGrads,
                               const GeometryFrame& f);

/// Directional and covariant strains of the full velocity field.
Mat3 strain_dir(const Mat3& gradu, const GeometryFrame& f);
Mat3 strain_cov(const Mat3& gradu, const GeometryFrame& f);

/// Covariant strain of the tangential part u_t = P u, using
/// eps_cov(u) = eps_cov(u_t) + (u.n) H.
Mat3 strain_cov_tangential(const Vec3& u, const Mat3& gradu,
                           const GeometryFrame& f);

/// Covariant gradient of the tangential part: P (grad u) P - (u.n) H.
Mat3 grad_cov_tangential(const Vec3& u, const Mat3& gradu,
                         const GeometryFrame& f);

/// In-plane stress sigma_t = -p P + 2 mu eps_cov(u_t).
Mat3 surface_stress(double p, const Vec3& u, const Mat3& gradu, double mu,
                    const GeometryFrame& f);

/// Scalar vorticity (curl_dir u_t) . n; reduces to the classical planar curl
/// on flat level sets.
double vorticity_scalar(const Mat3& gradu, const GeometryFrame& f);

}  // namespace lsflow
