#pragma once

#include "lsflow/types.hpp"

#include <array>
#include <vector>

namespace lsflow {

/// Gauss-Legendre nodes and weights on [-1, 1]; exact for polynomials of
/// degree 2n-1.
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

Rule1D gauss_legendre(int npoints);

/// Smallest point count whose rule integrates the given polynomial degree.
int points_for_degree(int degree);

/// Tensor-product rule on the reference hex [-1,1]^3, possibly with
/// different point counts per direction.
struct TensorRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  std::array<int, 3> npts;

  static TensorRule for_degree(int degree);
  static TensorRule for_degrees(const std::array<int, 3>& degrees);
};

/// Tensor-product rule on a reference face [-1,1]^2; (u, v) are the in-face
/// axes of the owning hex face.
struct FaceRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;

  static FaceRule for_degree(int degree);
};

}  // namespace lsflow
