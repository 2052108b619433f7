#pragma once

#include "lsflow/quadrature.hpp"
#include "lsflow/types.hpp"

#include <array>
#include <vector>

namespace lsflow {

/// 1-D Lagrange basis of order q on equispaced nodes in [-1, 1].
/// eval fills value, first and second derivative of every basis function at
/// a point.
struct Lagrange1D {
  int order = 1;
  std::vector<double> nodes;

  explicit Lagrange1D(int q);
  void eval(double x, std::vector<double>& val, std::vector<double>& d1,
            std::vector<double>& d2) const;
};

/// Tensor-product Lagrange basis on the reference hex with per-direction
/// orders.  Local index layout: i + (qa+1)*(j + (qb+1)*k), i along the first
/// axis and fastest.
class TensorBasis {
public:
  explicit TensorBasis(const std::array<int, 3>& orders);

  const std::array<int, 3>& orders() const { return orders_; }
  int size() const { return size_; }

  std::array<int, 3> lattice(int local) const;
  int local_index(int i, int j, int k) const;
  /// Reference coordinates of a lattice point.
  Vec3 node(int local) const;

  struct Values {
    VecX n;                    // size_
    MatX dn;                   // size_ x 3, d/dr
    std::vector<Mat3> d2n;     // per-basis reference Hessian
  };
  void eval(const Vec3& r, Values& out, bool second = true) const;

private:
  std::array<int, 3> orders_;
  std::array<Lagrange1D, 3> bases_;
  int size_;
};

/// Cached per-rule reference evaluations of a TensorBasis.
struct BasisTable {
  std::vector<TensorBasis::Values> at;  // one entry per quadrature point
  static BasisTable build(const TensorBasis& basis,
                          const std::vector<Vec3>& points,
                          bool second = true);
};

}  // namespace lsflow
