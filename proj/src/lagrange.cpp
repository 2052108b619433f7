#include "lsflow/lagrange.hpp"

#include "lsflow/errors.hpp"

namespace lsflow {

Lagrange1D::Lagrange1D(int q) : order(q) {
  if (q < 1 || q > 8)
    throw ValidationError("Lagrange1D: order out of range: " +
                          std::to_string(q));
  nodes.resize(q + 1);
  for (int i = 0; i <= q; ++i) nodes[i] = -1.0 + 2.0 * i / q;
}

void Lagrange1D::eval(double x, std::vector<double>& val,
                      std::vector<double>& d1, std::vector<double>& d2) const {
  int n = order + 1;
  val.assign(n, 0.0);
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // L_i = prod_{j != i} (x - x_j)/(x_i - x_j); the derivative sums reuse
    // partial products so each basis costs O(n^2).
    double denom = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) denom *= nodes[i] - nodes[j];
    double p = 1.0;    // prod (x - x_j)
    double s1 = 0.0;   // sum_k prod_{j != k} (x - x_j)
    double s2 = 0.0;   // sum_{k<l} 2 prod_{j != k,l} (x - x_j)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = x - nodes[j];
      s2 = s2 * d + 2.0 * s1;
      s1 = s1 * d + p;
      p *= d;
    }
    val[i] = p / denom;
    d1[i] = s1 / denom;
    d2[i] = s2 / denom;
  }
}

TensorBasis::TensorBasis(const std::array<int, 3>& orders)
    : orders_(orders),
      bases_{Lagrange1D(orders[0]), Lagrange1D(orders[1]),
             Lagrange1D(orders[2])},
      size_((orders[0] + 1) * (orders[1] + 1) * (orders[2] + 1)) {}

std::array<int, 3> TensorBasis::lattice(int local) const {
  int na = orders_[0] + 1, nb = orders_[1] + 1;
  return {local % na, (local / na) % nb, local / (na * nb)};
}

int TensorBasis::local_index(int i, int j, int k) const {
  int na = orders_[0] + 1, nb = orders_[1] + 1;
  return i + na * (j + nb * k);
}

Vec3 TensorBasis::node(int local) const {
  auto l = lattice(local);
  return Vec3(bases_[0].nodes[l[0]], bases_[1].nodes[l[1]],
              bases_[2].nodes[l[2]]);
}

void TensorBasis::eval(const Vec3& r, Values& out, bool second) const {
  std::array<std::vector<double>, 3> v, d, h;
  for (int dir = 0; dir < 3; ++dir)
    bases_[dir].eval(r[dir], v[dir], d[dir], h[dir]);

  out.n.resize(size_);
  out.dn.resize(size_, 3);
  if (second) out.d2n.resize(size_);

  int idx = 0;
  for (int k = 0; k <= orders_[2]; ++k)
    for (int j = 0; j <= orders_[1]; ++j)
      for (int i = 0; i <= orders_[0]; ++i, ++idx) {
        double a = v[0][i], b = v[1][j], c = v[2][k];
        double da = d[0][i], db = d[1][j], dc = d[2][k];
        out.n(idx) = a * b * c;
        out.dn(idx, 0) = da * b * c;
        out.dn(idx, 1) = a * db * c;
        out.dn(idx, 2) = a * b * dc;
        if (second) {
          Mat3& H = out.d2n[idx];
          H(0, 0) = h[0][i] * b * c;
          H(1, 1) = a * h[1][j] * c;
          H(2, 2) = a * b * h[2][k];
          H(0, 1) = H(1, 0) = da * db * c;
          H(0, 2) = H(2, 0) = da * b * dc;
          H(1, 2) = H(2, 1) = a * db * dc;
        }
      }
}

BasisTable BasisTable::build(const TensorBasis& basis,
                             const std::vector<Vec3>& points, bool second) {
  BasisTable t;
  t.at.resize(points.size());
  for (std::size_t q = 0; q < points.size(); ++q)
    basis.eval(points[q], t.at[q], second);
  return t;
}

}  // namespace lsflow
