#include "lsflow/quadrature.hpp"

#include "lsflow/errors.hpp"

#include <cmath>

namespace lsflow {

Rule1D gauss_legendre(int n) {
  if (n < 1 || n > 64)
    throw ValidationError("gauss_legendre: point count out of range: " +
                          std::to_string(n));
  Rule1D r;
  r.points.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n with the Chebyshev-like initial guess; symmetric
  // pairs are filled from one half.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pm = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.points[i] = -x;
    r.weights[i] = w;
    r.points[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.points[n / 2] = 0.0;
  return r;
}

int points_for_degree(int degree) {
  if (degree < 0) degree = 0;
  return degree / 2 + 1;
}

TensorRule TensorRule::for_degree(int degree) {
  return for_degrees({degree, degree, degree});
}

TensorRule TensorRule::for_degrees(const std::array<int, 3>& degrees) {
  TensorRule t;
  std::array<Rule1D, 3> rules;
  for (int d = 0; d < 3; ++d) {
    t.npts[d] = points_for_degree(degrees[d]);
    rules[d] = gauss_legendre(t.npts[d]);
  }
  t.points.reserve(t.npts[0] * t.npts[1] * t.npts[2]);
  t.weights.reserve(t.points.capacity());
  for (int k = 0; k < t.npts[2]; ++k)
    for (int j = 0; j < t.npts[1]; ++j)
      for (int i = 0; i < t.npts[0]; ++i) {
        t.points.emplace_back(rules[0].points[i], rules[1].points[j],
                              rules[2].points[k]);
        t.weights.push_back(rules[0].weights[i] * rules[1].weights[j] *
                            rules[2].weights[k]);
      }
  return t;
}

FaceRule FaceRule::for_degree(int degree) {
  FaceRule f;
  int n = points_for_degree(degree);
  Rule1D r = gauss_legendre(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      f.points.push_back({r.points[i], r.points[j]});
      f.weights.push_back(r.weights[i] * r.weights[j]);
    }
  return f;
}

}  // namespace lsflow
