#include "lsflow/verify.hpp"

#include "lsflow/element.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/parallel.hpp"
#include "lsflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lsflow {

namespace {

LevelSetSample sample_level_set(const LevelSetField& phi, const ElementMap& em,
                                const TensorBasis& geomB, const Vec3& ref,
                                const MapPoint& mp) {
  if (phi.is_nodal()) {
    TensorBasis::Values gv;
    geomB.eval(ref, gv, true);
    BasisPoint bp = ElementMap::push_forward(gv, mp, true);
    return phi.sample(em, bp, mp);
  }
  return phi.sample(mp.x);
}

}  // namespace

GeometryFrame frame_at(const HexMesh& mesh, const LevelSetField& phi, int elem,
                       const Vec3& ref, double gradFloor) {
  ElementMap em(mesh, elem);
  MapPoint mp = em.map(ref, true);
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  return evaluate_frame(sample_level_set(phi, em, geomB, ref, mp), gradFloor);
}

Vec3 velocity_at(const FunctionSpace& vs, const VecX& u, int elem,
                 const Vec3& ref) {
  TensorBasis::Values v;
  vs.basis.eval(ref, v, false);
  const auto& dofs = vs.dofs.elemDofs[elem];
  Vec3 out = Vec3::Zero();
  for (std::size_t a = 0; a < dofs.size(); ++a)
    out += v.n(static_cast<int>(a)) *
           Vec3(u(3 * dofs[a]), u(3 * dofs[a] + 1), u(3 * dofs[a] + 2));
  return out;
}

Mat3 velocity_gradient_at(const FunctionSpace& vs, const VecX& u, int elem,
                          const Vec3& ref) {
  ElementMap em(*vs.mesh, elem);
  MapPoint mp = em.map(ref, false);
  TensorBasis::Values v;
  vs.basis.eval(ref, v, false);
  BasisPoint bp = ElementMap::push_forward(v, mp, false);
  const auto& dofs = vs.dofs.elemDofs[elem];
  Mat3 g = Mat3::Zero();
  for (std::size_t a = 0; a < dofs.size(); ++a)
    for (int i = 0; i < 3; ++i)
      g.row(i) += u(3 * dofs[a] + i) * bp.grad.row(static_cast<int>(a));
  return g;
}

double pressure_at(const FunctionSpace& ps, const VecX& p, int elem,
                   const Vec3& ref) {
  TensorBasis::Values v;
  ps.basis.eval(ref, v, false);
  const auto& dofs = ps.dofs.elemDofs[elem];
  double out = 0.0;
  for (std::size_t a = 0; a < dofs.size(); ++a)
    out += v.n(static_cast<int>(a)) * p(dofs[a]);
  return out;
}

std::pair<int, Vec3> locate_node(const HexMesh& mesh, const Vec3& x,
                                 double tol) {
  int node = -1;
  for (std::size_t i = 0; i < mesh.nodeCoords.size(); ++i)
    if ((mesh.nodeCoords[i] - x).norm() <= tol) {
      node = static_cast<int>(i);
      break;
    }
  if (node < 0) {
    std::ostringstream os;
    os << "no mesh node within " << tol << " of (" << x.transpose() << ")";
    throw ProbeOffSurface(os.str());
  }
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  for (std::size_t e = 0; e < mesh.elemNodes.size(); ++e) {
    const auto& nodes = mesh.elemNodes[e];
    for (std::size_t a = 0; a < nodes.size(); ++a)
      if (nodes[a] == node)
        return {static_cast<int>(e), geomB.node(static_cast<int>(a))};
  }
  throw ProbeOffSurface("mesh node " + std::to_string(node) +
                        " belongs to no element");
}

double velocity_l2_error(const FlowProblem& pb, const VecX& u,
                         const std::function<Vec3(const Vec3&)>& exact,
                         int degreeBoost) {
  const HexMesh& mesh = *pb.mesh;
  const bool nodal = pb.phi->is_nodal();
  TensorRule rule = TensorRule::for_degree(pb.quad_degree() + degreeBoost);
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  BasisTable tg = BasisTable::build(geomB, rule.points, nodal);
  BasisTable tu = BasisTable::build(pb.velocity->basis, rule.points, false);
  const int nq = static_cast<int>(rule.points.size());
  const int nel = mesh.n_elems();
  std::vector<std::array<double, 3>> slots(
      static_cast<std::size_t>(nq) * nel, {0.0, 0.0, 0.0});
  parallel_for(static_cast<std::size_t>(nel), [&](std::size_t e) {
    ElementMap em(mesh, static_cast<int>(e));
    const auto& dofs = pb.velocity->dofs.elemDofs[e];
    for (int q = 0; q < nq; ++q) {
      MapPoint mp = em.map_from(tg.at[q], nodal);
      LevelSetSample ls;
      if (nodal) {
        BasisPoint bp = ElementMap::push_forward(tg.at[q], mp, true);
        ls = pb.phi->sample(em, bp, mp);
      } else {
        ls = pb.phi->sample(mp.x);
      }
      const double w = rule.weights[q] * mp.detJ * ls.grad.norm();
      Vec3 uh = Vec3::Zero();
      for (std::size_t a = 0; a < dofs.size(); ++a)
        uh += tu.at[q].n(static_cast<int>(a)) *
              Vec3(u(3 * dofs[a]), u(3 * dofs[a] + 1), u(3 * dofs[a] + 2));
      const Vec3 d = uh - exact(mp.x);
      slots[e * nq + q] = {w * d[0] * d[0], w * d[1] * d[1], w * d[2] * d[2]};
    }
  });
  double total = 0.0;
  std::vector<double> comp(slots.size());
  for (int i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < slots.size(); ++k) comp[k] = slots[k][i];
    total += std::sqrt(pairwise_sum(comp));
  }
  return total;
}

namespace {

double covariant_energy(const FlowProblem& pb,
                        const std::function<Mat3(const ElementMap&, int,
                                                 const MapPoint&)>& gradOf,
                        int degreeBoost) {
  const HexMesh& mesh = *pb.mesh;
  TensorRule rule = TensorRule::for_degree(pb.quad_degree() + degreeBoost);
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  const bool nodal = pb.phi->is_nodal();
  BasisTable tg = BasisTable::build(geomB, rule.points, true);
  const int nq = static_cast<int>(rule.points.size());
  const int nel = mesh.n_elems();
  const double floor = pb.grad_floor();
  std::vector<double> slots(static_cast<std::size_t>(nq) * nel, 0.0);
  parallel_for(static_cast<std::size_t>(nel), [&](std::size_t e) {
    ElementMap em(mesh, static_cast<int>(e));
    for (int q = 0; q < nq; ++q) {
      MapPoint mp = em.map_from(tg.at[q], true);
      LevelSetSample ls;
      if (nodal) {
        BasisPoint bp = ElementMap::push_forward(tg.at[q], mp, true);
        ls = pb.phi->sample(em, bp, mp);
      } else {
        ls = pb.phi->sample(mp.x);
      }
      GeometryFrame f = evaluate_frame(ls, floor);
      const double w = rule.weights[q] * mp.detJ * f.normGrad;
      Mat3 B = f.P * gradOf(em, q, mp) * f.P;
      slots[e * nq + q] = 0.5 * pb.mu * w * B.squaredNorm();
    }
  });
  return pairwise_sum(slots);
}

}  // namespace

double dissipation_functional(const FlowProblem& pb, const VecX& u) {
  TensorRule rule = TensorRule::for_degree(pb.quad_degree());
  BasisTable tu = BasisTable::build(pb.velocity->basis, rule.points, false);
  // gradients are pushed per call; cache the reference table outside
  return covariant_energy(
      pb,
      [&](const ElementMap& em, int q, const MapPoint& mp) {
        BasisPoint bp = ElementMap::push_forward(tu.at[q], mp, false);
        const auto& dofs = pb.velocity->dofs.elemDofs[em.elem()];
        Mat3 g = Mat3::Zero();
        for (std::size_t a = 0; a < dofs.size(); ++a)
          for (int i = 0; i < 3; ++i)
            g.row(i) +=
                u(3 * dofs[a] + i) * bp.grad.row(static_cast<int>(a));
        return g;
      },
      0);
}

double dissipation_functional_exact(
    const FlowProblem& pb, const std::function<Mat3(const Vec3&)>& gradExact,
    int degreeBoost) {
  return covariant_energy(
      pb,
      [&](const ElementMap&, int, const MapPoint& mp) {
        return gradExact(mp.x);
      },
      degreeBoost);
}

Vec3 strong_viscous_divergence(const GeometryFrame& f,
                               const FrameGradients& fg, const Vec3& uval,
                               const Mat3& gradU,
                               const std::array<Mat3, 3>& hessU, double mu) {
  const Mat3& P = f.P;
  const Mat3& H = f.H;
  const Vec3& n = f.n;
  const double un = uval.dot(n);
  const Mat3 S = 0.5 * (gradU + gradU.transpose());
  Vec3 div = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const Vec3 dk = fg.gradN.col(k);
    const Mat3 dP = -(dk * n.transpose() + n * dk.transpose());
    Mat3 Sk;
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        Sk(p, q) = 0.5 * (hessU[p](q, k) + hessU[q](p, k));
    Mat3 M = dP * S * P + P * Sk * P + P * S * dP;
    const double dun = gradU.col(k).dot(n) + uval.dot(dk);
    M -= dun * H + un * fg.gradH[k];
    div += M * P.col(k);
  }
  return 2.0 * mu * (P * div);
}

ResidualNorms residual_norms(const FlowProblem& pb, const FlowState& s) {
  const HexMesh& mesh = *pb.mesh;
  const bool nodal = pb.phi->is_nodal();
  const bool advect = pb.includeAdvection && pb.rho > 0.0;
  const double floor = pb.grad_floor();
  TensorRule rule = TensorRule::for_degree(pb.quad_degree());
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  BasisTable tg = BasisTable::build(geomB, rule.points, true);
  BasisTable tu = BasisTable::build(pb.velocity->basis, rule.points, true);
  BasisTable tp = BasisTable::build(pb.pressure->basis, rule.points, false);
  const int nq = static_cast<int>(rule.points.size());
  const int nel = mesh.n_elems();
  std::vector<std::array<double, 2>> slots(
      static_cast<std::size_t>(nq) * nel, {0.0, 0.0});
  parallel_for(static_cast<std::size_t>(nel), [&](std::size_t e) {
    ElementMap em(mesh, static_cast<int>(e));
    const auto& ud = pb.velocity->dofs.elemDofs[e];
    const auto& pd = pb.pressure->dofs.elemDofs[e];
    for (int q = 0; q < nq; ++q) {
      MapPoint mp = em.map_from(tg.at[q], true);
      BasisPoint bpU = ElementMap::push_forward(tu.at[q], mp, true);
      BasisPoint bpP = ElementMap::push_forward(tp.at[q], mp, false);
      LevelSetSample ls;
      if (nodal) {
        BasisPoint bpG = ElementMap::push_forward(tg.at[q], mp, true);
        ls = pb.phi->sample(em, bpG, mp);
      } else {
        ls = pb.phi->sample(mp.x);
      }
      GeometryFrame f = evaluate_frame(ls, floor);
      FrameGradients fg =
          frame_gradients(*pb.phi, em, rule.points[q], mp, f, floor);
      const double w = rule.weights[q] * mp.detJ * f.normGrad;

      Vec3 uval = Vec3::Zero();
      Mat3 gradU = Mat3::Zero();
      std::array<Mat3, 3> hessU{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
      for (std::size_t a = 0; a < ud.size(); ++a) {
        const int ia = static_cast<int>(a);
        const Vec3 ua(s.u(3 * ud[a]), s.u(3 * ud[a] + 1), s.u(3 * ud[a] + 2));
        uval += bpU.n(ia) * ua;
        for (int i = 0; i < 3; ++i) {
          gradU.row(i) += ua[i] * bpU.grad.row(ia);
          hessU[i] += ua[i] * bpU.hess[ia];
        }
      }
      Vec3 gradP = Vec3::Zero();
      for (std::size_t a = 0; a < pd.size(); ++a)
        gradP += s.p(pd[a]) * bpP.grad.row(static_cast<int>(a)).transpose();

      Vec3 r = f.P * gradP -
               strong_viscous_divergence(f, fg, uval, gradU, hessU, pb.mu);
      if (advect) {
        const Mat3 ucov =
            f.P * gradU * f.P - uval.dot(f.n) * f.H;
        r += pb.rho * (ucov * (f.P * uval));
      }
      if (pb.bodyForce) r -= f.P * pb.bodyForce(mp.x, s.t);
      const double cont =
          (f.P * gradU * f.P).trace() - uval.dot(f.n) * f.kappa;
      slots[e * nq + q] = {w * r.squaredNorm(), w * cont * cont};
    }
  });
  std::vector<double> a(slots.size()), b(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    a[k] = slots[k][0];
    b[k] = slots[k][1];
  }
  ResidualNorms out;
  out.momentum = std::sqrt(pairwise_sum(a));
  out.continuity = std::sqrt(pairwise_sum(b));
  return out;
}

double fitted_rate(const std::vector<double>& h,
                   const std::vector<double>& err) {
  if (h.size() != err.size())
    throw ValidationError("rate fit needs matching h and error counts");
  const int n = static_cast<int>(h.size());
  if (n < 2)
    throw InsufficientData("rate fit needs at least two refinement levels");
  const int m = std::min(3, n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = n - m; k < n; ++k) {
    if (!(h[k] > 0.0))
      throw ValidationError("mesh sizes must be positive for a rate fit");
    const double x = std::log(h[k]);
    const double y = std::log(std::max(err[k], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-14)
    throw InsufficientData("refinement levels are not distinct");
  return (m * sxy - sx * sy) / denom;
}

double integrate_box(const Vec3& lo, const Vec3& hi, int npts,
                     const std::function<double(const Vec3&)>& f) {
  Rule1D r = gauss_legendre(npts);
  const Vec3 mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double jac = half[0] * half[1] * half[2];
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(npts) * npts * npts);
  for (int i = 0; i < npts; ++i)
    for (int j = 0; j < npts; ++j)
      for (int k = 0; k < npts; ++k) {
        Vec3 x = mid + half.cwiseProduct(
                           Vec3(r.points[i], r.points[j], r.points[k]));
        terms.push_back(jac * r.weights[i] * r.weights[j] * r.weights[k] *
                        f(x));
      }
  return pairwise_sum(terms);
}

double integrate_bulk(const HexMesh& mesh, const LevelSetField& phi,
                      int degree, double gradFloor,
                      const std::function<double(const BulkPoint&)>& f) {
  TensorRule rule = TensorRule::for_degree(degree);
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  BasisTable tg = BasisTable::build(geomB, rule.points, true);
  const int nq = static_cast<int>(rule.points.size());
  const int nel = mesh.n_elems();
  std::vector<double> slots(static_cast<std::size_t>(nq) * nel, 0.0);
  parallel_for(static_cast<std::size_t>(nel), [&](std::size_t e) {
    ElementMap em(mesh, static_cast<int>(e));
    for (int q = 0; q < nq; ++q) {
      BulkPoint bp;
      bp.elem = static_cast<int>(e);
      bp.ref = rule.points[q];
      bp.mp = em.map_from(tg.at[q], true);
      LevelSetSample ls;
      if (phi.is_nodal()) {
        BasisPoint bg = ElementMap::push_forward(tg.at[q], bp.mp, true);
        ls = phi.sample(em, bg, bp.mp);
      } else {
        ls = phi.sample(bp.mp.x);
      }
      bp.frame = evaluate_frame(ls, gradFloor);
      bp.w = rule.weights[q] * bp.mp.detJ * bp.frame.normGrad;
      slots[e * nq + q] = f(bp);
    }
  });
  return pairwise_sum(slots);
}

SurfaceProbe make_chart_probe(
    const HexMesh& mesh, const LevelSetField& phi, double level,
    const std::function<Vec3(double, double)>& paramOf,
    const std::function<Vec3(double, double)>& chartX,
    const std::function<double(double, double)>& areaEl,
    const std::array<double, 4>& bounds, int nS, int nT, double tol) {
  Rule1D rs = gauss_legendre(nS), rt = gauss_legendre(nT);
  const double jac =
      0.25 * (bounds[1] - bounds[0]) * (bounds[3] - bounds[2]);
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  SurfaceProbe probe;
  probe.level = level;
  probe.pts.reserve(static_cast<std::size_t>(nS) * nT);
  for (int i = 0; i < nS; ++i)
    for (int j = 0; j < nT; ++j) {
      const double s =
          0.5 * (bounds[0] + bounds[1]) + 0.5 * (bounds[1] - bounds[0]) *
                                              rs.points[i];
      const double t =
          0.5 * (bounds[2] + bounds[3]) + 0.5 * (bounds[3] - bounds[2]) *
                                              rt.points[j];
      auto [elem, ref] = mesh.locate_param(paramOf(s, t));
      ElementMap em(mesh, elem);
      MapPoint mp = em.map(ref, phi.is_nodal());
      const Vec3 x = chartX(s, t);
      if ((mp.x - x).norm() > tol * std::max(1.0, mesh.diameter)) {
        std::ostringstream os;
        os << "chart point (" << x.transpose()
           << ") maps into the mesh at (" << mp.x.transpose() << ")";
        throw ProbeOffSurface(os.str());
      }
      const double val =
          sample_level_set(phi, em, geomB, ref, mp).value;
      if (std::abs(val - level) >
          tol * std::max(1.0, std::abs(level))) {
        std::ostringstream os;
        os << "probe point at (" << x.transpose() << ") carries level "
           << val << ", expected " << level;
        throw ProbeOffSurface(os.str());
      }
      SurfacePoint pt;
      pt.elem = elem;
      pt.ref = ref;
      pt.x = x;
      pt.w = jac * rs.weights[i] * rt.weights[j] * areaEl(s, t);
      probe.pts.push_back(pt);
    }
  return probe;
}

double kinetic_energy(const FunctionSpace& vs, const VecX& u,
                      const SurfaceProbe& probe, double rho) {
  std::vector<double> terms(probe.pts.size());
  for (std::size_t k = 0; k < probe.pts.size(); ++k) {
    const auto& pt = probe.pts[k];
    terms[k] = 0.5 * rho * pt.w *
               velocity_at(vs, u, pt.elem, pt.ref).squaredNorm();
  }
  return pairwise_sum(terms);
}

double normal_flux_measure(const FlowProblem& pb, const VecX& u) {
  return integrate_bulk(
      *pb.mesh, *pb.phi, pb.quad_degree(), pb.grad_floor(),
      [&](const BulkPoint& bp) {
        const Vec3 uh =
            velocity_at(*pb.velocity, u, bp.elem, bp.ref);
        const double un = uh.dot(bp.frame.n);
        return bp.w * un * un;
      });
}

}  // namespace lsflow
