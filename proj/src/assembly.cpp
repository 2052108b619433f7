#include "lsflow/assembly.hpp"

#include "lsflow/element.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/parallel.hpp"
#include "lsflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace lsflow {

int FlowProblem::quad_degree() const {
  if (quadDegree > 0) return quadDegree;
  int qu = *std::max_element(velocity->orders.begin(), velocity->orders.end());
  return mesh->qGeom + qu + 1;
}

double FlowProblem::grad_floor() const {
  return gradFloor > 0.0 ? gradFloor : 1e-10 * mesh->diameter;
}

bool has_natural_boundary(const FlowProblem& pb) {
  return !pb.neumann.empty() || !pb.tractionFree.empty();
}

void validate_problem(const FlowProblem& pb) {
  if (!pb.mesh || !pb.phi || !pb.velocity || !pb.pressure)
    throw ValidationError("flow problem is missing mesh, level set or spaces");
  if (!(pb.mu > 0.0)) throw ValidationError("viscosity must be positive");
  if (pb.rho < 0.0) throw ValidationError("density must be nonnegative");
  if (!pb.penalty.autoScaled && pb.penalty.value < 0.0)
    throw ValidationError("penalty strength must be nonnegative");
  if (pb.penalty.autoScaled && !(pb.penalty.prefactor > 0.0))
    throw ValidationError("penalty prefactor must be positive");

  // every boundary tag must be claimed by exactly one condition category
  std::set<std::string> present;
  for (const auto& f : pb.mesh->boundary) present.insert(f.tag);
  std::map<std::string, std::vector<std::string>> claims;
  for (const auto& bc : pb.dirichlet) claims[bc.tag].push_back("dirichlet");
  for (const auto& bc : pb.neumann) claims[bc.tag].push_back("traction");
  for (const auto& t : pb.tractionFree) claims[t].push_back("traction-free");
  for (const auto& t : pb.freeTags) claims[t].push_back("free");
  for (const auto& tag : present) {
    auto it = claims.find(tag);
    if (it == claims.end() || it->second.empty())
      throw ValidationError("boundary tag '" + tag +
                            "' has no boundary condition");
    if (it->second.size() > 1)
      throw ValidationError("boundary tag '" + tag + "' is claimed twice (" +
                            it->second[0] + " and " + it->second[1] + ")");
  }
  for (const auto& [tag, kinds] : claims)
    if (!present.count(tag))
      throw ValidationError("boundary condition references unknown tag '" +
                            tag + "'");

  const auto& qu = pb.velocity->orders;
  const auto& qp = pb.pressure->orders;
  for (int d = 0; d < 3; ++d)
    if (qp[d] > qu[d])
      throw ValidationError("pressure order exceeds velocity order along "
                            "direction " + std::to_string(d));
  if (qu == qp && pb.stab == Stabilization::none)
    throw MissingStabilization(
        "equal-order velocity/pressure pair needs pressure stabilization");
  if (pb.stab == Stabilization::pspg && !(pb.rho > 0.0))
    throw ValidationError("residual stabilization requires positive density");

  bool natural = has_natural_boundary(pb);
  if (natural && pb.constraint != PressureConstraint::none)
    throw RedundantConstraint(
        "pressure level is already set through the natural boundary; "
        "drop the explicit pressure constraint");
  if (!natural && pb.constraint == PressureConstraint::none)
    throw NoPressureConstraint(
        "no natural boundary present and no pressure constraint chosen");
  if (pb.constraint == PressureConstraint::pinAtNodes && !pb.pinPredicate)
    throw ValidationError("pinAtNodes requires a pin predicate");
}

double stabilization_tau(Stabilization kind, double uNorm, double h, double mu,
                         double dt) {
  switch (kind) {
    case Stabilization::none:
      return 0.0;
    case Stabilization::brezzi_pitkaranta:
      return h;
    case Stabilization::pspg: {
      double s = 0.0;
      if (dt > 0.0) s += (2.0 / dt) * (2.0 / dt);
      double a = 2.0 * uNorm / h;
      double d = 4.0 * mu / (h * h);
      s += a * a + d * d;
      if (!(s > 0.0))
        throw ValidationError("stabilization parameter is undefined: "
                              "no viscous, convective or rate scale");
      return 1.0 / std::sqrt(s);
    }
  }
  return 0.0;
}

DirichletData collect_dirichlet(const FlowProblem& pb, double time) {
  DirichletData out;
  const auto& mesh = *pb.mesh;
  const auto& vspace = *pb.velocity;
  // dof -> (priority, value)
  std::map<int, std::pair<int, Vec3>> table;
  const double tol = 1e-9;
  for (const auto& bc : pb.dirichlet) {
    for (const auto& bf : mesh.boundary) {
      if (bf.tag != bc.tag) continue;
      for (auto [local, dof] : vspace.dofs_on_face(bf.elem, bf.side)) {
        Vec3 x = vspace.dof_position(dof);
        Vec3 param = vspace.dof_param(dof);
        Vec3 v = bc.value(x, param, time);
        auto it = table.find(dof);
        if (it == table.end()) {
          table.emplace(dof, std::make_pair(bc.priority, v));
          continue;
        }
        auto& [prio, cur] = it->second;
        if (bc.priority > prio) {
          prio = bc.priority;
          cur = v;
        } else if (bc.priority == prio) {
          double scale = std::max({1.0, cur.norm(), v.norm()});
          if ((cur - v).norm() > tol * scale) {
            std::ostringstream os;
            os << "dof at (" << x.transpose() << ") receives conflicting "
               << "values (" << cur.transpose() << ") and (" << v.transpose()
               << ") at equal priority";
            throw ConflictingPrescriptions(os.str());
          }
        }
      }
    }
  }
  out.dofs.reserve(table.size());
  out.values.reserve(table.size());
  for (const auto& [dof, pv] : table) {
    out.dofs.push_back(dof);
    out.values.push_back(pv.second);
  }
  if (pb.constraint == PressureConstraint::pinAtNodes) {
    const auto& pspace = *pb.pressure;
    for (int d = 0; d < pspace.n_dofs(); ++d)
      if (pb.pinPredicate(pspace.dof_param(d))) out.pressureDofs.push_back(d);
    if (out.pressureDofs.empty())
      throw NoPressureConstraint("pin predicate selected no pressure nodes");
  }
  return out;
}

namespace {

struct KernelContext {
  const FlowProblem* pb = nullptr;
  const AssemblyRequest* req = nullptr;
  TensorRule rule;
  BasisTable tabGeom, tabU, tabP;
  bool nodalPhi = false;
  bool pspg = false, bp = false;
  bool needUHess = false;
  double floor = 0.0;
  int nU = 0, nP = 0;
};

struct ElementWork {
  MatX D, G, T, A, C, Spu, Spp, SpuM;
  VecX fu, fp, wm;
  std::exception_ptr err;
};

/// Strong viscous contribution of one velocity basis/component pair:
/// 2 mu * projected surface divergence of the covariant strain of
/// (N_b e_j) restricted to the tangent plane.  Uses the exact normal
/// gradient and the differenced shape-operator gradient.
void viscous_strong_vectors(const GeometryFrame& f, const FrameGradients& fg,
                            const BasisPoint& bpU,
                            const std::vector<Vec3>& hvec, double mu,
                            std::vector<Vec3>& V) {
  const Mat3& P = f.P;
  const Mat3& H = f.H;
  const Vec3& n = f.n;
  const int nU = static_cast<int>(bpU.n.size());
  V.assign(static_cast<std::size_t>(nU) * 3, Vec3::Zero());
  for (int b = 0; b < nU; ++b) {
    const Vec3 g = bpU.grad.row(b).transpose();
    const Mat3& Hb = bpU.hess[b];
    const double Nb = bpU.n(b);
    const Vec3& h = hvec[b];
    for (int j = 0; j < 3; ++j) {
      const Vec3 pj = P.col(j);
      Vec3 div = Vec3::Zero();
      for (int k = 0; k < 3; ++k) {
        const Vec3 c = Hb.col(k);
        const Vec3 Pc = P * c;
        const Vec3 dk = fg.gradN.col(k);
        Mat3 M = 0.5 * (pj * Pc.transpose() + Pc * pj.transpose());
        const Vec3 PSn = 0.5 * (pj * g.dot(n) + h * n[j]);
        const Vec3 PSd = 0.5 * (pj * g.dot(dk) + h * dk[j]);
        M -= dk * PSn.transpose() + n * PSd.transpose();
        M -= PSd * n.transpose() + PSn * dk.transpose();
        M -= (g[k] * n[j] + Nb * fg.gradN(j, k)) * H;
        M -= Nb * n[j] * fg.gradH[k];
        div += M * P.col(k);
      }
      V[static_cast<std::size_t>(b) * 3 + j] = 2.0 * mu * (P * div);
    }
  }
}

void element_kernel(const KernelContext& c, int e, ElementWork& w) try {
  const FlowProblem& pb = *c.pb;
  const AssemblyRequest& req = *c.req;
  const HexMesh& mesh = *pb.mesh;
  const int nU = c.nU, nP = c.nP, sz = 3 * nU;

  ElementMap em(mesh, e);
  const double h = mesh.hEl[e];
  const double alpha = pb.penalty.autoScaled
                           ? pb.penalty.prefactor * pb.mu / (h * h)
                           : pb.penalty.value;
  const auto& ud = pb.velocity->dofs.elemDofs[e];

  VecX uloc;
  if (req.wantTransport) {
    uloc.resize(sz);
    for (int a = 0; a < nU; ++a)
      for (int i = 0; i < 3; ++i) uloc(3 * a + i) = (*req.uPrev)(3 * ud[a] + i);
  }

  const bool wantDG = req.wantDiffusion;
  if (wantDG) {
    w.D = MatX::Zero(sz, sz);
    if (!req.mergePenalty) w.G = MatX::Zero(sz, sz);
  }
  if (req.wantMass) w.T = MatX::Zero(sz, sz);
  if (req.wantTransport) w.A = MatX::Zero(sz, sz);
  if (req.wantDivergence) {
    w.C = MatX::Zero(nP, sz);
    w.wm = VecX::Zero(nP);
  }
  if (req.wantForcing) w.fu = VecX::Zero(sz);
  if (c.pspg || c.bp) {
    w.Spp = MatX::Zero(nP, nP);
    if (c.pspg) {
      w.Spu = MatX::Zero(nP, sz);
      w.fp = VecX::Zero(nP);
      if (req.dt > 0.0) w.SpuM = MatX::Zero(nP, sz);
    }
  }

  std::vector<Vec3> hvec(nU), Hh(nU), advv, viscV;
  std::vector<Vec3> gps(nP);
  MatX trE;
  if (req.wantDivergence || c.pspg) trE.resize(nU, 3);

  const int nq = static_cast<int>(c.rule.points.size());
  for (int q = 0; q < nq; ++q) {
    const MapPoint mp = em.map_from(c.tabGeom.at[q], true);
    const BasisPoint bpU =
        ElementMap::push_forward(c.tabU.at[q], mp, c.needUHess);
    const BasisPoint bpP = ElementMap::push_forward(c.tabP.at[q], mp, false);
    LevelSetSample ls;
    if (c.nodalPhi) {
      BasisPoint bpG = ElementMap::push_forward(c.tabGeom.at[q], mp, true);
      ls = pb.phi->sample(em, bpG, mp);
    } else {
      ls = pb.phi->sample(mp.x);
    }
    const GeometryFrame f = evaluate_frame(ls, c.floor);
    const Mat3& P = f.P;
    const Mat3& H = f.H;
    const Vec3& n = f.n;
    const double wq = c.rule.weights[q] * mp.detJ * f.normGrad;
    const double HH = H.squaredNorm();

    for (int a = 0; a < nU; ++a) {
      hvec[a] = P * bpU.grad.row(a).transpose();
      Hh[a] = H * hvec[a];
    }
    if (req.wantDivergence || c.pspg)
      for (int b = 0; b < nU; ++b)
        for (int j = 0; j < 3; ++j)
          trE(b, j) = hvec[b][j] - bpU.n(b) * n[j] * f.kappa;

    Vec3 uq = Vec3::Zero(), bt = Vec3::Zero(), Hbt = Vec3::Zero();
    if (req.wantTransport) {
      for (int a = 0; a < nU; ++a)
        uq += bpU.n(a) * Vec3(uloc(3 * a), uloc(3 * a + 1), uloc(3 * a + 2));
      bt = P * uq;
      Hbt = H * bt;
      advv.assign(static_cast<std::size_t>(nU) * 3, Vec3::Zero());
      for (int b = 0; b < nU; ++b) {
        const double hbt = hvec[b].dot(bt);
        for (int j = 0; j < 3; ++j)
          advv[static_cast<std::size_t>(b) * 3 + j] =
              P.col(j) * hbt - bpU.n(b) * n[j] * Hbt;
      }
    }

    if (wantDG || req.wantMass) {
      MatX* Gtarget = req.mergePenalty ? &w.D : &w.G;
      for (int a = 0; a < nU; ++a) {
        for (int b = a; b < nU; ++b) {
          const double hd = hvec[a].dot(hvec[b]);
          const double NaNb = bpU.n(a) * bpU.n(b);
          for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
              if (wantDG) {
                const double eij =
                    0.5 * (P(i, j) * hd + hvec[a][j] * hvec[b][i]) -
                    bpU.n(b) * n[j] * Hh[a][i] - bpU.n(a) * n[i] * Hh[b][j] +
                    NaNb * n[i] * n[j] * HH;
                const double dv = 2.0 * pb.mu * wq * eij;
                w.D(3 * a + i, 3 * b + j) += dv;
                if (b > a) w.D(3 * b + j, 3 * a + i) += dv;
                const double gv = alpha * wq * NaNb * n[i] * n[j];
                (*Gtarget)(3 * a + i, 3 * b + j) += gv;
                if (b > a) (*Gtarget)(3 * b + j, 3 * a + i) += gv;
              }
              if (req.wantMass) {
                const double tv = pb.rho * wq * NaNb * P(i, j);
                w.T(3 * a + i, 3 * b + j) += tv;
                if (b > a) w.T(3 * b + j, 3 * a + i) += tv;
              }
            }
          }
        }
      }
    }

    if (req.wantTransport) {
      for (int b = 0; b < nU; ++b)
        for (int j = 0; j < 3; ++j) {
          const Vec3& av = advv[static_cast<std::size_t>(b) * 3 + j];
          for (int a = 0; a < nU; ++a) {
            const double s = pb.rho * wq * bpU.n(a);
            for (int i = 0; i < 3; ++i) w.A(3 * a + i, 3 * b + j) += s * av[i];
          }
        }
    }

    if (req.wantDivergence) {
      for (int p = 0; p < nP; ++p) {
        const double Mp = bpP.n(p);
        w.wm(p) += wq * Mp;
        for (int b = 0; b < nU; ++b)
          for (int j = 0; j < 3; ++j)
            w.C(p, 3 * b + j) += wq * Mp * trE(b, j);
      }
    }

    Vec3 ft = Vec3::Zero();
    const bool haveF = static_cast<bool>(pb.bodyForce);
    if (haveF) ft = P * pb.bodyForce(mp.x, req.time);
    if (req.wantForcing && haveF)
      for (int a = 0; a < nU; ++a)
        for (int i = 0; i < 3; ++i) w.fu(3 * a + i) += wq * bpU.n(a) * ft[i];

    if (c.bp) {
      for (int p = 0; p < nP; ++p) gps[p] = P * bpP.grad.row(p).transpose();
      for (int p = 0; p < nP; ++p)
        for (int r = 0; r < nP; ++r)
          w.Spp(p, r) += wq * h * gps[p].dot(gps[r]);
    } else if (c.pspg) {
      const FrameGradients fg =
          frame_gradients(*pb.phi, em, c.rule.points[q], mp, f, c.floor);
      const double tau =
          stabilization_tau(Stabilization::pspg,
                            req.wantTransport ? uq.norm() : 0.0, h, pb.mu,
                            req.dt);
      viscous_strong_vectors(f, fg, bpU, hvec, pb.mu, viscV);
      for (int p = 0; p < nP; ++p) gps[p] = P * bpP.grad.row(p).transpose();
      for (int p = 0; p < nP; ++p) {
        const Vec3& gp = gps[p];
        for (int b = 0; b < nU; ++b)
          for (int j = 0; j < 3; ++j) {
            double s = -tau / pb.rho *
                       gp.dot(viscV[static_cast<std::size_t>(b) * 3 + j]);
            if (req.wantTransport)
              s += tau * gp.dot(advv[static_cast<std::size_t>(b) * 3 + j]);
            w.Spu(p, 3 * b + j) += wq * s;
            if (req.dt > 0.0)
              w.SpuM(p, 3 * b + j) += wq * tau * bpU.n(b) * gp[j];
          }
        for (int r = 0; r < nP; ++r)
          w.Spp(p, r) += wq * (tau / pb.rho) * gp.dot(gps[r]);
        if (haveF) w.fp(p) += wq * (tau / pb.rho) * gp.dot(ft);
      }
    }
  }
} catch (...) {
  w.err = std::current_exception();
}

void scatter_matrix(const MatX& M, const std::vector<int>& rows,
                    const std::vector<int>& cols, std::vector<Triplet>& out) {
  if (M.size() == 0) return;
  for (int r = 0; r < M.rows(); ++r)
    for (int cidx = 0; cidx < M.cols(); ++cidx) {
      double v = M(r, cidx);
      if (v != 0.0) out.emplace_back(rows[r], cols[cidx], v);
    }
}

std::vector<int> expand3(const std::vector<int>& dofs) {
  std::vector<int> out(dofs.size() * 3);
  for (std::size_t a = 0; a < dofs.size(); ++a)
    for (int i = 0; i < 3; ++i) out[3 * a + i] = 3 * dofs[a] + i;
  return out;
}

void add_neumann_loads(const FlowProblem& pb, const AssemblyRequest& req,
                       double floor, VecX& fu) {
  if (pb.neumann.empty()) return;
  const HexMesh& mesh = *pb.mesh;
  FaceRule rule = FaceRule::for_degree(pb.quad_degree());
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  const bool nodal = pb.phi->is_nodal();
  for (const auto& bc : pb.neumann) {
    for (const auto& bf : mesh.boundary) {
      if (bf.tag != bc.tag) continue;
      ElementMap em(mesh, bf.elem);
      const auto& ud = pb.velocity->dofs.elemDofs[bf.elem];
      for (std::size_t k = 0; k < rule.points.size(); ++k) {
        FacePoint fp = face_point(em, bf.side, rule.points[k][0],
                                  rule.points[k][1]);
        LevelSetSample ls;
        if (nodal) {
          TensorBasis::Values gv;
          geomB.eval(fp.ref, gv, true);
          BasisPoint bpG = ElementMap::push_forward(gv, fp.mp, true);
          ls = pb.phi->sample(em, bpG, fp.mp);
        } else {
          ls = pb.phi->sample(fp.x);
        }
        GeometryFrame f = evaluate_frame(ls, floor);
        BoundaryTriad triad = boundary_frame(f, fp.m);
        const double wq =
            rule.weights[k] * fp.dA * triad.q.dot(fp.m) * f.normGrad;
        const Vec3 tt = f.P * bc.traction(fp.x, fp.param, req.time);
        TensorBasis::Values uv;
        pb.velocity->basis.eval(fp.ref, uv, false);
        BasisPoint bpU = ElementMap::push_forward(uv, fp.mp, false);
        for (int a = 0; a < bpU.n.size(); ++a)
          for (int i = 0; i < 3; ++i)
            fu(3 * ud[a] + i) += wq * bpU.n(a) * tt[i];
      }
    }
  }
}

}  // namespace

SaddleBlocks assemble_system(const FlowProblem& pb, const AssemblyRequest& req) {
  validate_problem(pb);
  if (req.wantTransport && !req.uPrev)
    throw ValidationError("transport assembly needs a transport velocity");

  KernelContext c;
  c.pb = &pb;
  c.req = &req;
  c.rule = TensorRule::for_degree(pb.quad_degree());
  c.nodalPhi = pb.phi->is_nodal();
  c.pspg = pb.stab == Stabilization::pspg;
  c.bp = pb.stab == Stabilization::brezzi_pitkaranta;
  c.needUHess = c.pspg;
  c.floor = pb.grad_floor();

  const HexMesh& mesh = *pb.mesh;
  TensorBasis geomB({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  c.tabGeom = BasisTable::build(geomB, c.rule.points, true);
  c.tabU = BasisTable::build(pb.velocity->basis, c.rule.points, c.needUHess);
  c.tabP = BasisTable::build(pb.pressure->basis, c.rule.points, false);
  c.nU = pb.velocity->basis.size();
  c.nP = pb.pressure->basis.size();

  SaddleBlocks out;
  out.nu = pb.velocity->n_dofs();
  out.np = pb.pressure->n_dofs();
  const int N = 3 * out.nu;
  out.T.resize(N, N);
  out.D.resize(N, N);
  out.G.resize(N, N);
  out.A.resize(N, N);
  out.C.resize(out.np, N);
  out.Spu.resize(out.np, N);
  out.Spp.resize(out.np, out.np);
  out.SpuMass.resize(out.np, N);
  out.fu = VecX::Zero(N);
  out.fp = VecX::Zero(out.np);
  out.weightedMeasure = VecX::Zero(out.np);

  std::vector<Triplet> tD, tG, tT, tA, tC, tSpu, tSpp, tSpm;
  const int nElems = static_cast<int>(mesh.elemNodes.size());
  const int batch = std::max(1, 4 * worker_count());
  std::vector<ElementWork> works;
  for (int start = 0; start < nElems; start += batch) {
    const int cnt = std::min(batch, nElems - start);
    works.assign(cnt, ElementWork{});
    parallel_for(static_cast<std::size_t>(cnt), [&](std::size_t i) {
      element_kernel(c, start + static_cast<int>(i), works[i]);
    });
    for (int i = 0; i < cnt; ++i) {
      ElementWork& w = works[i];
      if (w.err) std::rethrow_exception(w.err);
      const int e = start + i;
      const auto u3 = expand3(pb.velocity->dofs.elemDofs[e]);
      const auto& pd = pb.pressure->dofs.elemDofs[e];
      scatter_matrix(w.D, u3, u3, tD);
      scatter_matrix(w.G, u3, u3, tG);
      scatter_matrix(w.T, u3, u3, tT);
      scatter_matrix(w.A, u3, u3, tA);
      scatter_matrix(w.C, pd, u3, tC);
      scatter_matrix(w.Spu, pd, u3, tSpu);
      scatter_matrix(w.Spp, pd, pd, tSpp);
      scatter_matrix(w.SpuM, pd, u3, tSpm);
      if (w.fu.size())
        for (std::size_t a = 0; a < u3.size(); ++a) out.fu(u3[a]) += w.fu(a);
      if (w.fp.size())
        for (std::size_t p = 0; p < pd.size(); ++p) out.fp(pd[p]) += w.fp(p);
      if (w.wm.size())
        for (std::size_t p = 0; p < pd.size(); ++p)
          out.weightedMeasure(pd[p]) += w.wm(p);
    }
  }
  out.D.setFromTriplets(tD.begin(), tD.end());
  out.G.setFromTriplets(tG.begin(), tG.end());
  out.T.setFromTriplets(tT.begin(), tT.end());
  out.A.setFromTriplets(tA.begin(), tA.end());
  out.C.setFromTriplets(tC.begin(), tC.end());
  out.Spu.setFromTriplets(tSpu.begin(), tSpu.end());
  out.Spp.setFromTriplets(tSpp.begin(), tSpp.end());
  out.SpuMass.setFromTriplets(tSpm.begin(), tSpm.end());

  if (req.wantForcing) add_neumann_loads(pb, req, c.floor, out.fu);
  return out;
}

SaddleBlocks assemble_stokes(const FlowProblem& pb) {
  AssemblyRequest req;
  req.wantMass = true;
  return assemble_system(pb, req);
}

LinearSystem compose_system(const FlowProblem& pb, const SaddleBlocks& b,
                            double cT, double cDG, double cA,
                            const VecX& rhsU, const VecX& rhsP,
                            const DirichletData& bc) {
  const int nu3 = 3 * b.nu, np = b.np;
  LinearSystem sys;
  sys.hasMultiplier = pb.constraint == PressureConstraint::zeroWeightedMean;
  sys.nu3 = nu3;
  sys.np = np;
  sys.n = nu3 + np + (sys.hasMultiplier ? 1 : 0);

  std::vector<char> presU(static_cast<std::size_t>(b.nu), 0);
  std::vector<Vec3> valU(static_cast<std::size_t>(b.nu), Vec3::Zero());
  for (std::size_t k = 0; k < bc.dofs.size(); ++k) {
    presU[bc.dofs[k]] = 1;
    valU[bc.dofs[k]] = bc.values[k];
  }
  std::vector<char> presP(static_cast<std::size_t>(np), 0);
  for (int d : bc.pressureDofs) presP[d] = 1;

  VecX rhs = VecX::Zero(sys.n);
  rhs.head(nu3) = rhsU;
  rhs.segment(nu3, np) = rhsP;

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(b.D.nonZeros() + b.T.nonZeros() +
                                        b.G.nonZeros() + b.A.nonZeros() +
                                        2 * b.C.nonZeros() + b.Spu.nonZeros() +
                                        b.Spp.nonZeros()) +
               64);
  auto pushUU = [&](int r, int col, double v) {
    if (presU[r / 3]) return;
    if (presU[col / 3])
      rhs(r) -= v * valU[col / 3][col % 3];
    else
      trip.emplace_back(r, col, v);
  };
  auto pushUP = [&](int r, int pc, double v) {
    if (presU[r / 3] || presP[pc]) return;  // pinned pressure value is zero
    trip.emplace_back(r, nu3 + pc, v);
  };
  auto pushPU = [&](int pr, int col, double v) {
    if (presP[pr]) return;
    if (presU[col / 3])
      rhs(nu3 + pr) -= v * valU[col / 3][col % 3];
    else
      trip.emplace_back(nu3 + pr, col, v);
  };
  auto pushPP = [&](int pr, int pc, double v) {
    if (presP[pr] || presP[pc]) return;
    trip.emplace_back(nu3 + pr, nu3 + pc, v);
  };
  auto sweepUU = [&](const SpMat& M, double coef) {
    if (coef == 0.0 || M.nonZeros() == 0) return;
    for (int o = 0; o < M.outerSize(); ++o)
      for (SpMat::InnerIterator it(M, o); it; ++it)
        pushUU(static_cast<int>(it.row()), static_cast<int>(it.col()),
               coef * it.value());
  };
  sweepUU(b.T, cT);
  sweepUU(b.D, cDG);
  sweepUU(b.G, cDG);
  sweepUU(b.A, cA);
  for (int o = 0; o < b.C.outerSize(); ++o)
    for (SpMat::InnerIterator it(b.C, o); it; ++it) {
      const int pr = static_cast<int>(it.row());
      const int cu = static_cast<int>(it.col());
      pushPU(pr, cu, it.value());
      pushUP(cu, pr, -it.value());
    }
  for (int o = 0; o < b.Spu.outerSize(); ++o)
    for (SpMat::InnerIterator it(b.Spu, o); it; ++it)
      pushPU(static_cast<int>(it.row()), static_cast<int>(it.col()),
             it.value());
  if (cT != 0.0 && b.SpuMass.nonZeros())
    for (int o = 0; o < b.SpuMass.outerSize(); ++o)
      for (SpMat::InnerIterator it(b.SpuMass, o); it; ++it)
        pushPU(static_cast<int>(it.row()), static_cast<int>(it.col()),
               cT * it.value());
  for (int o = 0; o < b.Spp.outerSize(); ++o)
    for (SpMat::InnerIterator it(b.Spp, o); it; ++it)
      pushPP(static_cast<int>(it.row()), static_cast<int>(it.col()),
             it.value());

  if (sys.hasMultiplier) {
    const int mrow = nu3 + np;
    for (int d = 0; d < np; ++d) {
      const double v = b.weightedMeasure(d);
      if (v != 0.0 && !presP[d]) {
        trip.emplace_back(nu3 + d, mrow, v);
        trip.emplace_back(mrow, nu3 + d, v);
      }
    }
    rhs(mrow) = 0.0;
  }

  for (int d = 0; d < b.nu; ++d)
    if (presU[d])
      for (int i = 0; i < 3; ++i) {
        trip.emplace_back(3 * d + i, 3 * d + i, 1.0);
        rhs(3 * d + i) = valU[d][i];
      }
  for (int d = 0; d < np; ++d)
    if (presP[d]) {
      trip.emplace_back(nu3 + d, nu3 + d, 1.0);
      rhs(nu3 + d) = 0.0;
    }

  sys.K.resize(sys.n, sys.n);
  sys.K.setFromTriplets(trip.begin(), trip.end());
  sys.K.makeCompressed();
  sys.rhs = std::move(rhs);
  return sys;
}

}  // namespace lsflow
