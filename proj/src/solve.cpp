#include "lsflow/solve.hpp"

#include "lsflow/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#ifdef LSFLOW_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lsflow {

namespace {

// One backsolve on the penalty-weighted saddle-point systems loses a few
// digits to the scale contrast between blocks, so the factorization is
// polished with iterative refinement until the residual is tight.
template <class Factorization>
VecX refine_solution(const Factorization& lu, const SpMat& K,
                     const VecX& rhs) {
  const double rhsNorm = rhs.norm();
  VecX x = lu.solve(rhs);
  if (rhsNorm == 0.0) return x;
  double rel = 0.0;
  for (int sweep = 0; sweep < 10; ++sweep) {
    VecX r = rhs - K * x;
    rel = r.norm() / rhsNorm;
    if (rel <= 1e-10) return x;
    x += lu.solve(r);
  }
  VecX r = rhs - K * x;
  rel = r.norm() / rhsNorm;
  if (rel <= 1e-10) return x;
  std::ostringstream os;
  os << "refinement stalled at relative residual " << rel;
  throw LinearSolveFailure(os.str());
}

VecX solve_direct(const SpMat& K, const VecX& rhs) {
#ifdef LSFLOW_HAVE_UMFPACK
  // Nested-dissection ordering keeps the fill of the three-dimensional
  // stencils bounded where minimum-degree orderings exhaust memory on the
  // finer meshes.
  Eigen::UmfPackLU<SpMat> lu;
  lu.umfpackControl()[UMFPACK_ORDERING] = UMFPACK_ORDERING_METIS;
  lu.compute(K);
  if (lu.info() != Eigen::Success)
    throw SingularSystem("sparse factorization failed (umfpack)");
#else
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(K);
  if (lu.info() != Eigen::Success)
    throw SingularSystem("sparse factorization failed: " +
                         std::string(lu.lastErrorMessage()));
#endif
  return refine_solution(lu, K, rhs);
}

VecX solve_iterative(const SpMat& K, const VecX& rhs) {
  Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<double>> solver;
  solver.preconditioner().setDroptol(1e-7);
  solver.preconditioner().setFillfactor(40);
  solver.setTolerance(1e-12);
  solver.setMaxIterations(4000);
  solver.compute(K);
  if (solver.info() != Eigen::Success)
    throw LinearSolveFailure("incomplete-LU preconditioner setup failed");
  VecX x = solver.solve(rhs);
  const double rhsNorm = rhs.norm();
  if (rhsNorm > 0.0) {
    double rel = (rhs - K * x).norm() / rhsNorm;
    if (!(rel <= 1e-8)) {
      std::ostringstream os;
      os << "iteration stopped at relative residual " << rel;
      throw LinearSolveFailure(os.str());
    }
  }
  return x;
}

FlowState split_state(const LinearSystem& sys, const VecX& x, double t) {
  FlowState s;
  s.u = x.head(sys.nu3);
  s.p = x.segment(sys.nu3, sys.np);
  s.t = t;
  return s;
}

double increment_norm(const VecX& unew, const VecX& uold) {
  double scale = std::max(unew.norm(), 1e-300);
  return (unew - uold).norm() / scale;
}

}  // namespace

VecX solve_linear(const SpMat& K, const VecX& rhs, SolverKind kind) {
  if (K.rows() != K.cols() || K.rows() != rhs.size())
    throw ValidationError("linear system dimensions disagree");
  return kind == SolverKind::direct ? solve_direct(K, rhs)
                                    : solve_iterative(K, rhs);
}

FlowState solve_stokes(const FlowProblem& pb, SolverKind kind) {
  AssemblyRequest req;
  SaddleBlocks bl = assemble_system(pb, req);
  DirichletData bc = collect_dirichlet(pb, 0.0);
  LinearSystem sys = compose_system(pb, bl, 0.0, 1.0, 0.0, bl.fu, bl.fp, bc);
  VecX x = solve_linear(sys.K, sys.rhs, kind);
  return split_state(sys, x, 0.0);
}

FlowState solve_stationary(const FlowProblem& pb, const PicardOptions& opt,
                           PicardReport* report) {
  const bool transport = pb.includeAdvection && pb.rho > 0.0;

  AssemblyRequest base;
  SaddleBlocks bl = assemble_system(pb, base);
  DirichletData bc = collect_dirichlet(pb, 0.0);
  LinearSystem sys = compose_system(pb, bl, 0.0, 1.0, 0.0, bl.fu, bl.fp, bc);
  VecX x = solve_linear(sys.K, sys.rhs, opt.solver);
  FlowState state = split_state(sys, x, 0.0);
  PicardReport rep;
  rep.iterations = 1;

  if (!transport) {
    if (report) *report = rep;
    return state;
  }

  const bool pspg = pb.stab == Stabilization::pspg;
  for (int k = 0; k < opt.maxIter; ++k) {
    AssemblyRequest req;
    req.wantDiffusion = false;
    req.wantDivergence = false;
    req.wantForcing = false;
    req.wantTransport = true;
    req.uPrev = &state.u;
    SaddleBlocks tr = assemble_system(pb, req);

    SaddleBlocks merged = bl;
    merged.A = std::move(tr.A);
    if (pspg) {
      merged.Spu = std::move(tr.Spu);
      merged.Spp = std::move(tr.Spp);
      merged.fp = std::move(tr.fp);
    }
    sys = compose_system(pb, merged, 0.0, 1.0, 1.0, merged.fu, merged.fp, bc);
    x = solve_linear(sys.K, sys.rhs, opt.solver);
    FlowState next = split_state(sys, x, 0.0);
    rep.iterations += 1;

    const double delta = increment_norm(next.u, state.u);
    rep.increments.push_back(delta);
    if (opt.relax != 1.0)
      next.u = opt.relax * next.u + (1.0 - opt.relax) * state.u;
    state = next;
    if (delta <= opt.tol) {
      if (report) *report = rep;
      return state;
    }
  }
  throw NonConvergence("fixed-point transport loop did not reach " +
                           std::to_string(opt.tol) + " in " +
                           std::to_string(opt.maxIter) + " sweeps",
                       rep.increments);
}

TimeStepper::TimeStepper(const FlowProblem& pb, double dt, PicardOptions opt)
    : pb_(&pb), dt_(dt), opt_(opt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  transport_ = pb.includeAdvection && pb.rho > 0.0;
  pspg_ = pb.stab == Stabilization::pspg;
  hasForcing_ = static_cast<bool>(pb.bodyForce) || !pb.neumann.empty();

  AssemblyRequest req;
  req.wantMass = true;
  req.wantForcing = false;
  req.dt = dt_;
  stat_ = assemble_system(pb, req);
}

SaddleBlocks TimeStepper::transport_blocks(const VecX& u, double time) {
  AssemblyRequest req;
  req.wantDiffusion = false;
  req.wantDivergence = false;
  req.wantForcing = false;
  req.wantTransport = transport_;
  req.uPrev = &u;
  req.dt = dt_;
  req.time = time;
  return assemble_system(*pb_, req);
}

VecX TimeStepper::forcing(double time) {
  if (!hasForcing_) return VecX::Zero(3 * stat_.nu);
  AssemblyRequest req;
  req.wantDiffusion = false;
  req.wantDivergence = false;
  req.wantForcing = true;
  req.dt = dt_;
  req.time = time;
  return assemble_system(*pb_, req).fu;
}

FlowState TimeStepper::advance(const FlowState& s) {
  const double t1 = s.t + dt_;
  const VecX fu0 = forcing(s.t);
  const VecX fu1 = forcing(t1);

  VecX rhsU = stat_.T * s.u / dt_ - 0.5 * (stat_.D * s.u) -
              0.5 * (stat_.G * s.u) + 0.5 * (fu0 + fu1);
  SaddleBlocks trOld;
  if (transport_) {
    trOld = transport_blocks(s.u, s.t);
    rhsU -= 0.5 * (trOld.A * s.u);
  }
  DirichletData bc = collect_dirichlet(*pb_, t1);

  VecX uk = s.u;
  FlowState next;
  std::vector<double> increments;
  const int maxIter = transport_ ? opt_.maxIter : 1;
  for (int k = 0; k < maxIter; ++k) {
    SaddleBlocks merged = stat_;
    VecX rhsP = stat_.fp;
    if (transport_) {
      SaddleBlocks tr =
          (k == 0) ? trOld : transport_blocks(uk, t1);
      merged.A = std::move(tr.A);
      if (pspg_) {
        merged.Spu = std::move(tr.Spu);
        merged.Spp = std::move(tr.Spp);
        merged.SpuMass = std::move(tr.SpuMass);
        rhsP = tr.fp;
      }
    } else if (pspg_ && hasForcing_) {
      rhsP = transport_blocks(uk, t1).fp;  // consistency load at the new time
    }
    if (pspg_ && merged.SpuMass.nonZeros())
      rhsP += merged.SpuMass * s.u / dt_;

    LinearSystem sys = compose_system(*pb_, merged, 1.0 / dt_, 0.5,
                                      transport_ ? 0.5 : 0.0, rhsU, rhsP, bc);
    VecX x = solve_linear(sys.K, sys.rhs, opt_.solver);
    next = split_state(sys, x, t1);

    const double delta = increment_norm(next.u, uk);
    increments.push_back(delta);
    uk = next.u;
    if (!transport_ || delta <= opt_.tol) return next;
  }
  throw NonConvergence("per-step fixed-point coupling did not reach " +
                           std::to_string(opt_.tol) + " in " +
                           std::to_string(opt_.maxIter) + " sweeps",
                       increments);
}

}  // namespace lsflow
