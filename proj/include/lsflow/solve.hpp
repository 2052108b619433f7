#pragma once

#include "lsflow/assembly.hpp"

#include <vector>

namespace lsflow {

enum class SolverKind { direct, iterative };

/// Solves K x = rhs.  direct: sparse LU plus iterative refinement down to a
/// relative residual of 1e-10 (SingularSystem / LinearSolveFailure on
/// breakdown).  iterative: BiCGSTAB with an incomplete-LU preconditioner.
VecX solve_linear(const SpMat& K, const VecX& rhs,
                  SolverKind kind = SolverKind::direct);

struct FlowState {
  VecX u;      // 3 * nu, interleaved velocity components
  VecX p;      // np
  double t = 0.0;
};

struct PicardOptions {
  double tol = 1e-9;
  int maxIter = 50;        // transport relinearizations
  double relax = 1.0;
  SolverKind solver = SolverKind::direct;
};

struct PicardReport {
  int iterations = 0;                // linear solves performed
  std::vector<double> increments;    // relative velocity updates
};

/// Stationary Stokes: one linear solve.
FlowState solve_stokes(const FlowProblem& pb,
                       SolverKind kind = SolverKind::direct);

/// Stationary flow.  With transport (includeAdvection and positive density)
/// runs fixed-point relinearization from a Stokes predictor and throws
/// NonConvergence (carrying the increment history) past maxIter; without
/// transport this is a single solve.
FlowState solve_stationary(const FlowProblem& pb, const PicardOptions& opt,
                           PicardReport* report = nullptr);

/// Time integrator: one-leg trapezoidal average of the viscous, penalty and
/// transport terms, implicit pressure, full fixed-point coupling per step.
class TimeStepper {
 public:
  TimeStepper(const FlowProblem& pb, double dt, PicardOptions opt = {});

  FlowState advance(const FlowState& s);

  const SaddleBlocks& static_blocks() const { return stat_; }
  double dt() const { return dt_; }

 private:
  SaddleBlocks transport_blocks(const VecX& u, double time);
  VecX forcing(double time);

  const FlowProblem* pb_;
  double dt_;
  PicardOptions opt_;
  SaddleBlocks stat_;
  bool transport_ = false;
  bool pspg_ = false;
  bool hasForcing_ = false;
};

}  // namespace lsflow
