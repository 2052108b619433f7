#pragma once

#include "lsflow/levelset.hpp"
#include "lsflow/mesh.hpp"
#include "lsflow/space.hpp"
#include "lsflow/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lsflow {

struct DirichletBC {
  std::string tag;
  /// Full 3-vector at a dof position; x physical, param pre-mapping, t time.
  std::function<Vec3(const Vec3& x, const Vec3& param, double t)> value;
  /// When two prescriptions meet at a shared dof the higher priority wins;
  /// equal priorities with different values raise ConflictingPrescriptions.
  int priority = 0;
};

struct NeumannBC {
  std::string tag;
  /// In-plane traction; x physical, param pre-mapping, t time.
  std::function<Vec3(const Vec3& x, const Vec3& param, double t)> traction;
};

enum class Stabilization { none, pspg, brezzi_pitkaranta };
enum class PressureConstraint { none, zeroWeightedMean, pinAtNodes };

struct PenaltySpec {
  bool autoScaled = true;   // alpha = prefactor * mu / h_el^2
  double prefactor = 1e3;
  double value = 0.0;       // fixed alpha when autoScaled is false
};

/// One simultaneous-flow problem: bulk mesh, level-set field, spaces,
/// material data, boundary conditions and stabilization choices.
struct FlowProblem {
  const HexMesh* mesh = nullptr;
  const LevelSetField* phi = nullptr;
  std::shared_ptr<FunctionSpace> velocity;
  std::shared_ptr<FunctionSpace> pressure;

  double mu = 1.0;
  double rho = 1.0;
  bool includeAdvection = false;     // Navier-Stokes vs Stokes
  PenaltySpec penalty;

  std::vector<DirichletBC> dirichlet;
  std::vector<NeumannBC> neumann;
  std::vector<std::string> tractionFree;   // natural boundary, zero term
  std::vector<std::string> freeTags;       // level-set-parallel faces

  Stabilization stab = Stabilization::none;
  PressureConstraint constraint = PressureConstraint::none;
  std::function<bool(const Vec3& param)> pinPredicate;

  std::function<Vec3(const Vec3& x, double t)> bodyForce;   // tangential

  int quadDegree = -1;        // default qGeom + max(velocity orders) + 1
  double gradFloor = -1.0;    // default 1e-10 * mesh diameter

  int quad_degree() const;
  double grad_floor() const;
};

/// Checks tag coverage, regime/stabilization consistency and constraint
/// redundancy; throws ValidationError / MissingStabilization /
/// RedundantConstraint / NoPressureConstraint.
void validate_problem(const FlowProblem& pb);

bool has_natural_boundary(const FlowProblem& pb);

/// Assembled operator blocks.  Velocity dofs are interleaved (3*I + i);
/// pressure dofs follow in a separate index space of size np.
struct SaddleBlocks {
  int nu = 0;     // velocity space dofs (per component)
  int np = 0;
  SpMat T;        // rho * mass with projector
  SpMat D;        // viscous block (plus penalty when merged)
  SpMat G;        // penalty block
  SpMat A;        // advection
  SpMat C;        // continuity rows: np x 3nu
  SpMat Spu;      // stabilization pressure rows vs velocity
  SpMat Spp;      // stabilization pressure rows vs pressure
  SpMat SpuMass;  // stabilization pressure rows vs velocity-rate
  VecX fu;        // momentum load
  VecX fp;        // pressure-row load from stabilization consistency
  VecX weightedMeasure;   // per pressure dof, for zeroWeightedMean
};

struct AssemblyRequest {
  bool wantMass = false;
  bool wantDiffusion = true;       // D and G
  bool wantDivergence = true;      // C and weightedMeasure
  bool wantForcing = true;         // fu (body force + Neumann)
  bool wantTransport = false;      // A; requires uPrev
  bool mergePenalty = false;       // fold G into D (production solves)
  const VecX* uPrev = nullptr;     // 3nu transport coefficients
  double dt = 0.0;                 // > 0: instationary stabilization
  double time = 0.0;
};

SaddleBlocks assemble_system(const FlowProblem& pb, const AssemblyRequest& req);

/// Convenience: full stationary Stokes block set.
SaddleBlocks assemble_stokes(const FlowProblem& pb);

/// tau for PSPG: [(2/dt)^2 + (2|u|/h)^2 + (4 mu/h^2)^2]^{-1/2}; dt <= 0
/// drops the rate term.  Brezzi-Pitkaranta uses tau_p = h.
double stabilization_tau(Stabilization kind, double uNorm, double h,
                         double mu, double dt);

/// Dirichlet data resolved to dofs.
struct DirichletData {
  std::vector<int> dofs;     // velocity dof index (not component-expanded)
  std::vector<Vec3> values;
  std::vector<int> pressureDofs;   // pinned pressure dofs (value zero)
};

DirichletData collect_dirichlet(const FlowProblem& pb, double time);

/// Composed linear system over [u; p; multiplier?].
struct LinearSystem {
  SpMat K;
  VecX rhs;
  int n = 0;
  int nu3 = 0, np = 0;
  bool hasMultiplier = false;
};

/// Builds K = cT*T + cDG*(D+G) + cA*A in the velocity block, the saddle
/// couplings, stabilization rows, the optional mean constraint, and
/// eliminates Dirichlet dofs symmetrically where possible.
LinearSystem compose_system(const FlowProblem& pb, const SaddleBlocks& b,
                            double cT, double cDG, double cA,
                            const VecX& rhsU, const VecX& rhsP,
                            const DirichletData& bc);

}  // namespace lsflow
