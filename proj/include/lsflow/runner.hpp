#pragma once

#include "lsflow/benchmarks.hpp"
#include "lsflow/config.hpp"

namespace lsflow {

/// Builds the configured case at resolution knob r: division multiplier for
/// most families, in-plane divisions = 4 r for the cavity.
Case build_case_at(const RunConfig& cfg, int resolution);

/// Builds the configured case at cfg.refine.
Case build_case(const RunConfig& cfg);

SolverKind solver_kind(const RunConfig& cfg);
PicardOptions picard_options(const RunConfig& cfg);

/// Stationary solve; prints a summary, optionally writes csv / vtk output.
int cmd_solve(const RunConfig& cfg);

/// Mesh sequence over cfg.refines; prints error tables and fitted rates,
/// optionally writes the table as csv.
int cmd_converge(const RunConfig& cfg);

/// Time marching; tracks probe energies, optionally writes csv rows and a
/// vtk series.
int cmd_march(const RunConfig& cfg);

}  // namespace lsflow
