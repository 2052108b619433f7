#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lsflow {

/// Base class for all failures raised by this library.  Each concrete type
/// carries a stable exit code so the CLI can map failures onto process exit
/// statuses without string matching.
class Error : public std::runtime_error {
public:
  Error(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

private:
  int exit_code_;
};

#define LSFLOW_ERROR(Name, code)                                      \
  class Name : public Error {                                         \
  public:                                                             \
    explicit Name(const std::string& what) : Error(code, what) {}     \
  }

// geometry / level set
LSFLOW_ERROR(DegenerateGradient, 10);
LSFLOW_ERROR(DegenerateTriad, 11);
// mesh / spaces
LSFLOW_ERROR(InvalidDivisions, 20);
LSFLOW_ERROR(InvertedElement, 21);
LSFLOW_ERROR(SingularJacobian, 22);
LSFLOW_ERROR(InconsistentOrientation, 23);
LSFLOW_ERROR(UntaggedFace, 24);
// assembly / solve
LSFLOW_ERROR(MissingStabilization, 30);
LSFLOW_ERROR(NoPressureConstraint, 31);
LSFLOW_ERROR(RedundantConstraint, 32);
LSFLOW_ERROR(ConflictingPrescriptions, 33);
LSFLOW_ERROR(MissingSecondDerivatives, 34);
LSFLOW_ERROR(LinearSolveFailure, 35);
LSFLOW_ERROR(SingularSystem, 36);
// verification
LSFLOW_ERROR(ProbeOffSurface, 40);
LSFLOW_ERROR(InsufficientData, 41);
// configuration / io
LSFLOW_ERROR(ParseError, 50);
LSFLOW_ERROR(ValidationError, 51);
LSFLOW_ERROR(IoError, 52);

#undef LSFLOW_ERROR

/// Nonlinear iteration failure; keeps the residual history so callers can
/// report how the iteration behaved before giving up.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string& what, std::vector<double> history)
      : Error(37, what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

private:
  std::vector<double> history_;
};

}  // namespace lsflow
