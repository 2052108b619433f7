#pragma once

#include <array>
#include <string>
#include <vector>

namespace lsflow {

/// Run description parsed from a key = value file.  Every knob has a
/// default; -1 (or an empty string) means "pick the per-case default".
struct RunConfig {
  std::string caseName = "axisym";  // axisym | obstacle | cavity | torus | slab

  int orderU = -1;      // velocity order (cavity: shared order)
  int orderGeom = -1;   // geometry order
  double mu = -1.0;
  double rho = -1.0;

  int refine = 1;       // resolution knob (cavity: in-plane divisions)
  int mapping = 1;      // obstacle map index
  int layers = -1;      // thickness divisions where applicable
  std::array<int, 3> torusDiv{12, 8, 1};

  std::string stabilization;  // "", none, pspg, bp
  double penaltyPrefactor = 1e3;

  std::string solver = "direct";  // direct | iterative
  double picardTol = 1e-9;
  int picardMaxIter = 50;
  double picardRelax = 1.0;

  double dt = 0.1;
  double tEnd = 60.0;
  int writeEvery = 10;

  std::vector<int> refines{1, 2, 4};  // converge: resolution sequence

  std::string csv;  // output table path ("" = none)
  std::string vtk;  // output field path / prefix ("" = none)

  int quadDegree = -1;
};

/// One parsed key = value entry with its source line (diagnostics).
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses key = value text: one pair per line, '#' starts a comment, blank
/// lines ignored.  Malformed lines throw ParseError with the line number.
std::vector<ConfigEntry> parse_config_text(const std::string& text,
                                           const std::string& source);

std::vector<ConfigEntry> parse_config_file(const std::string& path);

/// Applies entries onto a config.  Unknown keys and untypable values throw
/// ParseError naming the key and source line.
void apply_entries(RunConfig& cfg, const std::vector<ConfigEntry>& entries);

/// Applies a single command-line override of the form key=value.
void apply_override(RunConfig& cfg, const std::string& keyValue);

/// Cross-field validation (case name known, orders sane, sequences
/// nonempty); throws ValidationError.
void validate_config(const RunConfig& cfg);

}  // namespace lsflow
