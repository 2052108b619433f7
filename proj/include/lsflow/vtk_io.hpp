#pragma once

#include "lsflow/assembly.hpp"
#include "lsflow/solve.hpp"

#include <map>
#include <string>
#include <vector>

namespace lsflow {

/// Index of the lattice point (i, j, k) of an order-q hexahedron in the
/// arbitrary-order VTK cell ordering (corners, edges, faces, body).
int vtk_point_index(int i, int j, int k, int q);

/// Writes mesh and nodal solution fields (velocity, pressure, the rotation
/// scalar n . curl of the covariant gradient, and the normal speed u . n) as
/// a legacy-ASCII unstructured grid of arbitrary-order Lagrange hexahedra.
/// Fields are sampled at the geometry nodes of each element.
void write_vtk_solution(const std::string& path, const FlowProblem& pb,
                        const FlowState& state, const std::string& title);

/// Minimal reader for the files written above (round-trip checks): points,
/// cell connectivity, and named point arrays.
struct VtkDataset {
  std::vector<Vec3> points;
  std::vector<std::vector<int>> cells;
  std::vector<int> cellTypes;
  std::map<std::string, std::vector<double>> scalars;
  std::map<std::string, std::vector<Vec3>> vectors;
};

VtkDataset read_vtk_legacy(const std::string& path);

}  // namespace lsflow
