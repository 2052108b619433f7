#pragma once

#include "lsflow/lagrange.hpp"
#include "lsflow/mesh.hpp"
#include "lsflow/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace lsflow {

/// Global numbering for a tensor-product Lagrange space with per-direction
/// orders.  Degrees of freedom on shared vertices, edges and faces are
/// identified across elements; for anisotropic orders the per-direction
/// counts must agree along every shared entity (InconsistentOrientation
/// otherwise).
struct DofMap {
  std::array<int, 3> orders{1, 1, 1};
  int nDofs = 0;
  std::vector<std::vector<int>> elemDofs;           // tensor order per element
  std::vector<std::pair<int, int>> owner;           // dof -> (elem, local)
};

DofMap build_dof_map(const std::vector<std::array<int, 8>>& elemCorners,
                     const std::array<int, 3>& orders);

struct FunctionSpace {
  const HexMesh* mesh = nullptr;
  std::array<int, 3> orders{1, 1, 1};
  DofMap dofs;
  TensorBasis basis;

  FunctionSpace(const HexMesh& m, const std::array<int, 3>& ord);

  int n_dofs() const { return dofs.nDofs; }

  /// Reference coordinates of a dof inside its owning element.
  Vec3 dof_ref(int dof) const;
  /// Physical position (geometry interpolant at the dof's reference point).
  Vec3 dof_position(int dof) const;
  /// Parameter coordinates (pre-mapping) at the dof's reference point.
  Vec3 dof_param(int dof) const;

  /// Dofs whose lattice point lies on the given element face; pairs of
  /// (local index, global dof).
  std::vector<std::pair<int, int>> dofs_on_face(int elem, int side) const;
};

}  // namespace lsflow
