#pragma once

#include "lsflow/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lsflow {

/// Local corner numbering of a hex: index i + 2j + 4k over the unit lattice.
/// Sides: 0/1 at a=-1/+1, 2/3 at b=-1/+1, 4/5 at c=-1/+1.
std::array<int, 4> face_corners(int side);      // cyclic quad, (u,v) order
std::array<int, 2> face_axes(int side);         // in-face axes, ascending
int face_axis(int side);                        // fixed axis
bool face_at_upper(int side);

/// One structured block of a (possibly multi-block) mesh.  Logical element
/// indices map to the parameter box [lo, hi]; an optional shape callable
/// bends the box into curved parameter-space blocks.
struct Block {
  std::array<int, 3> div{1, 1, 1};
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Ones();
  std::function<Vec3(const Vec3&)> shape;      // param box -> param coords
  std::array<std::optional<std::string>, 6> faceTags;
};

struct BoundaryFace {
  int elem;
  int side;
  std::string tag;
};

/// Conforming mesh of curvilinear hexahedra.  Geometry is an isotropic
/// Lagrange interpolant of order qGeom per element; nodes shared between
/// elements carry one global id, which is also how periodic seams are
/// realized (coincident physical coordinates merge).
struct HexMesh {
  int qGeom = 1;
  int nVertices = 0;
  std::vector<std::array<int, 8>> elemCorners;
  std::vector<std::vector<int>> elemNodes;     // geometry node ids, tensor order
  std::vector<Vec3> nodeCoords;                // physical coordinates
  std::vector<std::vector<Vec3>> elemParams;   // per-element node parameters
  std::vector<BoundaryFace> boundary;
  std::vector<double> hEl;                     // minimal corner-edge length
  double diameter = 0.0;

  // block bookkeeping for parameter-space point location
  struct BlockRange {
    std::array<int, 3> div;
    Vec3 lo, hi;
    int elemOffset;
    bool identityShape;
  };
  std::vector<BlockRange> blockRanges;
  std::vector<int> elemBlock;

  int n_elems() const { return static_cast<int>(elemCorners.size()); }
  int n_nodes() const { return static_cast<int>(nodeCoords.size()); }

  /// Element and reference point of a parameter-space location.  Only valid
  /// for blocks without a shape callable.
  std::pair<int, Vec3> locate_param(const Vec3& p) const;
};

using FaceTagger = std::function<std::optional<std::string>(const Vec3& paramCenter)>;

struct MeshBuilder {
  std::vector<Block> blocks;
  int qGeom = 1;
  /// param coords -> physical coords; identity when absent.
  std::function<Vec3(const Vec3&)> geometryMap;
  FaceTagger tagger;

  HexMesh build() const;
};

/// Axis-aligned box [lo, hi] with the given divisions; parameters equal
/// physical coordinates.
HexMesh build_structured_hex_mesh(const Vec3& lo, const Vec3& hi,
                                  const std::array<int, 3>& div, int qGeom,
                                  const FaceTagger& tagger);

/// Re-maps node coordinates of an existing mesh through param -> physical
/// and revalidates Jacobians and element sizes.
void apply_geometry_mapping(HexMesh& mesh,
                            const std::function<Vec3(const Vec3&)>& map);

/// Jacobian positivity check at quadrature-like sample points; throws
/// InvertedElement / SingularJacobian.
void validate_geometry(const HexMesh& mesh);

/// Boundary faces are element faces whose sorted corner quad occurs exactly
/// once.  Tags come from block face tags first, then the tagger; an
/// unresolved face throws UntaggedFace.
std::vector<BoundaryFace> extract_boundary_faces(
    const std::vector<std::array<int, 8>>& elemCorners,
    const std::function<std::optional<std::string>(int elem, int side)>& tag);

}  // namespace lsflow
