#include "lsflow/mesh.hpp"

#include "lsflow/element.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/lagrange.hpp"
#include "lsflow/quadrature.hpp"
#include "lsflow/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace lsflow {

std::array<int, 4> face_corners(int side) {
  switch (side) {
    case 0: return {0, 2, 6, 4};
    case 1: return {1, 3, 7, 5};
    case 2: return {0, 1, 5, 4};
    case 3: return {2, 3, 7, 6};
    case 4: return {0, 1, 3, 2};
    case 5: return {4, 5, 7, 6};
  }
  throw ValidationError("face_corners: side out of range");
}

std::array<int, 2> face_axes(int side) {
  switch (side / 2) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    case 2: return {0, 1};
  }
  throw ValidationError("face_axes: side out of range");
}

int face_axis(int side) { return side / 2; }
bool face_at_upper(int side) { return side % 2 == 1; }

namespace {

/// Merges points that coincide within a tolerance; bucketed spatial hash
/// with neighbor-bucket lookup.
class PointMerger {
public:
  explicit PointMerger(double tol) : tol_(tol) {}

  int add(const Vec3& p) {
    auto key = bucket(p);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy)
        for (long dz = -1; dz <= 1; ++dz) {
          auto it = buckets_.find({key[0] + dx, key[1] + dy, key[2] + dz});
          if (it == buckets_.end()) continue;
          for (int id : it->second)
            if ((points_[id] - p).norm() <= tol_) return id;
        }
    int id = static_cast<int>(points_.size());
    points_.push_back(p);
    buckets_[key].push_back(id);
    return id;
  }

  const std::vector<Vec3>& points() const { return points_; }

private:
  std::array<long, 3> bucket(const Vec3& p) const {
    double w = 4.0 * tol_;
    return {static_cast<long>(std::floor(p.x() / w)),
            static_cast<long>(std::floor(p.y() / w)),
            static_cast<long>(std::floor(p.z() / w))};
  }

  struct Hash {
    std::size_t operator()(const std::array<long, 3>& k) const {
      std::size_t h = 1469598103934665603ull;
      for (long v : k) {
        h ^= static_cast<std::size_t>(v);
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  double tol_;
  std::vector<Vec3> points_;
  std::unordered_map<std::array<long, 3>, std::vector<int>, Hash> buckets_;
};

Vec3 block_param(const Block& b, const Vec3& logical) {
  Vec3 f(logical[0] / b.div[0], logical[1] / b.div[1], logical[2] / b.div[2]);
  Vec3 p = b.lo + (b.hi - b.lo).cwiseProduct(f);
  return b.shape ? b.shape(p) : p;
}

}  // namespace

std::vector<BoundaryFace> extract_boundary_faces(
    const std::vector<std::array<int, 8>>& elemCorners,
    const std::function<std::optional<std::string>(int elem, int side)>& tag) {
  std::map<std::array<int, 4>, int> count;
  for (const auto& corners : elemCorners)
    for (int side = 0; side < 6; ++side) {
      auto fc = face_corners(side);
      std::array<int, 4> key{corners[fc[0]], corners[fc[1]], corners[fc[2]],
                             corners[fc[3]]};
      std::sort(key.begin(), key.end());
      ++count[key];
    }
  for (const auto& [key, c] : count)
    if (c > 2)
      throw InconsistentOrientation(
          "extract_boundary_faces: face shared by more than two elements "
          "(periodic direction needs at least three divisions)");

  std::vector<BoundaryFace> out;
  for (std::size_t e = 0; e < elemCorners.size(); ++e)
    for (int side = 0; side < 6; ++side) {
      auto fc = face_corners(side);
      std::array<int, 4> key{
          elemCorners[e][fc[0]], elemCorners[e][fc[1]],
          elemCorners[e][fc[2]], elemCorners[e][fc[3]]};
      std::sort(key.begin(), key.end());
      if (count[key] != 1) continue;
      auto t = tag(static_cast<int>(e), side);
      if (!t)
        throw UntaggedFace("boundary face of element " + std::to_string(e) +
                           " side " + std::to_string(side) +
                           " matched no tagger predicate");
      out.push_back({static_cast<int>(e), side, *t});
    }
  return out;
}

HexMesh MeshBuilder::build() const {
  if (blocks.empty()) throw ValidationError("MeshBuilder: no blocks");
  for (const auto& b : blocks)
    for (int d = 0; d < 3; ++d)
      if (b.div[d] < 1)
        throw InvalidDivisions("MeshBuilder: nonpositive division count");
  if (qGeom < 1 || qGeom > 8)
    throw ValidationError("MeshBuilder: geometry order out of range");

  auto toPhys = [&](const Vec3& param) {
    return geometryMap ? geometryMap(param) : param;
  };

  // bounding box of block corners for the merge tolerance
  Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
  for (const auto& b : blocks)
    for (int k = 0; k <= 1; ++k)
      for (int j = 0; j <= 1; ++j)
        for (int i = 0; i <= 1; ++i) {
          Vec3 x = toPhys(block_param(
              b, Vec3(i * b.div[0], j * b.div[1], k * b.div[2])));
          lo = lo.cwiseMin(x);
          hi = hi.cwiseMax(x);
        }
  double diam = (hi - lo).norm();
  if (!(diam > 0))
    throw ValidationError("MeshBuilder: degenerate bounding box");

  HexMesh mesh;
  mesh.qGeom = qGeom;
  mesh.diameter = diam;

  PointMerger mergeCorners(1e-9 * diam);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = blocks[bi];
    HexMesh::BlockRange br;
    br.div = b.div;
    br.lo = b.lo;
    br.hi = b.hi;
    br.elemOffset = mesh.n_elems();
    br.identityShape = !b.shape;
    mesh.blockRanges.push_back(br);
    for (int k = 0; k < b.div[2]; ++k)
      for (int j = 0; j < b.div[1]; ++j)
        for (int i = 0; i < b.div[0]; ++i) {
          std::array<int, 8> corners;
          for (int ck = 0; ck <= 1; ++ck)
            for (int cj = 0; cj <= 1; ++cj)
              for (int ci = 0; ci <= 1; ++ci) {
                Vec3 logical(i + ci, j + cj, k + ck);
                Vec3 x = toPhys(block_param(b, logical));
                corners[ci + 2 * cj + 4 * ck] = mergeCorners.add(x);
              }
          mesh.elemCorners.push_back(corners);
          mesh.elemBlock.push_back(static_cast<int>(bi));
        }
  }
  mesh.nVertices = static_cast<int>(mergeCorners.points().size());

  // geometry nodes: dof identification at qGeom, coordinates from the owner
  DofMap geomMap = build_dof_map(mesh.elemCorners, {qGeom, qGeom, qGeom});
  TensorBasis geomBasis({qGeom, qGeom, qGeom});
  mesh.elemNodes = geomMap.elemDofs;
  mesh.nodeCoords.resize(geomMap.nDofs);
  mesh.elemParams.resize(mesh.n_elems());

  for (int e = 0; e < mesh.n_elems(); ++e) {
    const Block& b = blocks[mesh.elemBlock[e]];
    const auto& br = mesh.blockRanges[mesh.elemBlock[e]];
    int rel = e - br.elemOffset;
    int ei = rel % b.div[0];
    int ej = (rel / b.div[0]) % b.div[1];
    int ek = rel / (b.div[0] * b.div[1]);
    mesh.elemParams[e].resize(geomBasis.size());
    for (int a = 0; a < geomBasis.size(); ++a) {
      auto l = geomBasis.lattice(a);
      Vec3 logical(ei + static_cast<double>(l[0]) / qGeom,
                   ej + static_cast<double>(l[1]) / qGeom,
                   ek + static_cast<double>(l[2]) / qGeom);
      Vec3 param = block_param(b, logical);
      mesh.elemParams[e][a] = param;
      int dof = geomMap.elemDofs[e][a];
      if (geomMap.owner[dof] == std::make_pair(e, a))
        mesh.nodeCoords[dof] = toPhys(param);
    }
  }

  // boundary faces: block tags first, then the point tagger
  auto tagOf = [&](int elem, int side) -> std::optional<std::string> {
    const Block& b = blocks[mesh.elemBlock[elem]];
    const auto& br = mesh.blockRanges[mesh.elemBlock[elem]];
    int rel = elem - br.elemOffset;
    int ei = rel % b.div[0];
    int ej = (rel / b.div[0]) % b.div[1];
    int ek = rel / (b.div[0] * b.div[1]);
    std::array<int, 3> eidx{ei, ej, ek};
    int ax = face_axis(side);
    bool upper = face_at_upper(side);
    bool onBlockFace =
        upper ? (eidx[ax] == b.div[ax] - 1) : (eidx[ax] == 0);
    if (onBlockFace && b.faceTags[side]) return b.faceTags[side];
    if (tagger) {
      // parameter-space face centroid
      Vec3 logical(ei + 0.5, ej + 0.5, ek + 0.5);
      logical[ax] = upper ? eidx[ax] + 1.0 : eidx[ax];
      return tagger(block_param(b, logical));
    }
    return std::nullopt;
  };
  mesh.boundary = extract_boundary_faces(mesh.elemCorners, tagOf);

  // element sizes from corner chords
  mesh.hEl.resize(mesh.n_elems());
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const auto& c = mesh.elemCorners[e];
    auto corner = [&](int idx) { return mergeCorners.points()[c[idx]]; };
    double h = 1e300;
    static const int edges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7},
                                     {0, 2}, {1, 3}, {4, 6}, {5, 7},
                                     {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    for (auto& ed : edges)
      h = std::min(h, (corner(ed[0]) - corner(ed[1])).norm());
    mesh.hEl[e] = h;
  }

  // the corner-based bounding box degenerates for periodic blocks (all
  // corners land on the seam), so the final diameter comes from every node
  Vec3 nlo = Vec3::Constant(1e300), nhi = Vec3::Constant(-1e300);
  for (const auto& x : mesh.nodeCoords) {
    nlo = nlo.cwiseMin(x);
    nhi = nhi.cwiseMax(x);
  }
  mesh.diameter = (nhi - nlo).norm();

  validate_geometry(mesh);
  return mesh;
}

std::pair<int, Vec3> HexMesh::locate_param(const Vec3& p) const {
  for (const auto& br : blockRanges) {
    if (!br.identityShape) continue;
    Vec3 f = (p - br.lo).cwiseQuotient(br.hi - br.lo);
    const double eps = 1e-12;
    if ((f.array() < -eps).any() || (f.array() > 1.0 + eps).any()) continue;
    std::array<int, 3> ei;
    Vec3 ref;
    for (int d = 0; d < 3; ++d) {
      double t = std::clamp(f[d], 0.0, 1.0) * br.div[d];
      int i = std::min(static_cast<int>(t), br.div[d] - 1);
      ei[d] = i;
      ref[d] = 2.0 * (t - i) - 1.0;
    }
    int elem = br.elemOffset +
               ei[0] + br.div[0] * (ei[1] + br.div[1] * ei[2]);
    return {elem, ref};
  }
  throw ProbeOffSurface("locate_param: point outside every identity block");
}

HexMesh build_structured_hex_mesh(const Vec3& lo, const Vec3& hi,
                                  const std::array<int, 3>& div, int qGeom,
                                  const FaceTagger& tagger) {
  MeshBuilder mb;
  Block b;
  b.div = div;
  b.lo = lo;
  b.hi = hi;
  mb.blocks.push_back(b);
  mb.qGeom = qGeom;
  mb.tagger = tagger;
  return mb.build();
}

void apply_geometry_mapping(HexMesh& mesh,
                            const std::function<Vec3(const Vec3&)>& map) {
  // nodes own unique parameter values through their owner element, so remap
  // node by node via any element that references it
  std::vector<bool> done(mesh.n_nodes(), false);
  for (int e = 0; e < mesh.n_elems(); ++e)
    for (std::size_t a = 0; a < mesh.elemNodes[e].size(); ++a) {
      int node = mesh.elemNodes[e][a];
      if (done[node]) continue;
      done[node] = true;
      mesh.nodeCoords[node] = map(mesh.elemParams[e][a]);
    }
  for (int e = 0; e < mesh.n_elems(); ++e) {
    const auto& c = mesh.elemCorners[e];
    double h = 1e300;
    static const int edges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7},
                                     {0, 2}, {1, 3}, {4, 6}, {5, 7},
                                     {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    auto corner = [&](int idx) {
      // corner a-lattice positions of the geometry node lattice
      int q = mesh.qGeom;
      int i = (idx & 1) ? q : 0;
      int j = (idx & 2) ? q : 0;
      int k = (idx & 4) ? q : 0;
      int local = i + (q + 1) * (j + (q + 1) * k);
      return mesh.nodeCoords[mesh.elemNodes[e][local]];
    };
    (void)c;
    for (auto& ed : edges)
      h = std::min(h, (corner(ed[0]) - corner(ed[1])).norm());
    mesh.hEl[e] = h;
  }
  Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
  for (const auto& x : mesh.nodeCoords) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  mesh.diameter = (hi - lo).norm();
  validate_geometry(mesh);
}

void validate_geometry(const HexMesh& mesh) {
  TensorRule rule = TensorRule::for_degree(2 * mesh.qGeom);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    ElementMap em(mesh, e);
    for (const auto& r : rule.points) em.map(r, false);
    em.map(Vec3::Zero(), false);
  }
}

}  // namespace lsflow
