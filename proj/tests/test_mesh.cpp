#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsflow/benchmarks.hpp"
#include "lsflow/element.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/mesh.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

using namespace lsflow;

namespace {

FaceTagger tag_all(const std::string& name) {
  return [name](const Vec3&) { return std::optional<std::string>(name); };
}

std::map<std::string, int> tag_counts(const HexMesh& mesh) {
  std::map<std::string, int> c;
  for (const auto& f : mesh.boundary) ++c[f.tag];
  return c;
}

}  // namespace

TEST_CASE("face corner tables are consistent with the vertex lattice") {
  for (int side = 0; side < 6; ++side) {
    auto corners = face_corners(side);
    int axis = face_axis(side);
    int want = face_at_upper(side) ? 1 : 0;
    for (int c : corners) {
      std::array<int, 3> lattice{c & 1, (c >> 1) & 1, (c >> 2) & 1};
      CHECK(lattice[axis] == want);
    }
    auto axes = face_axes(side);
    CHECK(axes[0] < axes[1]);
    CHECK(axes[0] != axis);
    CHECK(axes[1] != axis);
  }
}

TEST_CASE("structured boxes carry the expected counts and sizes") {
  HexMesh mesh = build_structured_hex_mesh(Vec3(0, 0, 0), Vec3(2, 1, 1),
                                           {2, 1, 1}, 2, tag_all("wall"));
  CHECK(mesh.n_elems() == 2);
  CHECK(mesh.nVertices == 12);
  CHECK(mesh.n_nodes() == 45);  // 5 x 3 x 3 quadratic geometry lattice
  CHECK(mesh.boundary.size() == 10);
  CHECK(mesh.diameter == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  for (double h : mesh.hEl) CHECK(h == doctest::Approx(1.0).epsilon(1e-14));

  // identity geometry: parameters equal physical coordinates at every node
  for (int e = 0; e < mesh.n_elems(); ++e)
    for (std::size_t l = 0; l < mesh.elemNodes[e].size(); ++l) {
      Vec3 x = mesh.nodeCoords[mesh.elemNodes[e][l]];
      CHECK((x - mesh.elemParams[e][l]).norm() <= 1e-13);
    }
}

TEST_CASE("parameter-space point location round-trips through the mapping") {
  HexMesh mesh = build_structured_hex_mesh(Vec3(0, 0, 0), Vec3(2, 1, 1),
                                           {2, 1, 1}, 2, tag_all("wall"));
  Vec3 p(1.3, 0.4, 0.7);
  auto [elem, ref] = mesh.locate_param(p);
  CHECK(elem == 1);
  ElementMap em(mesh, elem);
  MapPoint mp = em.map(ref, false);
  CHECK((mp.x - p).norm() <= 1e-12);
  CHECK((mp.param - p).norm() <= 1e-12);

  CHECK_THROWS_AS(mesh.locate_param(Vec3(3.0, 0.5, 0.5)), ProbeOffSurface);
}

TEST_CASE("adjacent blocks merge their shared face") {
  MeshBuilder mb;
  Block left;
  left.lo = Vec3(0, 0, 0);
  left.hi = Vec3(1, 1, 1);
  Block right;
  right.lo = Vec3(1, 0, 0);
  right.hi = Vec3(2, 1, 1);
  mb.blocks = {left, right};
  mb.qGeom = 1;
  mb.tagger = tag_all("wall");
  HexMesh mesh = mb.build();
  CHECK(mesh.n_elems() == 2);
  CHECK(mesh.nVertices == 12);
  CHECK(mesh.boundary.size() == 10);
}

TEST_CASE("a geometry map closing a parameter direction merges the seam") {
  MeshBuilder mb;
  Block b;
  b.div = {1, 6, 1};
  b.lo = Vec3(1, 0, 0);
  b.hi = Vec3(2, 2 * M_PI, 1);
  b.faceTags[0] = "inner";
  b.faceTags[1] = "outer";
  b.faceTags[4] = "bottom";
  b.faceTags[5] = "top";
  mb.blocks = {b};
  mb.qGeom = 2;
  mb.geometryMap = [](const Vec3& p) {
    return Vec3(p[0] * std::cos(p[1]), p[0] * std::sin(p[1]), p[2]);
  };
  HexMesh mesh = mb.build();
  CHECK(mesh.n_elems() == 6);
  CHECK(mesh.nVertices == 24);  // 2 radii x 6 merged angles x 2 heights
  auto tags = tag_counts(mesh);
  CHECK(tags["inner"] == 6);
  CHECK(tags["outer"] == 6);
  CHECK(tags["bottom"] == 6);
  CHECK(tags["top"] == 6);
  CHECK(mesh.boundary.size() == 24);  // no faces along the closed direction
}

TEST_CASE("defective inputs raise the dedicated mesh errors") {
  MeshBuilder zero;
  zero.blocks.resize(1);
  zero.blocks[0].div = {0, 1, 1};
  zero.tagger = tag_all("wall");
  CHECK_THROWS_AS(zero.build(), InvalidDivisions);

  MeshBuilder mirrored;
  mirrored.blocks.resize(1);
  mirrored.blocks[0].shape = [](const Vec3& p) {
    return Vec3(-p[0], p[1], p[2]);
  };
  mirrored.tagger = tag_all("wall");
  CHECK_THROWS_AS(mirrored.build(), InvertedElement);

  MeshBuilder untagged;
  untagged.blocks.resize(1);
  CHECK_THROWS_AS(untagged.build(), UntaggedFace);
}

TEST_CASE("a face shared by more than two elements is rejected") {
  // three hexes glued to the same quad {1,3,5,7}
  std::vector<std::array<int, 8>> corners = {
      {0, 1, 2, 3, 4, 5, 6, 7},
      {1, 8, 3, 9, 5, 10, 7, 11},
      {1, 12, 3, 13, 5, 14, 7, 15},
  };
  auto tag = [](int, int) { return std::optional<std::string>("any"); };
  CHECK_THROWS_AS(extract_boundary_faces(corners, tag),
                  InconsistentOrientation);
}

TEST_CASE("the rotational channel mesh closes its angular seam") {
  Case cs = make_axisymmetric_case({});
  const HexMesh& mesh = *cs.mesh;
  CHECK(mesh.n_elems() == 24);       // 1 x 6 x 4 divisions
  CHECK(mesh.nVertices == 60);       // 2 x 6 x 5 with the seam merged
  CHECK(mesh.qGeom == 3);
  CHECK(mesh.n_nodes() == 936);      // 4 x 18 x 13 cubic lattice
  auto tags = tag_counts(mesh);
  CHECK(tags["inflow"] == 6);
  CHECK(tags["outflow"] == 6);
  CHECK(tags["free"] == 48);
  CHECK(mesh.boundary.size() == 60);
}

TEST_CASE("the obstacle ring mesh has the expected topology") {
  Case cs = make_obstacle_case({});
  const HexMesh& mesh = *cs.mesh;
  CHECK(mesh.n_elems() == 80);
  CHECK(mesh.nVertices == 171);  // 57 in-plane vertices on 3 levels
  auto tags = tag_counts(mesh);
  CHECK(tags["inflow"] == 8);
  CHECK(tags["outflow"] == 8);
  CHECK(tags["wall"] == 52);     // channel walls plus the obstacle ring
  CHECK(tags["free"] == 80);
  CHECK(mesh.boundary.size() == 148);
}

TEST_CASE("bulk maps reproduce hand-evaluated spot values") {
  // map 2 at the stagnation height: the trigonometric terms collapse
  Vec3 x = obstacle_mapping(2, Vec3(0.0, 0.205, 0.0));
  CHECK(x[0] == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(x[2] == doctest::Approx(0.2 * std::sin(0.41)).epsilon(1e-13));

  CHECK_THROWS_AS(obstacle_mapping(4, Vec3::Zero()), ValidationError);
}

TEST_CASE("the cavity sheet stack bends parameters as prescribed") {
  Case cs = make_cavity_case({4, 2});
  const HexMesh& mesh = *cs.mesh;

  auto [e1, r1] = mesh.locate_param(Vec3(0.5, 0.0, 0.125));
  MapPoint m1 = ElementMap(mesh, e1).map(r1, false);
  CHECK(m1.x[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(m1.x[1] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(m1.x[2] ==
        doctest::Approx(0.4 * std::sqrt(0.225) + std::sin(0.125))
            .epsilon(1e-13));

  // the driven edge stays straight: the sheet amplitude vanishes at b = 1
  auto [e2, r2] = mesh.locate_param(Vec3(0.0, 1.0, 0.0));
  MapPoint m2 = ElementMap(mesh, e2).map(r2, false);
  CHECK((m2.x - Vec3(0.0, 1.0, 0.0)).norm() <= 1e-12);
}
