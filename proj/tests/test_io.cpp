#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsflow/benchmarks.hpp"
#include "lsflow/config.hpp"
#include "lsflow/csv_io.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/vtk_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

using namespace lsflow;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("config text parses into keyed entries with line numbers") {
  std::string text =
      "# a comment\n"
      "\n"
      "case = cavity\n"
      "  mu   =  0.25  # trailing comment\n"
      "refines = 1, 2, 4\n";
  auto entries = parse_config_text(text, "inline");
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].key == "case");
  CHECK(entries[0].value == "cavity");
  CHECK(entries[0].line == 3);
  CHECK(entries[1].key == "mu");
  CHECK(entries[1].value == "0.25");
  CHECK(entries[1].line == 4);
  CHECK(entries[2].value == "1, 2, 4");

  RunConfig cfg;
  apply_entries(cfg, entries);
  CHECK(cfg.caseName == "cavity");
  CHECK(cfg.mu == 0.25);
  REQUIRE(cfg.refines.size() == 3);
  CHECK(cfg.refines[2] == 4);
}

TEST_CASE("malformed config lines are reported with their line number") {
  try {
    parse_config_text("case = slab\nnonsense without equals\n", "inline");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("unknown keys name themselves and the known alternatives") {
  auto entries = parse_config_text("viscosity = 0.1\n", "inline");
  RunConfig cfg;
  try {
    apply_entries(cfg, entries);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("viscosity") != std::string::npos);
    CHECK(msg.find("mu") != std::string::npos);  // lists the known keys
  }
}

TEST_CASE("values that cannot be typed are rejected") {
  RunConfig cfg;
  CHECK_THROWS_AS(
      apply_entries(cfg, parse_config_text("refine = soon\n", "inline")),
      ParseError);
  CHECK_THROWS_AS(
      apply_entries(cfg, parse_config_text("mu = thick\n", "inline")),
      ParseError);
  CHECK_THROWS_AS(
      apply_entries(cfg, parse_config_text("torus_div = 1, 2\n", "inline")),
      ParseError);
}

TEST_CASE("command-line overrides write single fields") {
  RunConfig cfg;
  apply_override(cfg, "order_u=3");
  CHECK(cfg.orderU == 3);
  apply_override(cfg, "solver=iterative");
  CHECK(cfg.solver == "iterative");
  CHECK_THROWS_AS(apply_override(cfg, "just-a-word"), ParseError);
}

TEST_CASE("config validation rejects inconsistent runs") {
  RunConfig good;
  CHECK_NOTHROW(validate_config(good));

  RunConfig bad = good;
  bad.caseName = "waterfall";
  CHECK_THROWS_AS(validate_config(bad), ValidationError);

  bad = good;
  bad.orderU = 9;
  CHECK_THROWS_AS(validate_config(bad), ValidationError);

  bad = good;
  bad.stabilization = "upwind";
  CHECK_THROWS_AS(validate_config(bad), ValidationError);

  bad = good;
  bad.dt = 0.0;
  CHECK_THROWS_AS(validate_config(bad), ValidationError);

  bad = good;
  bad.refines.clear();
  CHECK_THROWS_AS(validate_config(bad), ValidationError);
}

TEST_CASE("csv tables round-trip bit-exactly") {
  CsvTable t;
  t.header = {"h", "err", "rate"};
  t.rows = {{0.1, 1.0 / 3.0, 1e-300},
            {-0.0, 2.2250738585072014e-308, 1.7976931348623157e308},
            {123456789.123456789, -9.87e-45, 0.30000000000000004}};
  FileGuard fg{temp_path("lsflow_roundtrip_test.csv")};
  write_csv(fg.path, t);
  CsvTable back = read_csv(fg.path);
  REQUIRE(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    REQUIRE(back.rows[r].size() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
      double a = t.rows[r][c], b = back.rows[r][c];
      CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
  }
  // the negative zero must survive with its sign
  CHECK(std::signbit(back.rows[1][0]));
}

TEST_CASE("csv writing rejects ragged rows and reading rejects junk") {
  CsvTable ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{1.0, 2.0}, {3.0}};
  FileGuard fg{temp_path("lsflow_ragged_test.csv")};
  CHECK_THROWS_AS(write_csv(fg.path, ragged), ValidationError);

  FileGuard fg2{temp_path("lsflow_junk_test.csv")};
  {
    std::ofstream out(fg2.path);
    out << "a,b\n1.0,fast\n";
  }
  CHECK_THROWS_AS(read_csv(fg2.path), ParseError);
  CHECK_THROWS_AS(read_csv(temp_path("lsflow_missing_test.csv")), IoError);
}

TEST_CASE("the lattice-to-cell point ordering is a bijection with fixed corners") {
  for (int q : {1, 2, 3}) {
    const int n = (q + 1) * (q + 1) * (q + 1);
    std::set<int> seen;
    for (int k = 0; k <= q; ++k)
      for (int j = 0; j <= q; ++j)
        for (int i = 0; i <= q; ++i) {
          int idx = vtk_point_index(i, j, k, q);
          CHECK(idx >= 0);
          CHECK(idx < n);
          seen.insert(idx);
        }
    CHECK(int(seen.size()) == n);
    CHECK(vtk_point_index(0, 0, 0, q) == 0);
    CHECK(vtk_point_index(q, 0, 0, q) == 1);
    CHECK(vtk_point_index(q, q, 0, q) == 2);
    CHECK(vtk_point_index(0, q, 0, q) == 3);
    CHECK(vtk_point_index(0, 0, q, q) == 4);
    CHECK(vtk_point_index(q, 0, q, q) == 5);
    CHECK(vtk_point_index(q, q, q, q) == 6);
    CHECK(vtk_point_index(0, q, q, q) == 7);
  }
}

TEST_CASE("field output round-trips through the legacy grid format") {
  SlabOptions so;
  so.div = {1, 1, 1};
  so.orderGeom = 2;
  Case cs = make_slab_case(so);
  const FunctionSpace& vs = *cs.problem.velocity;
  const FunctionSpace& ps = *cs.problem.pressure;

  auto field = [](const Vec3& x) {
    return Vec3(x[0] + 2.0 * x[1], x[2], -x[1]);
  };
  FlowState st;
  st.u = interpolate_velocity(vs, field);
  st.p = VecX(ps.n_dofs());
  for (int d = 0; d < ps.n_dofs(); ++d) st.p[d] = -ps.dof_position(d)[0];

  FileGuard fg{temp_path("lsflow_fields_test.vtk")};
  write_vtk_solution(fg.path, cs.problem, st, "slab shear");
  VtkDataset ds = read_vtk_legacy(fg.path);

  REQUIRE(int(ds.points.size()) == cs.mesh->n_nodes());
  REQUIRE(ds.cells.size() == 1);
  REQUIRE(ds.cellTypes.size() == 1);
  CHECK(ds.cellTypes[0] == 72);  // arbitrary-order Lagrange hexahedron
  REQUIRE(ds.cells[0].size() == 27);
  std::set<int> conn(ds.cells[0].begin(), ds.cells[0].end());
  CHECK(int(conn.size()) == 27);  // a permutation of all grid points

  REQUIRE(ds.vectors.count("velocity") == 1);
  REQUIRE(ds.scalars.count("pressure") == 1);
  REQUIRE(ds.scalars.count("rotation") == 1);
  REQUIRE(ds.scalars.count("normal_speed") == 1);

  const auto& vel = ds.vectors.at("velocity");
  const auto& pres = ds.scalars.at("pressure");
  const auto& rot = ds.scalars.at("rotation");
  const auto& nsp = ds.scalars.at("normal_speed");
  REQUIRE(vel.size() == ds.points.size());
  REQUIRE(pres.size() == ds.points.size());

  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    const Vec3& x = ds.points[i];
    CHECK((vel[i] - field(x)).norm() <= 1e-9);
    CHECK(pres[i] == doctest::Approx(-x[0]).epsilon(1e-9));
    // flat sheets: in-plane rotation of (x + 2y, z, .) is -2 everywhere,
    // and the normal speed is the third component
    CHECK(rot[i] == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(nsp[i] == doctest::Approx(-x[1]).epsilon(1e-9));
  }
}
