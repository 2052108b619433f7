#include "lsflow/vtk_io.hpp"

#include "lsflow/csv_io.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/lagrange.hpp"
#include "lsflow/tdc.hpp"
#include "lsflow/verify.hpp"

#include <fstream>
#include <sstream>

namespace lsflow {

int vtk_point_index(int i, int j, int k, int q) {
  const bool ibdy = (i == 0 || i == q);
  const bool jbdy = (j == 0 || j == q);
  const bool kbdy = (k == 0 || k == q);
  const int nbdy = int(ibdy) + int(jbdy) + int(kbdy);

  if (nbdy == 3)  // corner
    return (i ? (j ? 2 : 1) : (j ? 3 : 0)) + (k ? 4 : 0);

  int offset = 8;
  if (nbdy == 2) {  // edge interior
    if (!ibdy)
      return offset + (i - 1) + (j ? q - 1 + q - 1 : 0) +
             (k ? 2 * (q - 1 + q - 1) : 0);
    if (!jbdy)
      return offset + (j - 1) + (i ? q - 1 : 2 * (q - 1) + q - 1) +
             (k ? 2 * (q - 1 + q - 1) : 0);
    offset += 4 * (q - 1) + 4 * (q - 1);
    return offset + (k - 1) + (q - 1) * (i ? (j ? 3 : 1) : (j ? 2 : 0));
  }

  offset += 4 * (3 * q - 3);
  if (nbdy == 1) {  // face interior
    if (ibdy)
      return offset + (j - 1) + (q - 1) * (k - 1) +
             (i ? (q - 1) * (q - 1) : 0);
    offset += 2 * (q - 1) * (q - 1);
    if (jbdy)
      return offset + (i - 1) + (q - 1) * (k - 1) +
             (j ? (q - 1) * (q - 1) : 0);
    offset += 2 * (q - 1) * (q - 1);
    return offset + (i - 1) + (q - 1) * (j - 1) +
           (k ? (q - 1) * (q - 1) : 0);
  }

  offset += 6 * (q - 1) * (q - 1);  // body interior
  return offset + (i - 1) + (q - 1) * ((j - 1) + (q - 1) * (k - 1));
}

void write_vtk_solution(const std::string& path, const FlowProblem& pb,
                        const FlowState& state, const std::string& title) {
  const HexMesh& mesh = *pb.mesh;
  const int q = mesh.qGeom;
  TensorBasis geom({q, q, q});

  // Owner (element, ref) of every geometry node for field sampling.
  std::vector<std::pair<int, Vec3>> owner(
      mesh.n_nodes(), {-1, Vec3::Zero()});
  for (int e = 0; e < mesh.n_elems(); ++e)
    for (int a = 0; a < geom.size(); ++a) {
      const int g = mesh.elemNodes[e][a];
      if (owner[g].first != -1) continue;
      auto l = geom.lattice(a);
      Vec3 ref(2.0 * l[0] / q - 1.0, 2.0 * l[1] / q - 1.0,
               2.0 * l[2] / q - 1.0);
      owner[g] = {e, ref};
    }

  const double floor = pb.grad_floor();
  std::vector<Vec3> vel(mesh.n_nodes());
  std::vector<double> pres(mesh.n_nodes()), rot(mesh.n_nodes()),
      nspeed(mesh.n_nodes());
  for (int g = 0; g < mesh.n_nodes(); ++g) {
    auto [e, ref] = owner[g];
    vel[g] = velocity_at(*pb.velocity, state.u, e, ref);
    pres[g] = pressure_at(*pb.pressure, state.p, e, ref);
    GeometryFrame f = frame_at(mesh, *pb.phi, e, ref, floor);
    Mat3 gu = velocity_gradient_at(*pb.velocity, state.u, e, ref);
    rot[g] = vorticity_scalar(gu, f);
    nspeed[g] = vel[g].dot(f.n);
  }

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_nodes() << " double\n";
  for (const Vec3& x : mesh.nodeCoords)
    out << format_double(x[0]) << " " << format_double(x[1]) << " "
        << format_double(x[2]) << "\n";

  const int npe = geom.size();
  out << "CELLS " << mesh.n_elems() << " "
      << mesh.n_elems() * (npe + 1) << "\n";
  std::vector<int> perm(npe);
  for (int k = 0; k <= q; ++k)
    for (int j = 0; j <= q; ++j)
      for (int i = 0; i <= q; ++i)
        perm[vtk_point_index(i, j, k, q)] = geom.local_index(i, j, k);
  for (int e = 0; e < mesh.n_elems(); ++e) {
    out << npe;
    for (int s = 0; s < npe; ++s) out << " " << mesh.elemNodes[e][perm[s]];
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.n_elems() << "\n";
  for (int e = 0; e < mesh.n_elems(); ++e) out << 72 << "\n";

  out << "POINT_DATA " << mesh.n_nodes() << "\n";
  out << "VECTORS velocity double\n";
  for (const Vec3& v : vel)
    out << format_double(v[0]) << " " << format_double(v[1]) << " "
        << format_double(v[2]) << "\n";
  auto scalar = [&](const std::string& name, const std::vector<double>& f) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : f) out << format_double(v) << "\n";
  };
  scalar("pressure", pres);
  scalar("rotation", rot);
  scalar("normal_speed", nspeed);
  if (!out) throw IoError("write failed for '" + path + "'");
}

VtkDataset read_vtk_legacy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  std::getline(in, line);
  if (line.rfind("# vtk", 0) != 0)
    throw ParseError("'" + path + "': missing vtk header line");
  std::getline(in, line);  // title
  std::getline(in, line);
  if (line != "ASCII")
    throw ParseError("'" + path + "': only ASCII files are supported");

  VtkDataset ds;
  std::string kw;
  int npoints = 0;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok)
      throw ParseError("'" + path + "': truncated or malformed " + what);
  };
  while (in >> kw) {
    if (kw == "DATASET") {
      in >> kw;
      need(kw == "UNSTRUCTURED_GRID", "dataset type");
    } else if (kw == "POINTS") {
      std::string type;
      need(bool(in >> npoints >> type), "POINTS header");
      ds.points.resize(npoints);
      for (int i = 0; i < npoints; ++i)
        need(bool(in >> ds.points[i][0] >> ds.points[i][1] >>
                  ds.points[i][2]),
             "POINTS data");
    } else if (kw == "CELLS") {
      int ncells = 0, total = 0;
      need(bool(in >> ncells >> total), "CELLS header");
      ds.cells.resize(ncells);
      for (int c = 0; c < ncells; ++c) {
        int cnt = 0;
        need(bool(in >> cnt), "cell size");
        ds.cells[c].resize(cnt);
        for (int s = 0; s < cnt; ++s)
          need(bool(in >> ds.cells[c][s]), "cell connectivity");
      }
    } else if (kw == "CELL_TYPES") {
      int ncells = 0;
      need(bool(in >> ncells), "CELL_TYPES header");
      ds.cellTypes.resize(ncells);
      for (int c = 0; c < ncells; ++c)
        need(bool(in >> ds.cellTypes[c]), "CELL_TYPES data");
    } else if (kw == "POINT_DATA") {
      need(bool(in >> npoints), "POINT_DATA header");
    } else if (kw == "VECTORS") {
      std::string name, type;
      need(bool(in >> name >> type), "VECTORS header");
      auto& v = ds.vectors[name];
      v.resize(npoints);
      for (int i = 0; i < npoints; ++i)
        need(bool(in >> v[i][0] >> v[i][1] >> v[i][2]), "VECTORS data");
    } else if (kw == "SCALARS") {
      std::string name, type;
      int comps = 1;
      need(bool(in >> name >> type >> comps), "SCALARS header");
      need(comps == 1, "SCALARS component count");
      std::string lut, lutName;
      need(bool(in >> lut >> lutName) && lut == "LOOKUP_TABLE",
           "LOOKUP_TABLE line");
      auto& f = ds.scalars[name];
      f.resize(npoints);
      for (int i = 0; i < npoints; ++i)
        need(bool(in >> f[i]), "SCALARS data");
    } else {
      throw ParseError("'" + path + "': unexpected keyword '" + kw + "'");
    }
  }
  return ds;
}

}  // namespace lsflow
