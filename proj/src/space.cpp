#include "lsflow/space.hpp"

#include "lsflow/errors.hpp"

#include <algorithm>
#include <map>

namespace lsflow {

namespace {

struct EdgeRec {
  int firstDof;
  int count;
};

struct FaceRec {
  int firstDof;
  int mU, mV;              // lattice spans along the canonical axes
  std::array<int, 4> canon;
};

// canonical frame of a quad given its 4 corner ids in cyclic order:
// start at the smallest id, walk toward the smaller neighbor.
struct QuadFrame {
  int k;     // cyclic position of the canonical origin
  int dir;   // +1 or 3 (i.e. -1 mod 4)
};

QuadFrame quad_frame(const std::array<int, 4>& g) {
  int k = 0;
  for (int j = 1; j < 4; ++j)
    if (g[j] < g[k]) k = j;
  int dir = (g[(k + 1) % 4] < g[(k + 3) % 4]) ? 1 : 3;
  return {k, dir};
}

}  // namespace

std::array<int, 4> sorted_quad(std::array<int, 4> q) {
  std::sort(q.begin(), q.end());
  return q;
}

DofMap build_dof_map(const std::vector<std::array<int, 8>>& elemCorners,
                     const std::array<int, 3>& orders) {
  for (int d = 0; d < 3; ++d)
    if (orders[d] < 1)
      throw ValidationError("build_dof_map: order must be >= 1");

  DofMap dm;
  dm.orders = orders;
  const int qa = orders[0], qb = orders[1], qc = orders[2];
  const int nloc = (qa + 1) * (qb + 1) * (qc + 1);

  int nVerts = 0;
  for (const auto& c : elemCorners)
    for (int v : c) nVerts = std::max(nVerts, v + 1);

  std::vector<int> vertexDof(nVerts, -1);
  std::map<std::pair<int, int>, EdgeRec> edges;
  std::map<std::array<int, 4>, FaceRec> faces;
  int next = 0;

  dm.elemDofs.resize(elemCorners.size());

  auto assign = [&](int e, int local, int dof) {
    dm.elemDofs[e][local] = dof;
    if (dof >= static_cast<int>(dm.owner.size()))
      dm.owner.resize(dof + 1, {-1, -1});
    if (dm.owner[dof].first < 0) dm.owner[dof] = {e, local};
  };

  for (std::size_t e = 0; e < elemCorners.size(); ++e) {
    const auto& corners = elemCorners[e];
    dm.elemDofs[e].assign(nloc, -1);
    int local = -1;
    for (int k = 0; k <= qc; ++k)
      for (int j = 0; j <= qb; ++j)
        for (int i = 0; i <= qa; ++i) {
          ++local;
          const std::array<int, 3> idx{i, j, k};
          const std::array<int, 3> ord{qa, qb, qc};
          std::array<bool, 3> atLo, atHi;
          int nb = 0;
          for (int d = 0; d < 3; ++d) {
            atLo[d] = idx[d] == 0;
            atHi[d] = idx[d] == ord[d];
            if (atLo[d] || atHi[d]) ++nb;
          }
          if (nb == 3) {
            int c = (atHi[0] ? 1 : 0) + 2 * (atHi[1] ? 1 : 0) +
                    4 * (atHi[2] ? 1 : 0);
            int v = corners[c];
            if (vertexDof[v] < 0) vertexDof[v] = next++;
            assign(e, local, vertexDof[v]);
          } else if (nb == 2) {
            int d = 0;
            while (atLo[d] || atHi[d]) ++d;
            int o1 = (d == 0) ? 1 : 0;
            int o2 = (d == 2) ? 1 : 2;
            auto cornerAt = [&](int dv) {
              std::array<int, 3> l{};
              l[d] = dv;
              l[o1] = atHi[o1] ? 1 : 0;
              l[o2] = atHi[o2] ? 1 : 0;
              return corners[l[0] + 2 * l[1] + 4 * l[2]];
            };
            int vs = cornerAt(0), ve = cornerAt(1);
            auto key = std::minmax(vs, ve);
            auto it = edges.find(key);
            if (it == edges.end()) {
              it = edges.emplace(key, EdgeRec{next, ord[d] - 1}).first;
              next += ord[d] - 1;
            } else if (it->second.count != ord[d] - 1) {
              throw InconsistentOrientation(
                  "build_dof_map: edge shared between elements with "
                  "different per-direction orders");
            }
            int pos = idx[d] - 1;                       // from vs
            if (vs > ve) pos = ord[d] - 2 - pos;        // canonical from min id
            assign(e, local, it->second.firstDof + pos);
          } else if (nb == 1) {
            int fixed = 0;
            while (!(atLo[fixed] || atHi[fixed])) ++fixed;
            int side = 2 * fixed + (atHi[fixed] ? 1 : 0);
            auto axes = face_axes(side);
            auto locCorners = face_corners(side);
            std::array<int, 4> g;
            for (int t = 0; t < 4; ++t) g[t] = corners[locCorners[t]];
            auto key = sorted_quad(g);
            int m1 = ord[axes[0]], m2 = ord[axes[1]];
            // cyclic lattice positions of the quad corners
            const std::array<std::array<int, 2>, 4> L{
                {{0, 0}, {m1, 0}, {m1, m2}, {0, m2}}};
            QuadFrame fr = quad_frame(g);
            int nextPos = (fr.k + fr.dir) % 4;
            int prevPos = (fr.k + 4 - fr.dir) % 4;
            std::array<int, 2> U{L[nextPos][0] - L[fr.k][0],
                                 L[nextPos][1] - L[fr.k][1]};
            std::array<int, 2> V{L[prevPos][0] - L[fr.k][0],
                                 L[prevPos][1] - L[fr.k][1]};
            int mU = std::abs(U[0]) + std::abs(U[1]);
            int mV = std::abs(V[0]) + std::abs(V[1]);
            std::array<int, 4> canon;
            for (int t = 0; t < 4; ++t)
              canon[t] = g[(fr.k + fr.dir * t) % 4];
            auto it = faces.find(key);
            if (it == faces.end()) {
              it = faces
                       .emplace(key, FaceRec{next, mU, mV, canon})
                       .first;
              next += (mU - 1) * (mV - 1);
            } else {
              if (it->second.canon != canon)
                throw InconsistentOrientation(
                    "build_dof_map: face canonicalization disagrees "
                    "between elements");
              if (it->second.mU != mU || it->second.mV != mV)
                throw InconsistentOrientation(
                    "build_dof_map: face shared between elements with "
                    "incompatible per-direction orders");
            }
            // face-local lattice point relative to the canonical frame
            std::array<int, 2> p{idx[axes[0]] - L[fr.k][0],
                                 idx[axes[1]] - L[fr.k][1]};
            int ju = (U[0] != 0) ? p[0] * (U[0] > 0 ? 1 : -1)
                                 : p[1] * (U[1] > 0 ? 1 : -1);
            int jv = (V[0] != 0) ? p[0] * (V[0] > 0 ? 1 : -1)
                                 : p[1] * (V[1] > 0 ? 1 : -1);
            assign(e, local,
                   it->second.firstDof + (ju - 1) + (mU - 1) * (jv - 1));
          } else {
            // interior block allocated on first interior point
            if (dm.elemDofs[e][local] < 0) {
              int na = qa - 1, nbi = qb - 1, nc = qc - 1;
              int first = next;
              next += na * nbi * nc;
              for (int kk = 1; kk < qc; ++kk)
                for (int jj = 1; jj < qb; ++jj)
                  for (int ii = 1; ii < qa; ++ii) {
                    int loc = ii + (qa + 1) * (jj + (qb + 1) * kk);
                    int dof = first + (ii - 1) + na * ((jj - 1) + nbi * (kk - 1));
                    assign(e, loc, dof);
                  }
            }
          }
        }
  }
  dm.nDofs = next;
  return dm;
}

FunctionSpace::FunctionSpace(const HexMesh& m, const std::array<int, 3>& ord)
    : mesh(&m), orders(ord), dofs(build_dof_map(m.elemCorners, ord)),
      basis(ord) {}

Vec3 FunctionSpace::dof_ref(int dof) const {
  auto [e, local] = dofs.owner[dof];
  (void)e;
  return basis.node(local);
}

namespace {

// geometry interpolation of a per-element Vec3 field at a reference point
Vec3 interp_elem_field(const HexMesh& mesh, int elem, const Vec3& r,
                       const std::function<Vec3(int local)>& value) {
  TensorBasis geom({mesh.qGeom, mesh.qGeom, mesh.qGeom});
  TensorBasis::Values v;
  geom.eval(r, v, false);
  Vec3 x = Vec3::Zero();
  for (int a = 0; a < geom.size(); ++a) x += v.n(a) * value(a);
  return x;
}

}  // namespace

Vec3 FunctionSpace::dof_position(int dof) const {
  auto [e, local] = dofs.owner[dof];
  Vec3 r = basis.node(local);
  return interp_elem_field(*mesh, e, r, [&](int a) {
    return mesh->nodeCoords[mesh->elemNodes[e][a]];
  });
}

Vec3 FunctionSpace::dof_param(int dof) const {
  auto [e, local] = dofs.owner[dof];
  Vec3 r = basis.node(local);
  return interp_elem_field(*mesh, e, r,
                           [&](int a) { return mesh->elemParams[e][a]; });
}

std::vector<std::pair<int, int>> FunctionSpace::dofs_on_face(int elem,
                                                             int side) const {
  std::vector<std::pair<int, int>> out;
  int fixed = face_axis(side);
  int want = face_at_upper(side) ? orders[fixed] : 0;
  for (int local = 0; local < basis.size(); ++local) {
    auto l = basis.lattice(local);
    if (l[fixed] == want)
      out.emplace_back(local, dofs.elemDofs[elem][local]);
  }
  return out;
}

}  // namespace lsflow
