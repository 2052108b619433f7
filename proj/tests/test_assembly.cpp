#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsflow/assembly.hpp"
#include "lsflow/benchmarks.hpp"
#include "lsflow/errors.hpp"

#include <cmath>
#include <optional>
#include <random>

using namespace lsflow;

namespace {

bool is_symmetric(const SpMat& M, double tol) {
  SpMat diff = SpMat(M.transpose()) - M;
  double base = M.norm();
  return diff.norm() <= tol * (base > 0 ? base : 1.0);
}

bool is_psd_sampled(const SpMat& M, std::mt19937& rng, int trials) {
  std::normal_distribution<double> N(0.0, 1.0);
  double scale = M.norm() + 1.0;
  for (int t = 0; t < trials; ++t) {
    VecX x(M.cols());
    for (int i = 0; i < x.size(); ++i) x[i] = N(rng);
    if (x.dot(M * x) < -1e-10 * scale * x.squaredNorm()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("viscous, penalty and mass blocks are symmetric positive") {
  Case cs = make_slab_case({{2, 2, 2}});
  SaddleBlocks b = assemble_stokes(cs.problem);
  CHECK(b.nu == 125);
  CHECK(b.np == 27);

  std::mt19937 rng(3);
  CHECK(is_symmetric(b.D, 1e-12));
  CHECK(is_symmetric(b.G, 1e-12));
  CHECK(is_psd_sampled(b.D, rng, 25));
  CHECK(is_psd_sampled(b.G, rng, 25));

  FlowProblem withMass = cs.problem;
  withMass.rho = 1.0;
  AssemblyRequest massOnly;
  massOnly.wantMass = true;
  massOnly.wantDiffusion = false;
  massOnly.wantDivergence = false;
  massOnly.wantForcing = false;
  SpMat T1 = assemble_system(withMass, massOnly).T;
  CHECK(is_symmetric(T1, 1e-12));
  CHECK(is_psd_sampled(T1, rng, 25));
  CHECK(T1.norm() > 0.0);

  withMass.rho = 2.0;
  SpMat T2 = assemble_system(withMass, massOnly).T;
  CHECK((SpMat(T2 - 2.0 * T1)).norm() <= 1e-12 * T2.norm());
}

TEST_CASE("transport blocks scale linearly with density") {
  Case cs = make_slab_case({{2, 2, 2}});
  FlowProblem pb = cs.problem;
  pb.includeAdvection = true;
  pb.rho = 1.0;
  VecX wind = interpolate_velocity(*pb.velocity, [](const Vec3& x) {
    return Vec3(1.0 + 0.2 * x[1], 0.5 * x[0], 0.0);
  });
  AssemblyRequest req;
  req.wantDiffusion = false;
  req.wantDivergence = false;
  req.wantForcing = false;
  req.wantTransport = true;
  req.uPrev = &wind;
  SpMat A1 = assemble_system(pb, req).A;
  CHECK(A1.norm() > 0.0);
  pb.rho = 2.0;
  SpMat A2 = assemble_system(pb, req).A;
  CHECK((SpMat(A2 - 2.0 * A1)).norm() <= 1e-12 * A2.norm());
}

TEST_CASE("continuity rows integrate the surface divergence exactly") {
  Case cs = make_slab_case({{2, 2, 2}});
  SaddleBlocks b = assemble_stokes(cs.problem);

  // u = (x, y, 0) has surface divergence 2 on every flat sheet
  VecX u = interpolate_velocity(*cs.problem.velocity, [](const Vec3& x) {
    return Vec3(x[0], x[1], 0.0);
  });
  VecX div = b.C * u;
  VecX want = 2.0 * b.weightedMeasure;
  CHECK((div - want).norm() <= 1e-11 * want.norm());

  // the weighted measure itself integrates the partition of unity
  CHECK(b.weightedMeasure.sum() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("the automatic penalty strength is proportional to its prefactor") {
  Case c1 = make_slab_case({{2, 2, 2}});
  SaddleBlocks b1 = assemble_stokes(c1.problem);
  FlowProblem scaled = c1.problem;
  scaled.penalty.prefactor = 1e2;  // default is 1e3
  SaddleBlocks b2 = assemble_stokes(scaled);
  CHECK((SpMat(b1.G - 10.0 * b2.G)).norm() <= 1e-12 * b1.G.norm());
}

TEST_CASE("stabilization parameters match their closed forms") {
  CHECK(stabilization_tau(Stabilization::none, 1.0, 0.1, 0.1, 0.0) == 0.0);
  CHECK(stabilization_tau(Stabilization::brezzi_pitkaranta, 3.0, 0.37, 0.1,
                          0.0) == doctest::Approx(0.37));

  // stationary, quiescent: the viscous term alone
  CHECK(stabilization_tau(Stabilization::pspg, 0.0, 0.1, 0.1, 0.0) ==
        doctest::Approx(0.025).epsilon(1e-14));
  CHECK(stabilization_tau(Stabilization::pspg, 0.0, 0.1, 0.01, 0.0) ==
        doctest::Approx(0.25).epsilon(1e-14));
  // advective term alone
  CHECK(stabilization_tau(Stabilization::pspg, 2.0, 0.1, 0.0, 0.0) ==
        doctest::Approx(0.025).epsilon(1e-14));
  // rate and viscous terms combined
  CHECK(stabilization_tau(Stabilization::pspg, 0.0, 0.1, 0.1, 0.1) ==
        doctest::Approx(1.0 / std::sqrt(2000.0)).epsilon(1e-14));
}

TEST_CASE("gradient-jump pressure stabilization kills only constants") {
  Case cs = make_cavity_case({4, 2});
  FlowProblem pb = cs.problem;
  pb.stab = Stabilization::brezzi_pitkaranta;
  SaddleBlocks b = assemble_stokes(pb);
  REQUIRE(b.Spp.nonZeros() > 0);
  CHECK(is_symmetric(b.Spp, 1e-12));
  std::mt19937 rng(5);
  CHECK(is_psd_sampled(b.Spp, rng, 25));
  VecX ones = VecX::Ones(b.np);
  CHECK((b.Spp * ones).norm() <= 1e-10 * b.Spp.norm());
}

TEST_CASE("residual stabilization adds rate coupling only when stepping") {
  Case cs = make_cavity_case({4, 2});
  AssemblyRequest stationary;
  SaddleBlocks bs = assemble_system(cs.problem, stationary);
  CHECK(bs.Spu.nonZeros() > 0);
  CHECK(bs.Spp.nonZeros() > 0);
  CHECK(bs.SpuMass.nonZeros() == 0);

  AssemblyRequest stepping = stationary;
  stepping.dt = 0.1;
  SaddleBlocks bt = assemble_system(cs.problem, stepping);
  CHECK(bt.SpuMass.nonZeros() > 0);
}

TEST_CASE("in-plane tractions load the matching velocity components") {
  FaceTagger tagger = [](const Vec3& c) -> std::optional<std::string> {
    if (std::abs(c[2]) < 1e-9 || std::abs(c[2] - 0.5) < 1e-9) return "free";
    if (std::abs(c[0] - 1.0) < 1e-9) return "load";
    return "wall";
  };
  HexMesh mesh = build_structured_hex_mesh(Vec3(0, 0, 0), Vec3(1, 1, 0.5),
                                           {2, 2, 1}, 2, tagger);
  LevelSetField phi = LevelSetField::analytic([](const Vec3& x) {
    LevelSetSample s;
    s.value = x[2];
    s.grad = Vec3(0, 0, 1);
    return s;
  });
  FlowProblem pb;
  pb.mesh = &mesh;
  pb.phi = &phi;
  pb.velocity = std::make_shared<FunctionSpace>(mesh, std::array<int, 3>{2, 2, 2});
  pb.pressure = std::make_shared<FunctionSpace>(mesh, std::array<int, 3>{1, 1, 1});
  pb.mu = 1.0;
  pb.rho = 0.0;
  pb.dirichlet.push_back(
      {"wall", [](const Vec3&, const Vec3&, double) { return Vec3::Zero(); }});
  pb.neumann.push_back(
      {"load", [](const Vec3&, const Vec3&, double) { return Vec3(0, 3, 0); }});
  pb.freeTags = {"free"};

  SaddleBlocks b = assemble_stokes(pb);
  double fy = 0.0, fx = 0.0, fz = 0.0;
  for (int d = 0; d < b.nu; ++d) {
    fx += b.fu[3 * d + 0];
    fy += b.fu[3 * d + 1];
    fz += b.fu[3 * d + 2];
  }
  // traction integral over the 1 x 0.5 edge strip with unit co-area weight
  CHECK(fy == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(fx) <= 1e-12);
  CHECK(std::abs(fz) <= 1e-12);
}

TEST_CASE("equal-priority conflicting wall data is rejected, priority wins") {
  FaceTagger tagger = [](const Vec3& c) -> std::optional<std::string> {
    if (std::abs(c[2]) < 1e-9 || std::abs(c[2] - 1.0) < 1e-9) return "free";
    if (std::abs(c[0]) < 1e-9) return "a";
    return "b";
  };
  HexMesh mesh = build_structured_hex_mesh(Vec3(0, 0, 0), Vec3(1, 1, 1),
                                           {1, 1, 1}, 2, tagger);
  LevelSetField phi = LevelSetField::analytic([](const Vec3& x) {
    LevelSetSample s;
    s.value = x[2];
    s.grad = Vec3(0, 0, 1);
    return s;
  });
  FlowProblem pb;
  pb.mesh = &mesh;
  pb.phi = &phi;
  pb.velocity = std::make_shared<FunctionSpace>(mesh, std::array<int, 3>{2, 2, 2});
  pb.pressure = std::make_shared<FunctionSpace>(mesh, std::array<int, 3>{1, 1, 1});
  pb.dirichlet.push_back(
      {"a", [](const Vec3&, const Vec3&, double) { return Vec3(1, 0, 0); }, 0});
  pb.dirichlet.push_back(
      {"b", [](const Vec3&, const Vec3&, double) { return Vec3(2, 0, 0); }, 0});
  CHECK_THROWS_AS(collect_dirichlet(pb, 0.0), ConflictingPrescriptions);

  pb.dirichlet[1].priority = 1;
  DirichletData bc = collect_dirichlet(pb, 0.0);
  const FunctionSpace& vs = *pb.velocity;
  for (std::size_t i = 0; i < bc.dofs.size(); ++i) {
    Vec3 x = vs.dof_position(bc.dofs[i]);
    if (std::abs(x[0]) < 1e-9 && std::abs(x[1]) < 1e-9)
      CHECK((bc.values[i] - Vec3(2, 0, 0)).norm() <= 1e-14);
  }
}

TEST_CASE("ill-posed problem setups are named explicitly") {
  Case slab = make_slab_case({});
  CHECK_NOTHROW(validate_problem(slab.problem));

  FlowProblem unconstrained = slab.problem;
  unconstrained.constraint = PressureConstraint::none;
  CHECK_THROWS_AS(validate_problem(unconstrained), NoPressureConstraint);

  FlowProblem badTag = slab.problem;
  badTag.dirichlet.push_back(
      {"spout", [](const Vec3&, const Vec3&, double) { return Vec3::Zero(); }});
  CHECK_THROWS_AS(validate_problem(badTag), ValidationError);

  Case cavity = make_cavity_case({4, 2});
  FlowProblem unstabilized = cavity.problem;
  unstabilized.stab = Stabilization::none;
  CHECK_THROWS_AS(validate_problem(unstabilized), MissingStabilization);

  Case open = make_axisymmetric_case({});
  CHECK_NOTHROW(validate_problem(open.problem));
  FlowProblem doubly = open.problem;
  doubly.constraint = PressureConstraint::zeroWeightedMean;
  CHECK_THROWS_AS(validate_problem(doubly), RedundantConstraint);
}

TEST_CASE("composed systems carry identity rows for prescribed dofs") {
  Case cs = make_slab_case({{1, 1, 1}});
  const FlowProblem& pb = cs.problem;
  SaddleBlocks b = assemble_stokes(pb);
  DirichletData bc = collect_dirichlet(pb, 0.0);
  REQUIRE(!bc.dofs.empty());
  REQUIRE(!bc.pressureDofs.empty());

  LinearSystem sys = compose_system(pb, b, 0.0, 1.0, 0.0, b.fu,
                                    VecX::Zero(b.np), bc);
  CHECK(sys.nu3 == 3 * b.nu);
  CHECK(sys.np == b.np);
  CHECK(sys.n == 3 * b.nu + b.np);
  CHECK(!sys.hasMultiplier);

  MatX K(sys.K);
  for (std::size_t i = 0; i < bc.dofs.size(); ++i)
    for (int c = 0; c < 3; ++c) {
      int row = 3 * bc.dofs[i] + c;
      CHECK(K(row, row) == doctest::Approx(1.0));
      CHECK(K.row(row).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sys.rhs[row] == doctest::Approx(bc.values[i][c]).epsilon(1e-13));
    }
  for (int pd : bc.pressureDofs) {
    int row = sys.nu3 + pd;
    CHECK(K(row, row) == doctest::Approx(1.0));
    CHECK(K.row(row).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.rhs[row] == 0.0);
  }

  // the velocity-velocity block stays symmetric after elimination
  MatX uu = K.topLeftCorner(sys.nu3, sys.nu3);
  CHECK((uu - uu.transpose()).norm() <= 1e-11 * uu.norm());
}

TEST_CASE("a zero weighted-mean constraint appends one symmetric row") {
  Case cs = make_torus_case({{6, 4, 1}});
  SaddleBlocks b = assemble_stokes(cs.problem);
  DirichletData bc = collect_dirichlet(cs.problem, 0.0);
  CHECK(bc.dofs.empty());
  LinearSystem sys = compose_system(cs.problem, b, 0.0, 1.0, 0.0, b.fu,
                                    VecX::Zero(b.np), bc);
  CHECK(sys.hasMultiplier);
  CHECK(sys.n == 3 * b.nu + b.np + 1);
  MatX K(sys.K);
  for (int d = 0; d < b.np; ++d) {
    CHECK(K(sys.nu3 + d, sys.n - 1) ==
          doctest::Approx(b.weightedMeasure[d]).epsilon(1e-13));
    CHECK(K(sys.n - 1, sys.nu3 + d) ==
          doctest::Approx(b.weightedMeasure[d]).epsilon(1e-13));
  }
}
