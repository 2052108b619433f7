#include "lsflow/runner.hpp"

#include "lsflow/csv_io.hpp"
#include "lsflow/errors.hpp"
#include "lsflow/verify.hpp"
#include "lsflow/vtk_io.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace lsflow {

namespace {

double mean_element_size(const HexMesh& mesh) {
  return std::accumulate(mesh.hEl.begin(), mesh.hEl.end(), 0.0) /
         std::max<std::size_t>(1, mesh.hEl.size());
}

void apply_common_overrides(Case& cs, const RunConfig& cfg) {
  if (!cfg.stabilization.empty()) {
    if (cfg.stabilization == "none")
      cs.problem.stab = Stabilization::none;
    else if (cfg.stabilization == "pspg")
      cs.problem.stab = Stabilization::pspg;
    else if (cfg.stabilization == "bp")
      cs.problem.stab = Stabilization::brezzi_pitkaranta;
    else
      throw ValidationError("stabilization must be none, pspg, or bp");
  }
  cs.problem.penalty.prefactor = cfg.penaltyPrefactor;
  if (cfg.quadDegree > 0) cs.problem.quadDegree = cfg.quadDegree;
}

}  // namespace

Case build_case_at(const RunConfig& cfg, int r) {
  Case cs;
  if (cfg.caseName == "axisym") {
    AxisymOptions o;
    o.refine = r;
    if (cfg.orderU > 0) o.orderU = cfg.orderU;
    o.orderGeom = cfg.orderGeom;
    if (cfg.mu >= 0) o.mu = cfg.mu;
    if (cfg.rho >= 0) o.rho = cfg.rho;
    cs = make_axisymmetric_case(o);
  } else if (cfg.caseName == "obstacle") {
    ObstacleOptions o;
    o.mapping = cfg.mapping;
    o.refine = r;
    if (cfg.layers > 0) o.layers = cfg.layers;
    if (cfg.orderU > 0) o.orderU = cfg.orderU;
    if (cfg.orderGeom > 0) o.orderGeom = cfg.orderGeom;
    if (cfg.mu >= 0) o.mu = cfg.mu;
    if (cfg.rho >= 0) o.rho = cfg.rho;
    cs = make_obstacle_case(o);
  } else if (cfg.caseName == "cavity") {
    CavityOptions o;
    o.plan = 4 * r;
    if (cfg.layers > 0) o.layers = cfg.layers;
    if (cfg.orderU > 0) o.order = cfg.orderU;
    o.orderGeom = cfg.orderGeom;
    if (cfg.mu >= 0) o.mu = cfg.mu;
    if (cfg.rho >= 0) o.rho = cfg.rho;
    cs = make_cavity_case(o);
  } else if (cfg.caseName == "torus") {
    TorusOptions o;
    o.div = {cfg.torusDiv[0] * r, cfg.torusDiv[1] * r,
             std::max(1, cfg.torusDiv[2] * r)};
    if (cfg.orderU > 0) o.orderU = cfg.orderU;
    if (cfg.orderGeom > 0) o.orderGeom = cfg.orderGeom;
    if (cfg.mu >= 0) o.mu = cfg.mu;
    if (cfg.rho >= 0) o.rho = cfg.rho;
    cs = make_torus_case(o);
  } else if (cfg.caseName == "slab") {
    SlabOptions o;
    o.div = {4 * r, 4 * r, 2 * r};
    if (cfg.orderU > 0) o.orderU = cfg.orderU;
    if (cfg.orderGeom > 0) o.orderGeom = cfg.orderGeom;
    if (cfg.mu >= 0) o.mu = cfg.mu;
    if (cfg.rho >= 0) o.rho = cfg.rho;
    cs = make_slab_case(o);
  } else {
    throw ValidationError("unknown case '" + cfg.caseName + "'");
  }
  apply_common_overrides(cs, cfg);
  return cs;
}

Case build_case(const RunConfig& cfg) { return build_case_at(cfg, cfg.refine); }

SolverKind solver_kind(const RunConfig& cfg) {
  return cfg.solver == "iterative" ? SolverKind::iterative
                                   : SolverKind::direct;
}

PicardOptions picard_options(const RunConfig& cfg) {
  PicardOptions po;
  po.tol = cfg.picardTol;
  po.maxIter = cfg.picardMaxIter;
  po.relax = cfg.picardRelax;
  po.solver = solver_kind(cfg);
  return po;
}

int cmd_solve(const RunConfig& cfg) {
  Case cs = build_case(cfg);
  validate_problem(cs.problem);
  std::printf("case %s: %d elements, %d velocity dofs, %d pressure dofs\n",
              cs.name.c_str(), cs.problem.mesh->n_elems(),
              cs.problem.velocity->n_dofs(), cs.problem.pressure->n_dofs());

  PicardReport rep;
  FlowState st = solve_stationary(cs.problem, picard_options(cfg), &rep);
  std::printf("solved in %d linear solve(s)\n", rep.iterations);
  for (std::size_t i = 0; i < rep.increments.size(); ++i)
    std::printf("  relinearization %zu: relative update %.3e\n", i + 1,
                rep.increments[i]);

  ResidualNorms rn = residual_norms(cs.problem, st);
  std::printf("interior residuals: momentum %.6e, continuity %.6e\n",
              rn.momentum, rn.continuity);

  CsvTable table;
  table.header = {"h", "solves", "res_momentum", "res_continuity"};
  std::vector<double> row{mean_element_size(*cs.mesh),
                          double(rep.iterations), rn.momentum, rn.continuity};

  if (cs.exactVelocity) {
    double eu = velocity_l2_error(cs.problem, st.u, cs.exactVelocity);
    std::printf("velocity error (weighted L2): %.6e\n", eu);
    table.header.push_back("err_velocity");
    row.push_back(eu);
  }
  if (cs.exactVelocityGradient) {
    double eh = dissipation_functional(cs.problem, st.u);
    double ex = dissipation_functional_exact(cs.problem,
                                             cs.exactVelocityGradient);
    std::printf("dissipation functional: %.9e (reference %.9e)\n", eh, ex);
    table.header.push_back("err_dissipation");
    row.push_back(std::abs(eh - ex));
  }
  for (const PointProbe& probe : cs.pointProbes) {
    auto [elem, ref] = locate_node(*cs.mesh, probe.x, 1e-8 * cs.mesh->diameter);
    double pv = pressure_at(*cs.problem.pressure, st.p, elem, ref);
    std::printf("probe %-12s p = % .9e\n", probe.name.c_str(), pv);
    table.header.push_back(probe.name);
    row.push_back(pv);
  }
  table.rows.push_back(row);
  if (!cfg.csv.empty()) write_csv(cfg.csv, table);
  if (!cfg.vtk.empty()) write_vtk_solution(cfg.vtk, cs.problem, st, cs.name);
  return 0;
}

int cmd_converge(const RunConfig& cfg) {
  CsvTable table;
  table.header = {"resolution", "h",          "err_velocity", "err_dissipation",
                  "res_momentum", "res_continuity"};
  std::vector<double> hs, eus, ees, ems, ecs;

  for (int r : cfg.refines) {
    Case cs = build_case_at(cfg, r);
    validate_problem(cs.problem);
    FlowState st = solve_stationary(cs.problem, picard_options(cfg));
    const double h = mean_element_size(*cs.mesh);
    ResidualNorms rn = residual_norms(cs.problem, st);
    double eu = std::nan(""), ee = std::nan("");
    if (cs.exactVelocity)
      eu = velocity_l2_error(cs.problem, st.u, cs.exactVelocity);
    if (cs.exactVelocityGradient)
      ee = std::abs(dissipation_functional(cs.problem, st.u) -
                    dissipation_functional_exact(cs.problem,
                                                 cs.exactVelocityGradient));
    std::printf(
        "resolution %2d: h %.4e  err_u %.6e  err_diss %.6e  "
        "res_mom %.6e  res_cont %.6e\n",
        r, h, eu, ee, rn.momentum, rn.continuity);
    table.rows.push_back({double(r), h, eu, ee, rn.momentum, rn.continuity});
    hs.push_back(h);
    if (cs.exactVelocity) eus.push_back(eu);
    if (cs.exactVelocityGradient) ees.push_back(ee);
    ems.push_back(rn.momentum);
    ecs.push_back(rn.continuity);
  }

  auto report_rate = [&](const char* name, const std::vector<double>& err) {
    if (err.size() != hs.size() || err.size() < 2) return;
    std::printf("fitted rate %-16s %.3f\n", name, fitted_rate(hs, err));
  };
  report_rate("err_velocity", eus);
  report_rate("err_dissipation", ees);
  report_rate("res_momentum", ems);
  report_rate("res_continuity", ecs);

  if (!cfg.csv.empty()) write_csv(cfg.csv, table);
  return 0;
}

int cmd_march(const RunConfig& cfg) {
  Case cs = build_case(cfg);
  validate_problem(cs.problem);
  std::printf("case %s: %d elements, dt %.4g, horizon %.4g\n",
              cs.name.c_str(), cs.problem.mesh->n_elems(), cfg.dt, cfg.tEnd);

  FlowState st;
  st.t = 0.0;
  st.u = cs.initialVelocity
             ? interpolate_velocity(*cs.problem.velocity, cs.initialVelocity)
             : VecX::Zero(3 * cs.problem.velocity->n_dofs());
  st.p = VecX::Zero(cs.problem.pressure->n_dofs());

  std::vector<double> e0;
  for (const SurfaceProbe& probe : cs.energyProbes)
    e0.push_back(
        kinetic_energy(*cs.problem.velocity, st.u, probe, cs.problem.rho));

  CsvTable table;
  table.header = {"t"};
  for (std::size_t i = 0; i < cs.energyProbes.size(); ++i) {
    table.header.push_back("energy_" + std::to_string(i));
    table.header.push_back("energy_rel_" + std::to_string(i));
  }
  auto record = [&](const FlowState& s) {
    std::vector<double> row{s.t};
    for (std::size_t i = 0; i < cs.energyProbes.size(); ++i) {
      double e = kinetic_energy(*cs.problem.velocity, s.u, cs.energyProbes[i],
                                cs.problem.rho);
      row.push_back(e);
      row.push_back(e0[i] > 0 ? e / e0[i] : 0.0);
    }
    table.rows.push_back(row);
  };
  record(st);

  TimeStepper ts(cs.problem, cfg.dt, picard_options(cfg));
  const int nSteps = int(std::llround(cfg.tEnd / cfg.dt));
  for (int step = 1; step <= nSteps; ++step) {
    st = ts.advance(st);
    if (step % cfg.writeEvery == 0 || step == nSteps) {
      record(st);
      if (!cfg.vtk.empty()) {
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_%06d.vtk", step);
        write_vtk_solution(cfg.vtk + suffix, cs.problem, st, cs.name);
      }
      if (!cs.energyProbes.empty())
        std::printf("t %8.3f  relative energies:", st.t);
      else
        std::printf("t %8.3f", st.t);
      for (std::size_t i = 0; i < cs.energyProbes.size(); ++i)
        std::printf(" %.6f", table.rows.back()[2 + 2 * i]);
      std::printf("\n");
    }
  }

  if (!cfg.csv.empty()) write_csv(cfg.csv, table);
  return 0;
}

}  // namespace lsflow
