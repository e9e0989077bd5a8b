// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "tangent_llg/config.hpp"
#include "tangent_llg/integrators.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tangent_llg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Relaxation parameters of the cuboid example.
constexpr double kLex = 10.0, kLdm = 20.0, kAlpha = 0.08, kStep = 0.0221;
const BoxSpec kCuboid{{4, 4, 2}, {80.0, 80.0, 10.0}};

MaterialParams cuboid_material(double ldm = kLdm) {
  MaterialParams p;
  p.lex = kLex;
  p.ldm = ldm;
  p.alpha = kAlpha;
  p.dmi_form = DmiForm::bulk;
  return p;
}

SimConfig cuboid_config(SchemeKind kind, const BoxSpec& box, double T) {
  SimConfig cfg;
  cfg.scheme.kind = kind;
  cfg.k = kStep;
  cfg.T = T;
  cfg.material = cuboid_material();
  cfg.mesh.kind = MeshKind::type1;
  cfg.mesh.box = box;
  const double q = 0.01;
  cfg.initial.value = Vec3(q, -q, std::sqrt(1.0 - 2.0 * q * q));
  cfg.output_every = 1;
  cfg.solver_tol = 1e-12;
  return cfg;
}

// Smooth unit field with nonzero exchange and DMI energy.
NodalVectorField smooth_state(const Mesh& mesh) {
  return interpolate_nodal(mesh, [](const Vec3& x) {
    return Vec3(0.3 * std::sin(0.05 * x[0] + 0.3),
                0.4 * std::cos(0.07 * x[1] + 0.1 * x[2]),
                1.0 + 0.2 * std::sin(0.04 * (x[0] + x[1])))
        .normalized();
  });
}

Outcome pf_nodewise() {
  const Mesh mesh = generate_type1(kCuboid);
  const FormSet forms = assemble_static(mesh, DmiForm::bulk);
  const MaterialParams p = cuboid_material();
  const StepContext ctx{mesh, forms, p, {1e-12, 0, 60}};
  const SimConfig cfg = cuboid_config(SchemeKind::pf_tps1, kCuboid, 0.0);
  double worst = 0.0;
  for (const NodalVectorField& m0 :
       {initial_magnetization(cfg, mesh), smooth_state(mesh)}) {
    IntegratorState s;
    s.m = m0;
    Eigen::VectorXd accumulated = Eigen::VectorXd::Zero(mesh.vertex_count());
    for (int i = 0; i < 200; ++i) {
      const StepResult r = pftps1_step(ctx, s, kStep, 1.0);
      for (Index z = 0; z < mesh.vertex_count(); ++z) {
        accumulated[z] += kStep * kStep * r.v.at(z).squaredNorm();
        const double lhs = r.next.m.at(z).squaredNorm();
        const double rhs = m0.at(z).squaredNorm() + accumulated[z];
        worst = std::max(worst, std::abs(lhs - rhs) / lhs);
      }
      s = r.next;
    }
  }
  return {worst <= 1e-10,
          fmt("max relative nodewise violation %.3e (limit 1e-10), 200 steps, "
              "uniform and smooth m0", worst)};
}

Outcome pf_energy_identity() {
  const SimConfig cfg = cuboid_config(SchemeKind::pf_tps1, kCuboid, 200 * kStep);
  const Mesh mesh = generate_type1(kCuboid);
  const RunResult r = run(cfg, mesh, smooth_state(mesh));
  const double E0 = r.series.initial_energy.total();
  double worst = 0.0;
  for (double x : energy_law_residual(r.series)) worst = std::max(worst, std::abs(x));

  const RunResult u = run(cfg, mesh);
  double uniform = 0.0;
  for (double x : energy_law_residual(u.series)) uniform = std::max(uniform, std::abs(x));

  return {worst <= 1e-6 * std::abs(E0),
          fmt("max |identity residual| %.3e vs 1e-6|E(m0)| = %.3e (smooth m0)",
              worst, 1e-6 * std::abs(E0)) +
              fmt("; uniform m0 has E(m0)=%.1e, residual %.3e",
                  u.series.initial_energy.total(), uniform)};
}

Outcome pf_constraint_rate() {
  const BoxSpec& box = kCuboid;
  const Mesh mesh = generate_type1(box);
  std::vector<double> lk, lv;
  std::string values;
  for (double k : {kStep, kStep / 2, kStep / 4}) {
    SimConfig cfg = cuboid_config(SchemeKind::pf_tps1, box, 50.0);
    cfg.k = k;
    cfg.output_every = 1000000;
    cfg.solver_tol = 1e-10;
    const RunResult r = run(cfg, mesh);
    const double v = r.series.samples.back().constraint_violation_L1;
    lk.push_back(std::log(k));
    lv.push_back(std::log(v));
    values += fmt(" %.4e", v);
  }
  const double mk = (lk[0] + lk[1] + lk[2]) / 3, mv = (lv[0] + lv[1] + lv[2]) / 3;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (lk[i] - mk) * (lv[i] - mv);
    den += (lk[i] - mk) * (lk[i] - mk);
  }
  const double slope = num / den;
  return {std::abs(slope - 1.0) <= 0.15,
          fmt("log-log slope %.4f (target 1 +- 0.15); L1 violations at T=50:",
              slope) + values};
}

Outcome angle_condition() {
  std::string failures;
  int checked = 0;
  for (int nx : {1, 2, 3}) {
    for (int nz : {1, 2}) {
      for (const Vec3& L : {Vec3(1, 1, 1), Vec3(20, 20, 5), Vec3(80, 80, 10),
                            Vec3(3, 1, 2)}) {
        const BoxSpec box{{nx, nx + 1, nz}, L};
        ++checked;
        if (!analyze_mesh(generate_type1(box)).angle_condition_holds) {
          failures += " type1 fails";
        }
        if (analyze_mesh(generate_type2(box)).angle_condition_holds) {
          failures += " type2 holds";
        }
      }
    }
  }
  return {failures.empty(),
          fmt("%.0f boxes: type I holds everywhere, type II fails everywhere",
              checked) + failures};
}

Outcome projection_energy() {
  const Mesh mesh = generate_type1({{3, 3, 2}, {30.0, 30.0, 10.0}});
  const FormSet forms = assemble_static(mesh, DmiForm::none);
  std::mt19937 rng(2024);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> stretch(1.0, 4.0);
  int held = 0;
  double worst = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    NodalVectorField w(mesh.vertex_count());
    for (Index z = 0; z < mesh.vertex_count(); ++z) {
      w.set(z, stretch(rng) * Vec3(g(rng), g(rng), g(rng)).normalized());
    }
    const NodalVectorField p = nodal_projection(w);
    const double before = forms.vector_stiffness.bilinear(w.values(), w.values());
    const double after = forms.vector_stiffness.bilinear(p.values(), p.values());
    worst = std::max(worst, after / before);
    if (after <= before * (1.0 + 1e-12)) ++held;
  }
  return {held == 100,
          fmt("%.0f/100 trials hold; max ratio |grad P w|^2/|grad w|^2 = %.4f",
              held, worst)};
}

Outcome monotone_without_dmi() {
  SimConfig cfg = cuboid_config(SchemeKind::tps1, kCuboid, 100 * kStep);
  cfg.material.ldm = 0.0;
  const Mesh mesh = generate_type1(kCuboid);
  const RunResult r = run(cfg, mesh, smooth_state(mesh));
  double previous = r.series.initial_energy.total();
  double worst = -1e300;
  for (const auto& s : r.series.steps) {
    worst = std::max(worst, s.energy.total() - previous);
    previous = s.energy.total();
  }
  return {r.series.steps.size() == 100 && worst <= 1e-10,
          fmt("max E(m^{i+1}) - E(m^i) = %.3e over %.0f steps (limit 1e-10)",
              worst, static_cast<double>(r.series.steps.size()))};
}

Outcome stability_monitor() {
  const BoxSpec box{{8, 8, 2}, {80.0, 80.0, 10.0}};
  std::string detail;
  bool pass = true;
  for (MeshKind kind : {MeshKind::type1, MeshKind::type2}) {
    SimConfig cfg = cuboid_config(SchemeKind::tps1, box, 50.0);
    cfg.mesh.kind = kind;
    cfg.output_every = 1000000;
    cfg.solver_tol = 1e-10;
    const RunResult r = run(cfg, make_mesh(cfg.mesh));
    Index ok = 0;
    for (const auto& s : r.series.steps) ok += s.stability_ok ? 1 : 0;
    const bool all = ok == r.series.steps.size();
    if (kind == MeshKind::type1) {
      pass = all;
      detail += fmt("type I: %.0f/%.0f steps hold (asserted)", ok,
                    static_cast<double>(r.series.steps.size()));
    } else {
      detail += fmt("; type II: %.0f/%.0f steps hold (reported)", ok,
                    static_cast<double>(r.series.steps.size()));
    }
  }
  return {pass, detail};
}

Outcome cross_integrator() {
  const BoxSpec box{{8, 8, 2}, {80.0, 80.0, 10.0}};
  const Mesh mesh = generate_type1(box);
  std::vector<std::vector<Sample>> traces;
  for (SchemeKind kind : {SchemeKind::tps1, SchemeKind::tps2}) {
    SimConfig cfg = cuboid_config(kind, box, 50.0);
    cfg.solver_tol = 1e-10;
    traces.push_back(run(cfg, mesh).series.samples);
  }
  double worst = 0.0;
  for (Index i = 0; i < traces[0].size(); ++i) {
    worst = std::max(worst, std::abs(traces[0][i].avg_m[2] - traces[1][i].avg_m[2]));
  }
  return {traces[0].size() == traces[1].size() && worst <= 0.05,
          fmt("sup |<m3>_TPS1 - <m3>_TPS2| on [0,50] = %.4f (limit 0.05); "
              "final <m3> = %.4f", worst, traces[0].back().avg_m[2])};
}

Outcome frame_vs_kkt() {
  const Mesh mesh = generate_type1({{1, 1, 1}, {10.0, 10.0, 10.0}});
  const FormSet forms = assemble_static(mesh, DmiForm::bulk);
  const MaterialParams p = cuboid_material();
  const StepContext ctx{mesh, forms, p, {1e-14, 0, 60}};
  IntegratorState s;
  s.m = smooth_state(mesh);
  const Index n = mesh.vertex_count();
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const StepSystem sys = assemble_step_system(ctx, {}, s, kStep, kStep);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    K.topLeftCorner(3 * n, 3 * n) = sys.matrix.to_dense();
    for (Index z = 0; z < n; ++z) {
      K.block<1, 3>(3 * n + z, 3 * z) = s.m.at(z).transpose();
      K.block<3, 1>(3 * z, 3 * n + z) = s.m.at(z);
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(4 * n);
    rhs.head(3 * n) = sys.rhs;
    const Eigen::VectorXd oracle = K.fullPivLu().solve(rhs).head(3 * n);
    const StepResult r = tps1_step(ctx, s, kStep, 1.0);
    worst = std::max(worst, (r.v.values() - oracle).norm() / oracle.norm());
    s = r.next;
  }
  return {worst <= 1e-8,
          fmt("max relative difference %.3e over 10 steps on 6 cells (limit 1e-8)",
              worst)};
}

Outcome helix_convergence() {
  const double lex = 10.0, ldm = 20.0, q = ldm / (2.0 * lex * lex);
  const Vec3 L(20.0, 20.0, 2.0 * 3.14159265358979323846 / q);
  MaterialParams p = cuboid_material();
  std::vector<double> errors;
  std::string values;
  for (int n : {4, 8, 16}) {
    const Mesh mesh = generate_type1({{n / 2, n / 2, 2 * n}, L});
    const FormSet forms = assemble_static(mesh, DmiForm::bulk);
    const auto m = interpolate_nodal(mesh, [q](const Vec3& x) {
      return Vec3(std::cos(q * x[2]), std::sin(q * x[2]), 0.0);
    });
    const double exact = -mesh.volume() * ldm * ldm / (8.0 * lex * lex);
    errors.push_back(std::abs(energy(m, forms, p).total() - exact));
    values += fmt(" %.4e", errors.back() / std::abs(exact));
  }
  const double r1 = std::log2(errors[0] / errors[1]);
  const double r2 = std::log2(errors[1] / errors[2]);
  return {std::abs(r1 - 2.0) <= 0.3 && std::abs(r2 - 2.0) <= 0.3,
          fmt("observed orders %.3f, %.3f (target 2 +- 0.3); relative errors:",
              r1, r2) + values};
}

}  // namespace

// --expect-fail N[,N...] marks criteria known to fail. They still print FAIL;
// the exit status is 0 only when the failing set matches exactly.
int main(int argc, char** argv) {
  std::set<int> expected;
  for (int a = 1; a + 1 < argc; ++a) {
    if (std::string(argv[a]) != "--expect-fail") continue;
    std::stringstream list(argv[++a]);
    std::string item;
    while (std::getline(list, item, ',')) expected.insert(std::stoi(item));
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"PF-TPS1 nodewise norm recursion", pf_nodewise},
      {"PF-TPS1 discrete energy identity", pf_energy_identity},
      {"PF-TPS1 O(k) constraint violation", pf_constraint_rate},
      {"Angle condition by mesh type", angle_condition},
      {"Nodal projection energy non-increase", projection_energy},
      {"Monotone energy without DMI", monotone_without_dmi},
      {"Stability inequality monitoring", stability_monitor},
      {"TPS1 vs TPS2 agreement of <m3>", cross_integrator},
      {"Frame reduction vs KKT oracle", frame_vs_kkt},
      {"Helix energy convergence order", helix_convergence},
  };
  int failed = 0;
  int index = 0;
  std::set<int> failing;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (!out.pass) {
      ++failed;
      failing.insert(index);
    }
    std::printf("[%s] %2d %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", index,
                name, out.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
  if (!expected.empty()) {
    std::printf("expected failures: %zu, matched: %s\n", expected.size(),
                failing == expected ? "yes" : "no");
    return failing == expected ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
