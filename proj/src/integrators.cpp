#include "tangent_llg/integrators.hpp"

#include "tangent_llg/io.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace tangent_llg {

SchemeKind parse_scheme_kind(std::string_view name) {
  // Case, '-' and '_' are ignored: "PF-TPS1", "pf_tps1" and "pftps1" agree.
  std::string key;
  for (char ch : name) {
    if (ch != '-' && ch != '_') {
      key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
  }
  if (key == "tps1") return SchemeKind::tps1;
  if (key == "pftps1") return SchemeKind::pf_tps1;
  if (key == "tps2") return SchemeKind::tps2;
  throw InvalidArgument("unknown scheme '" + std::string(name) +
                        "' (expected tps1, pf_tps1 or tps2)");
}

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::pf_tps1:
      return "pf_tps1";
    case SchemeKind::tps2:
      return "tps2";
    case SchemeKind::tps1:
      break;
  }
  return "tps1";
}

namespace {

// Largest k with a positive TPS2 ellipticity coefficient, by bisection.
double tps2_threshold(const MaterialParams& p) {
  const double ldm = p.effective_ldm();
  double lo = 1e-12, hi = 1.0 - 1e-12;
  if (tps2_ellipticity_coefficient(p.alpha, p.lex, ldm, hi) > 0.0) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tps2_ellipticity_coefficient(p.alpha, p.lex, ldm, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::string tps2_refusal(const MaterialParams& p, double k) {
  std::ostringstream os;
  os << "TPS2 time step k = " << k
     << " is above the well-posedness threshold: the ellipticity coefficient "
        "2a^2/(2a + M(k)k) - ldm^2 k/(4 lex^2) is "
     << tps2_ellipticity_coefficient(p.alpha, p.lex, p.effective_ldm(), k)
     << " <= 0; k must be below ~" << tps2_threshold(p);
  return os.str();
}

Eigen::VectorXd step_rhs(const StepContext& ctx, const IntegratorState& state) {
  const MaterialParams& p = ctx.params;
  const Eigen::VectorXd& m = state.m.values();
  Eigen::VectorXd rhs = -(p.lex * p.lex) * (ctx.forms.vector_stiffness * m);
  const double ldm = p.effective_ldm();
  if (ldm != 0.0 && ctx.forms.dmi.nonzeros() > 0) {
    rhs -= 0.5 * ldm * (ctx.forms.dmi_symmetric * m);
  }
  if (p.has_lower_order()) {
    rhs += ctx.forms.vector_mass *
           lower_order_field(state.m, state.t, p).values();
  }
  return rhs;
}

StepResult finish_step(const StepContext& ctx, const SchemeChoice& scheme,
                       const IntegratorState& state, double k,
                       const StepSystem& system) {
  const TangentFrame frame = build_frame(state.m);
  const ReducedSystem reduced = reduce(system.matrix, system.rhs, frame);
  SolveResult sol = solve(reduced.matrix, reduced.rhs, ctx.solver);
  if (!sol.report.converged) {
    std::ostringstream os;
    os << "linear solve did not converge at step " << state.step << " after "
       << sol.report.iterations << " iterations (relative residual "
       << sol.report.relative_residual << ")";
    throw SolverError(os.str());
  }

  StepResult out;
  out.v = expand(sol.x, frame);
  const Eigen::VectorXd& v = out.v.values();
  NodalVectorField w(Eigen::VectorXd(state.m.values() + k * v));
  out.next.step = state.step + 1;
  out.next.t = state.t + k;
  out.next.m = scheme.kind == SchemeKind::pf_tps1 ? w : nodal_projection(w);

  StepRecord& r = out.record;
  r.k = k;
  r.t_end = out.next.t;
  r.v_l2_sq = ctx.forms.vector_mass.bilinear(v, v);
  r.grad_v_sq = ctx.forms.vector_stiffness.bilinear(v, v);
  r.dmi_vv = ctx.forms.dmi.nonzeros() > 0 ? ctx.forms.dmi.bilinear(v, v) : 0.0;
  if (system.weighted_mass.rows() > 0) {
    r.weighted_vv = system.weighted_mass.bilinear(v, v);
  }
  r.grad_pre_sq = ctx.forms.vector_stiffness.bilinear(w.values(), w.values());
  r.grad_post_sq = ctx.forms.vector_stiffness.bilinear(out.next.m.values(),
                                                       out.next.m.values());
  r.stability_ok = std::sqrt(r.grad_post_sq) <=
                   std::sqrt(r.grad_pre_sq) * (1.0 + 1e-12) + 1e-300;
  r.energy = energy(out.next.m, ctx.forms, ctx.params, out.next.t);
  r.solve = sol.report;
  return out;
}

}  // namespace

StepSystem assemble_step_system(const StepContext& ctx,
                                const SchemeChoice& scheme,
                                const IntegratorState& state, double k,
                                double nominal_k) {
  const MaterialParams& p = ctx.params;
  if (!(k > 0.0)) throw InvalidArgument("time step must be positive");
  if (state.m.vertex_count() != ctx.mesh.vertex_count()) {
    throw InvalidArgument("state does not match the mesh");
  }
  const double lex2 = p.lex * p.lex;
  const SparseMatrix cross = assemble_cross(ctx.mesh, state.m);

  StepSystem sys;
  sys.rhs = step_rhs(ctx, state);
  if (scheme.kind != SchemeKind::tps2) {
    sys.matrix = linear_combination({{p.alpha, &ctx.forms.vector_mass},
                                     {1.0, &cross},
                                     {lex2 * scheme.theta * k,
                                      &ctx.forms.vector_stiffness}});
    return sys;
  }

  const double ldm = p.effective_ldm();
  if (!(tps2_ellipticity_coefficient(p.alpha, p.lex, ldm, nominal_k) > 0.0)) {
    throw InvalidArgument(tps2_refusal(p, nominal_k));
  }
  const double M = M_of_k(nominal_k);
  const double rho = scheme.stabilization_on ? rho_of_k(nominal_k) : 0.0;
  std::vector<double> weights = lambda_at_quadrature(state.m, ctx.mesh, p);
  for (double& w : weights) w = cutoff_W(w, M, k, p.alpha);
  sys.weighted_mass = assemble_weighted_mass(ctx.mesh, weights);
  sys.matrix = linear_combination(
      {{1.0, &sys.weighted_mass},
       {1.0, &cross},
       {0.5 * lex2 * k * (1.0 + rho), &ctx.forms.vector_stiffness},
       {0.25 * ldm * k, &ctx.forms.dmi_symmetric}});
  return sys;
}

StepResult tps1_step(const StepContext& ctx, const IntegratorState& state,
                     double k, double theta) {
  const SchemeChoice scheme{SchemeKind::tps1, theta, true};
  return finish_step(ctx, scheme, state, k,
                     assemble_step_system(ctx, scheme, state, k, k));
}

StepResult pftps1_step(const StepContext& ctx, const IntegratorState& state,
                       double k, double theta) {
  const SchemeChoice scheme{SchemeKind::pf_tps1, theta, true};
  return finish_step(ctx, scheme, state, k,
                     assemble_step_system(ctx, scheme, state, k, k));
}

StepResult tps2_step(const StepContext& ctx, const IntegratorState& state,
                     double k, double nominal_k, bool stabilization_on) {
  const SchemeChoice scheme{SchemeKind::tps2, 0.5, stabilization_on};
  return finish_step(ctx, scheme, state, k,
                     assemble_step_system(ctx, scheme, state, k, nominal_k));
}

StepResult step(const StepContext& ctx, const SchemeChoice& scheme,
                const IntegratorState& state, double k, double nominal_k) {
  switch (scheme.kind) {
    case SchemeKind::tps1:
      return tps1_step(ctx, state, k, scheme.theta);
    case SchemeKind::pf_tps1:
      return pftps1_step(ctx, state, k, scheme.theta);
    case SchemeKind::tps2:
      break;
  }
  return tps2_step(ctx, state, k, nominal_k, scheme.stabilization_on);
}

ValidationReport validate_config(const SimConfig& cfg, const Mesh& mesh) {
  ValidationReport rep;
  auto error = [&](std::string s) { rep.errors.push_back(std::move(s)); };
  auto warn = [&](std::string s) { rep.warnings.push_back(std::move(s)); };

  if (!(cfg.k > 0.0)) error("k must be positive");
  if (!(cfg.T >= 0.0)) error("T must be nonnegative");
  if (cfg.output_every < 1) error("output_every must be >= 1");
  if (!(cfg.solver_tol > 0.0)) error("solver_tol must be positive");
  if (!(cfg.scheme.theta >= 0.0 && cfg.scheme.theta <= 1.0)) {
    error("theta must lie in [0, 1]");
  }
  try {
    cfg.material.validate();
  } catch (const InvalidArgument& e) {
    error(e.what());
  }
  if (mesh.cell_count() == 0) error("mesh has no cells");
  if (!rep.ok()) return rep;

  rep.mesh_quality = analyze_mesh(mesh);
  rep.k_over_h = cfg.k / rep.mesh_quality.h_max;
  const auto kind = cfg.scheme.kind;
  const double theta = cfg.scheme.theta;

  if (kind == SchemeKind::tps2) {
    if (!(cfg.k < 1.0)) {
      error("TPS2 requires k < 1 (M(k) = |k log k|^-1)");
    } else if (!(tps2_ellipticity_coefficient(cfg.material.alpha,
                                              cfg.material.lex,
                                              cfg.material.effective_ldm(),
                                              cfg.k) > 0.0)) {
      error(tps2_refusal(cfg.material, cfg.k));
    }
  }
  if (kind == SchemeKind::tps1) {
    if (theta < 0.5) {
      warn("TPS1 with theta < 1/2 is outside the convergence theory");
    } else if (theta == 0.5) {
      warn("TPS1 with theta = 1/2: instability observed for theta=1/2 at "
           "small h; the scheme needs k/h -> 0");
    }
  }
  if (kind == SchemeKind::pf_tps1 && theta <= 0.5) {
    warn("PF-TPS1 with theta <= 1/2 is outside the convergence theory "
         "(requires 1/2 < theta <= 1)");
  }
  if (kind != SchemeKind::pf_tps1 && !rep.mesh_quality.angle_condition_holds) {
    warn("mesh violates the angle condition (" +
         std::to_string(rep.mesh_quality.offending_pairs) +
         " positive off-diagonal stiffness entries); projection may increase "
         "the exchange energy");
  }
  if (kind != SchemeKind::pf_tps1 && rep.k_over_h > 1.0) {
    warn("k/h = " + std::to_string(rep.k_over_h) +
         " is large; the stability theory needs k/h -> 0");
  }
  return rep;
}

Index step_count(double T, double k) {
  if (!(k > 0.0)) throw InvalidArgument("k must be positive");
  if (!(T >= 0.0)) throw InvalidArgument("T must be nonnegative");
  const double ratio = T / k;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<Index>(nearest);
  }
  return static_cast<Index>(std::ceil(ratio));
}

NodalVectorField initial_magnetization(const SimConfig& cfg, const Mesh& mesh) {
  const InitialCondition& ic = cfg.initial;
  switch (ic.kind) {
    case InitialKind::uniform:
      return NodalVectorField::uniform(mesh.vertex_count(), ic.value);
    case InitialKind::skyrmion: {
      Vec3 centre = Vec3::Zero();
      if (ic.centre) {
        centre = *ic.centre;
      } else if (mesh.vertex_count() > 0) {
        Vec3 lo = mesh.vertex(0), hi = mesh.vertex(0);
        for (const auto& x : mesh.vertices()) {
          lo = lo.cwiseMin(x);
          hi = hi.cwiseMax(x);
        }
        centre = 0.5 * (lo + hi);
      }
      return interpolate_nodal(mesh, [&](const Vec3& x) {
        return skyrmion_like(x, centre, ic.radius);
      });
    }
    case InitialKind::file:
      break;
  }
  NodalVectorField m = load_nodal_field(ic.path);
  if (m.vertex_count() != mesh.vertex_count()) {
    throw ConfigError("initial field " + ic.path + " has " +
                      std::to_string(m.vertex_count()) +
                      " vertices, mesh has " +
                      std::to_string(mesh.vertex_count()));
  }
  return m;
}

namespace {

Sample make_sample(const IntegratorState& state, const FormSet& forms,
                   const Mesh& mesh, const EnergyParts& e, double v_l2_sq,
                   bool stability_ok) {
  Sample s;
  s.t = state.t;
  s.E_exchange = e.exchange;
  s.E_dmi = e.dmi;
  s.E_lower = e.anisotropy + e.zeeman;
  s.E_total = e.total();
  s.avg_m = avg_magnetization(state.m, forms);
  s.v_norm_L2 = std::sqrt(v_l2_sq);
  s.constraint_violation_L1 = constraint_violation_L1(state.m, mesh);
  s.stability_ok = stability_ok;
  return s;
}

}  // namespace

RunResult run(const SimConfig& cfg, const Mesh& mesh,
              const StateObserver& on_sample) {
  return run(cfg, mesh, initial_magnetization(cfg, mesh), on_sample);
}

RunResult run(const SimConfig& cfg, const Mesh& mesh, NodalVectorField initial,
              const StateObserver& on_sample) {
  RunResult result;
  result.validation = validate_config(cfg, mesh);
  if (!result.validation.ok()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : result.validation.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  if (initial.vertex_count() != mesh.vertex_count()) {
    throw ConfigError("initial field does not match the mesh");
  }

  const MaterialParams& params = cfg.material;
  const FormSet forms =
      assemble_static(mesh, params.dmi_form, params.chirality);
  const StepContext ctx{mesh, forms, params,
                        SolverOptions{cfg.solver_tol, 0, 60}};

  IntegratorState state;
  state.m = cfg.scheme.kind == SchemeKind::pf_tps1 ? std::move(initial)
                                                    : nodal_projection(initial);

  TimeSeries& series = result.series;
  series.run = {cfg.scheme,       params.lex, params.effective_ldm(),
                params.alpha,     cfg.k,      params.has_lower_order()};
  series.initial_energy = energy(state.m, forms, params, 0.0);
  series.samples.push_back(
      make_sample(state, forms, mesh, series.initial_energy, 0.0, true));
  if (on_sample) on_sample(state);

  const Index n = step_count(cfg.T, cfg.k);
  series.steps.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const bool last = i + 1 == n;
    double k = cfg.k;
    if (last) k = cfg.T - state.t;
    if (!(k > 0.0)) k = cfg.k;
    StepResult res;
    try {
      res = step(ctx, cfg.scheme, state, k, cfg.k);
    } catch (const SolverError& e) {
      throw RunFailure(e.what(), series, true);
    } catch (const Error& e) {
      throw RunFailure(e.what(), series, false);
    }
    if (last) res.next.t = cfg.T;
    series.steps.push_back(res.record);
    state = std::move(res.next);
    if ((i + 1) % cfg.output_every == 0 || last) {
      series.samples.push_back(make_sample(state, forms, mesh,
                                           res.record.energy,
                                           res.record.v_l2_sq,
                                           res.record.stability_ok));
      if (on_sample) on_sample(state);
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace tangent_llg
