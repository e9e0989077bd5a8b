#include "tangent_llg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace tangent_llg {

Vec3 avg_magnetization(const NodalVectorField& m, const FormSet& forms) {
  const Eigen::VectorXd Mm = forms.vector_mass * m.values();
  Vec3 sum = Vec3::Zero();
  for (Eigen::Index i = 0; i < Mm.size(); ++i) sum[i % 3] += Mm[i];
  return sum / forms.volume;
}

namespace {

// ∫ of a linear function over the tetrahedron (p0..p3) with vertex values
// (f0..f3) equals volume × mean of the vertex values.
double linear_integral(const std::array<Vec3, 4>& p,
                       const std::array<double, 4>& f) {
  const double vol = std::abs(signed_volume(p[0], p[1], p[2], p[3]));
  return vol * (f[0] + f[1] + f[2] + f[3]) / 4.0;
}

Vec3 zero_crossing(const Vec3& a, double fa, const Vec3& b, double fb) {
  const double s = fa / (fa - fb);
  return a + s * (b - a);
}

}  // namespace

double abs_integral_p1(const Mesh& mesh, Index c,
                       const std::array<double, 4>& f) {
  const Cell& cell = mesh.cell(c);
  std::array<Vec3, 4> x;
  for (int a = 0; a < 4; ++a) x[a] = mesh.vertex(cell[a]);
  const double vol = mesh.cell_volume(c);
  const double full = vol * (f[0] + f[1] + f[2] + f[3]) / 4.0;

  std::array<int, 4> neg{}, pos{};
  int nn = 0, np = 0;
  for (int a = 0; a < 4; ++a) {
    if (f[a] < 0.0) {
      neg[nn++] = a;
    } else {
      pos[np++] = a;
    }
  }
  if (nn == 0) return full;
  if (nn == 4) return -full;

  // ∫|f| = ∫f − 2∫f⁻  with f⁻ = min(f, 0), computed on the negative region.
  double negative = 0.0;
  if (nn == 1 || nn == 3) {
    // A lone vertex of one sign cuts off a sub-tetrahedron.
    const int lone = nn == 1 ? neg[0] : pos[0];
    std::array<Vec3, 4> p{x[lone], {}, {}, {}};
    std::array<double, 4> g{f[lone], 0.0, 0.0, 0.0};
    int s = 1;
    for (int a = 0; a < 4; ++a) {
      if (a == lone) continue;
      p[s++] = zero_crossing(x[lone], f[lone], x[a], f[a]);
    }
    const double lone_part = linear_integral(p, g);
    // lone_part is the integral of f over the lone vertex's region.
    negative = nn == 1 ? lone_part : full - lone_part;
  } else {
    // Two negative vertices: the negative region is a prism with triangles
    // (x_i, P_ip, P_iq) and (x_j, P_jp, P_jq); split it into three tets.
    const int i = neg[0], j = neg[1], p = pos[0], q = pos[1];
    const Vec3 Pip = zero_crossing(x[i], f[i], x[p], f[p]);
    const Vec3 Piq = zero_crossing(x[i], f[i], x[q], f[q]);
    const Vec3 Pjp = zero_crossing(x[j], f[j], x[p], f[p]);
    const Vec3 Pjq = zero_crossing(x[j], f[j], x[q], f[q]);
    negative += linear_integral({x[i], Pip, Piq, x[j]}, {f[i], 0.0, 0.0, f[j]});
    negative += linear_integral({Pip, Piq, x[j], Pjq}, {0.0, 0.0, f[j], 0.0});
    negative += linear_integral({Pip, x[j], Pjp, Pjq}, {0.0, f[j], 0.0, 0.0});
  }
  return full - 2.0 * negative;
}

double constraint_violation_L1(const NodalVectorField& m, const Mesh& mesh) {
  if (m.vertex_count() != mesh.vertex_count()) {
    throw InvalidArgument("constraint_violation_L1: field does not match mesh");
  }
  std::vector<double> nodal(mesh.vertex_count());
  for (Index z = 0; z < mesh.vertex_count(); ++z) {
    nodal[z] = m.at(z).squaredNorm() - 1.0;
  }
  double total = 0.0;
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const Cell& cell = mesh.cell(c);
    std::array<double, 4> f{nodal[cell[0]], nodal[cell[1]], nodal[cell[2]],
                            nodal[cell[3]]};
    if (f[0] == 0.0 && f[1] == 0.0 && f[2] == 0.0 && f[3] == 0.0) continue;
    total += abs_integral_p1(mesh, c, f);
  }
  return total;
}

std::vector<double> energy_law_residual(const TimeSeries& series) {
  if (series.run.lower_order_terms) {
    throw DiagnosticUnavailable(
        "energy laws cover exchange and DMI only; the run has lower-order "
        "terms");
  }
  if (series.steps.empty() && !series.samples.empty() &&
      series.samples.back().t > 0.0) {
    throw DiagnosticUnavailable("per-step records were not kept for this run");
  }
  const RunSummary& run = series.run;
  const double lex2 = run.lex * run.lex;
  std::vector<double> out;
  out.reserve(series.steps.size());

  double previous = series.initial_energy.total();
  if (run.scheme.kind == SchemeKind::pf_tps1) {
    double dissipation = 0.0, dmi = 0.0;
    for (const auto& s : series.steps) {
      dissipation += run.alpha * s.k * s.v_l2_sq +
                     lex2 * (run.scheme.theta - 0.5) * s.k * s.k * s.grad_v_sq;
      dmi += 0.5 * run.ldm * s.k * s.k * s.dmi_vv;
      out.push_back(s.energy.total() - series.initial_energy.total() +
                    dissipation - dmi);
    }
    return out;
  }
  for (const auto& s : series.steps) {
    double surplus = s.energy.total() - previous;
    if (run.scheme.kind == SchemeKind::tps1) {
      surplus += run.alpha * s.k * s.v_l2_sq +
                 lex2 * (run.scheme.theta - 0.5) * s.k * s.k * s.grad_v_sq;
    } else {
      const double rho = run.scheme.stabilization_on ? rho_of_k(run.nominal_k) : 0.0;
      surplus += s.k * s.weighted_vv + 0.5 * lex2 * rho * s.k * s.k * s.grad_v_sq;
    }
    out.push_back(surplus);
    previous = s.energy.total();
  }
  return out;
}

double fit_surplus_constant(const TimeSeries& series,
                            const std::vector<double>& surplus, double h) {
  if (surplus.size() != series.steps.size()) {
    throw InvalidArgument("fit_surplus_constant: length mismatch");
  }
  double c = 0.0;
  for (Index i = 0; i < surplus.size(); ++i) {
    const auto& s = series.steps[i];
    const double scale = s.k * s.k * s.v_l2_sq / h;
    if (surplus[i] > 0.0 && scale > 0.0) c = std::max(c, surplus[i] / scale);
  }
  return c;
}

}  // namespace tangent_llg
