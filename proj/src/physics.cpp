#include "tangent_llg/physics.hpp"

#include <algorithm>
#include <cmath>

namespace tangent_llg {

void PulseSchedule::validate() const {
  if (t_start < 0.0 || t_ramp_up < 0.0 || t_hold < 0.0 || t_ramp_down < 0.0) {
    throw InvalidArgument("pulse durations must be nonnegative");
  }
  if (std::abs(direction.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("pulse direction must be a unit vector");
  }
}

double PulseSchedule::amplitude(double t) const {
  const double s = t - t_start;
  if (s < 0.0) return 0.0;
  if (s < t_ramp_up) return h_max * s / t_ramp_up;
  if (s <= t_ramp_up + t_hold) return h_max;
  const double down = s - t_ramp_up - t_hold;
  if (down < t_ramp_down) return h_max * (1.0 - down / t_ramp_down);
  return 0.0;
}

void MaterialParams::validate() const {
  if (!(lex > 0.0)) throw InvalidArgument("lex must be positive");
  if (!(ldm >= 0.0)) throw InvalidArgument("ldm must be nonnegative");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1]");
  }
  if (chirality != 1.0 && chirality != -1.0) {
    throw InvalidArgument("chirality must be +1 or -1");
  }
  if (anisotropy && std::abs(anisotropy->axis.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("anisotropy axis must be a unit vector");
  }
  if (zeeman) zeeman->validate();
}

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw InvalidArgument(std::string(name) + " must be positive");
  }
}
}  // namespace

double exchange_length(double A, double Ms) {
  require_positive(A, "A");
  require_positive(Ms, "Ms");
  return std::sqrt(2.0 * A / (kMu0 * Ms * Ms));
}

double dmi_length(double D, double Ms) {
  require_positive(D, "D");
  require_positive(Ms, "Ms");
  return 2.0 * D / (kMu0 * Ms * Ms);
}

double anisotropy_strength(double K, double Ms) {
  require_positive(K, "K");
  require_positive(Ms, "Ms");
  return 2.0 * K / (kMu0 * Ms * Ms);
}

RescaledParams rescale(double A, double D, double Ms, double gamma0,
                       double time_step_s) {
  require_positive(gamma0, "gamma0");
  require_positive(time_step_s, "time step");
  return {exchange_length(A, Ms), dmi_length(D, Ms), gamma0 * Ms * time_step_s};
}

EnergyParts energy(const NodalVectorField& m, const FormSet& forms,
                   const MaterialParams& params, double t) {
  const Eigen::VectorXd& x = m.values();
  if (x.size() != static_cast<Eigen::Index>(forms.vector_mass.rows())) {
    throw InvalidArgument("energy: field does not match forms");
  }
  EnergyParts e;
  e.exchange = 0.5 * params.lex * params.lex * forms.vector_stiffness.bilinear(x, x);
  if (forms.dmi.nonzeros() > 0) {
    e.dmi = 0.5 * params.effective_ldm() * forms.dmi.bilinear(x, x);
  }
  if (params.anisotropy) {
    const Vec3& a = params.anisotropy->axis;
    Eigen::VectorXd proj(static_cast<Eigen::Index>(m.vertex_count()));
    for (Index z = 0; z < m.vertex_count(); ++z) {
      proj[static_cast<Eigen::Index>(z)] = a.dot(m.at(z));
    }
    e.anisotropy = 0.5 * params.anisotropy->q *
                   (forms.volume - forms.scalar_mass.bilinear(proj, proj));
  }
  if (params.zeeman) {
    const NodalVectorField h =
        NodalVectorField::uniform(m.vertex_count(), params.zeeman->field(t));
    e.zeeman = -forms.vector_mass.bilinear(h.values(), x);
  }
  return e;
}

std::vector<double> lambda_at_quadrature(const NodalVectorField& m,
                                         const Mesh& mesh,
                                         const MaterialParams& params) {
  const auto& rule = degree3_rule();
  const double lex2 = params.lex * params.lex;
  const double ldm = params.effective_ldm() * params.chirality;
  std::vector<double> lambda;
  lambda.reserve(rule.size() * mesh.cell_count());
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    const Cell& cell = mesh.cell(c);
    const double grad2 = cell_gradient(mesh, m, c).squaredNorm();
    Vec3 dm = Vec3::Zero();
    if (ldm != 0.0) {
      const auto B = dmi_operator_blocks(params.dmi_form, mesh.gradients(c));
      for (int a = 0; a < 4; ++a) dm += B[a] * m.at(cell[a]);
    }
    for (const auto& p : rule.points) {
      const Vec3 mq = evaluate(mesh, m, c, p);
      lambda.push_back(-lex2 * grad2 - ldm * dm.dot(mq));
    }
  }
  return lambda;
}

double cutoff_W(double s, double M, double k, double alpha) {
  if (s >= 0.0) return alpha + k * std::min(s, M) / 2.0;
  return 2.0 * alpha * alpha / (2.0 * alpha + k * std::min(-s, M));
}

namespace {
double k_log_k(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw InvalidArgument("M(k) and rho(k) require 0 < k < 1, got k = " +
                          std::to_string(k));
  }
  return std::abs(k * std::log(k));
}
}  // namespace

double M_of_k(double k) { return 1.0 / k_log_k(k); }
double rho_of_k(double k) { return k_log_k(k); }

double tps2_ellipticity_coefficient(double alpha, double lex, double ldm,
                                    double k) {
  return 2.0 * alpha * alpha / (2.0 * alpha + M_of_k(k) * k) -
         ldm * ldm / (4.0 * lex * lex) * k;
}

NodalVectorField lower_order_field(const NodalVectorField& m, double t,
                                   const MaterialParams& params) {
  NodalVectorField h(m.vertex_count());
  if (!params.has_lower_order()) return h;
  const Vec3 ext = params.zeeman ? params.zeeman->field(t) : Vec3::Zero();
  for (Index z = 0; z < m.vertex_count(); ++z) {
    Vec3 v = ext;
    if (params.anisotropy) {
      const Vec3& a = params.anisotropy->axis;
      v += params.anisotropy->q * a.dot(m.at(z)) * a;
    }
    h.set(z, v);
  }
  return h;
}

}  // namespace tangent_llg
