#pragma once

#include "tangent_llg/assembly.hpp"

#include <optional>
#include <vector>

namespace tangent_llg {

inline constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;
inline constexpr double kGamma0 = 2.21e5;  // m/(A·s)

struct Anisotropy {
  /// Rescaled strength 2K / (μ0 Ms²).
  double q = 0.0;
  Vec3 axis{0.0, 0.0, 1.0};
};

/// Trapezoidal field pulse: linear ramp up, hold, linear ramp down, zero
/// outside [start, start + ramp_up + hold + ramp_down].
struct PulseSchedule {
  double h_max = 0.0;
  double t_start = 0.0;
  double t_ramp_up = 0.0;
  double t_hold = 0.0;
  double t_ramp_down = 0.0;
  Vec3 direction{1.0, 0.0, 0.0};

  void validate() const;
  double amplitude(double t) const;
  Vec3 field(double t) const { return amplitude(t) * direction; }
};

struct MaterialParams {
  double lex = 1.0;
  double ldm = 0.0;
  double alpha = 1.0;
  DmiForm dmi_form = DmiForm::bulk;
  /// +1 for D > 0, −1 for D < 0. Negates the assembled DMI blocks.
  double chirality = 1.0;
  std::optional<Anisotropy> anisotropy;
  std::optional<PulseSchedule> zeeman;

  void validate() const;
  bool has_lower_order() const { return anisotropy || zeeman; }
  /// ldm with DMI switched off when dmi_form is none.
  double effective_ldm() const {
    return dmi_form == DmiForm::none ? 0.0 : ldm;
  }
};

struct RescaledParams {
  double lex_m = 0.0;  ///< exchange length in meters
  double ldm_m = 0.0;  ///< DMI length in meters
  double k = 0.0;      ///< dimensionless time step γ0·Ms·Δt
};

double exchange_length(double A, double Ms);
double dmi_length(double D, double Ms);
double anisotropy_strength(double K, double Ms);

/// lex = √(2A/(μ0 Ms²)), ldm = 2D/(μ0 Ms²), k = γ0 Ms Δt.
RescaledParams rescale(double A, double D, double Ms, double gamma0,
                       double time_step_s);

struct EnergyParts {
  double exchange = 0.0;
  double dmi = 0.0;
  double anisotropy = 0.0;
  double zeeman = 0.0;

  double total() const { return exchange + dmi + anisotropy + zeeman; }
};

/// E = lex²/2 ‖∇m‖² + ldm/2 ⟨𝒟m, m⟩ + anisotropy + Zeeman.
EnergyParts energy(const NodalVectorField& m, const FormSet& forms,
                   const MaterialParams& params, double t = 0.0);

/// λ = −lex²|∇m|² − ldm (𝒟m)·m at every point of degree3_rule(),
/// cell-major, with piecewise-constant ∇m and piecewise-linear m.
std::vector<double> lambda_at_quadrature(const NodalVectorField& m,
                                         const Mesh& mesh,
                                         const MaterialParams& params);

/// Cut-off of the Lagrange multiplier weight.
double cutoff_W(double s, double M, double k, double alpha);

/// |k ln k|⁻¹, defined for 0 < k < 1.
double M_of_k(double k);
/// |k ln k|, defined for 0 < k < 1.
double rho_of_k(double k);

/// 2α²/(2α + M(k)k) − ldm²/(4 lex²)·k. The TPS2 bilinear form is elliptic
/// when this is positive.
double tps2_ellipticity_coefficient(double alpha, double lex, double ldm,
                                    double k);

/// Explicit lower-order field h(z) = q (a·m(z)) a + h_ext(t).
NodalVectorField lower_order_field(const NodalVectorField& m, double t,
                                   const MaterialParams& params);

}  // namespace tangent_llg
