#pragma once

#include "tangent_llg/assembly.hpp"
#include "tangent_llg/linalg.hpp"
#include "tangent_llg/physics.hpp"
#include "tangent_llg/sim_config.hpp"

#include <vector>

namespace tangent_llg {

/// Quantities recorded for every time step, in the run's own arithmetic.
struct StepRecord {
  double k = 0.0;            ///< step size actually taken
  double t_end = 0.0;        ///< time after the step
  double v_l2_sq = 0.0;      ///< ‖v‖²
  double grad_v_sq = 0.0;    ///< ‖∇v‖²
  double dmi_vv = 0.0;       ///< ⟨𝒟v, v⟩ (chirality included)
  double weighted_vv = 0.0;  ///< ⟨W(λ) v, v⟩, TPS2 only
  double grad_pre_sq = 0.0;  ///< ‖∇(m + kv)‖²
  double grad_post_sq = 0.0; ///< ‖∇m_new‖²
  bool stability_ok = true;  ///< ‖∇m_new‖ ≤ ‖∇(m + kv)‖
  EnergyParts energy;        ///< E(m_new)
  SolveReport solve;
};

struct Sample {
  double t = 0.0;
  double E_total = 0.0;
  double E_exchange = 0.0;
  double E_dmi = 0.0;
  /// Anisotropy + Zeeman, zero without lower-order terms.
  double E_lower = 0.0;
  Vec3 avg_m = Vec3::Zero();
  double v_norm_L2 = 0.0;
  double constraint_violation_L1 = 0.0;
  bool stability_ok = true;
};

/// What the energy-law diagnostics need to know about the run.
struct RunSummary {
  SchemeChoice scheme;
  double lex = 0.0;
  double ldm = 0.0;
  double alpha = 0.0;
  double nominal_k = 0.0;
  bool lower_order_terms = false;
};

struct TimeSeries {
  RunSummary run;
  EnergyParts initial_energy;
  std::vector<Sample> samples;
  std::vector<StepRecord> steps;
};

/// |Ω|⁻¹ ∫ m, exact for P1.
Vec3 avg_magnetization(const NodalVectorField& m, const FormSet& forms);

/// ‖I[|m|²] − 1‖_{L¹}, integrated exactly by splitting cells along the zero
/// level set of the P1 integrand.
double constraint_violation_L1(const NodalVectorField& m, const Mesh& mesh);

/// ∫_K |f| for the linear function with nodal values f on cell c.
double abs_integral_p1(const Mesh& mesh, Index c, const std::array<double, 4>& f);

/// PF-TPS1: cumulative identity residual after each step,
///   E(mʲ) − E(m⁰) + αΣk‖v‖² + lex²(θ−½)Σk²‖∇v‖² − (ldm/2)Σk²⟨𝒟v,v⟩.
/// TPS1: per-step surplus E(mⁱ⁺¹) − E(mⁱ) + αk‖v‖² + lex²(θ−½)k²‖∇v‖².
/// TPS2: per-step surplus E(mⁱ⁺¹) − E(mⁱ) + k⟨Wv,v⟩ + (lex²/2)ρ(k)k²‖∇v‖².
/// Throws DiagnosticUnavailable when per-step records are missing or the run
/// had lower-order terms (the laws cover exchange and DMI only).
std::vector<double> energy_law_residual(const TimeSeries& series);

/// Smallest c with surplusᵢ ≤ c·h⁻¹kᵢ²‖vᵢ‖² over the run (0 when every
/// surplus is nonpositive).
double fit_surplus_constant(const TimeSeries& series,
                            const std::vector<double>& surplus, double h);

}  // namespace tangent_llg
