#pragma once

#include "tangent_llg/diagnostics.hpp"
#include "tangent_llg/sim_config.hpp"
#include "tangent_llg/tangent.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tangent_llg {

struct IntegratorState {
  Index step = 0;
  double t = 0.0;
  NodalVectorField m;
};

struct StepResult {
  NodalVectorField v;
  IntegratorState next;
  StepRecord record;
};

/// Time-independent inputs shared by every step of a run.
struct StepContext {
  const Mesh& mesh;
  const FormSet& forms;
  const MaterialParams& params;
  SolverOptions solver;
};

/// First-order tangent plane step with nodal projection.
StepResult tps1_step(const StepContext& ctx, const IntegratorState& state,
                     double k, double theta);

/// Same linear system as tps1_step; m ← m + kv without projection.
StepResult pftps1_step(const StepContext& ctx, const IntegratorState& state,
                       double k, double theta);

/// (Almost) second-order tangent plane step. nominal_k fixes M(k) and ρ(k)
/// for the run; k is the step actually taken (shorter for a truncated final
/// step).
StepResult tps2_step(const StepContext& ctx, const IntegratorState& state,
                     double k, double nominal_k, bool stabilization_on = true);

/// Dispatches on the scheme kind.
StepResult step(const StepContext& ctx, const SchemeChoice& scheme,
                const IntegratorState& state, double k, double nominal_k);

/// The assembled (unreduced) 3N system of one step, exposed for oracles.
struct StepSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  /// TPS2 only: the W(λ)-weighted mass matrix.
  SparseMatrix weighted_mass;
};

StepSystem assemble_step_system(const StepContext& ctx,
                                const SchemeChoice& scheme,
                                const IntegratorState& state, double k,
                                double nominal_k);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  double k_over_h = 0.0;
  MeshQualityReport mesh_quality;

  bool ok() const { return errors.empty(); }
};

/// Checks hard preconditions (errors) and the conditions of the
/// convergence theory (warnings).
ValidationReport validate_config(const SimConfig& cfg, const Mesh& mesh);

/// Number of steps for final time T: ceil(T/k), where T/k within 1e-9 of an
/// integer counts as that integer. The last step may be shorter.
Index step_count(double T, double k);

NodalVectorField initial_magnetization(const SimConfig& cfg, const Mesh& mesh);

struct RunResult {
  IntegratorState final_state;
  TimeSeries series;
  ValidationReport validation;
};

/// Thrown by run() when a step fails; carries the samples recorded so far.
class RunFailure : public Error {
 public:
  RunFailure(const std::string& what, TimeSeries partial, bool solver_failure)
      : Error(what), partial_(std::move(partial)), solver_failure_(solver_failure) {}
  const TimeSeries& partial() const { return partial_; }
  bool solver_failure() const { return solver_failure_; }

 private:
  TimeSeries partial_;
  bool solver_failure_;
};

using StateObserver = std::function<void(const IntegratorState&)>;

/// Drives the configured scheme from t = 0 to T. Throws ConfigError when
/// validation reports errors.
RunResult run(const SimConfig& cfg, const Mesh& mesh,
              const StateObserver& on_sample = {});

/// Same as run() with an explicit initial state.
RunResult run(const SimConfig& cfg, const Mesh& mesh,
              NodalVectorField initial, const StateObserver& on_sample = {});

}  // namespace tangent_llg
