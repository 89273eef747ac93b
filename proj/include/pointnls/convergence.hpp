#pragma once

#include <optional>
#include <string>

#include "pointnls/scaled_solver.hpp"

namespace pointnls {

struct SweepConfig {
  // form factor
  std::string ff_kind = "gaussian";
  double sigma = 1.0;
  std::string table_path;

  // physics (gaussian_amp data)
  double gamma = 1.0;
  double mu = 0.5;
  cplx q0{1.0, 0.0};
  double width = 1.0;
  double tail_scale = 1.0;
  bool compensated = true;

  // time grid: N at epsilons[0]; halved eps pairs with doubled N
  double T = 1.0;
  int base_steps = 4096;
  bool double_steps = true;

  std::vector<double> epsilons = {0.4, 0.2, 0.1, 0.05, 0.025};
  int samples = 17;
  long seed = 1234;
  int threads = 0;  // 0: hardware, capped by POINTNLS_THREADS
  std::string out_dir;
};

struct RunMetrics {
  double eps = 0.0;
  int steps = 0;
  double sup_err = 0.0;
  double init_err = 0.0;
  double gap = 0.0;
  double y_norm = 0.0;
  double mass_drift_scaled = 0.0;
  double energy_drift_scaled = 0.0;
  double energy_forms_gap = 0.0;
  double mass_drift_limit = 0.0;
  double energy_drift_limit = 0.0;
  double bc_residual_max = 0.0;
  double q_sup_scaled = 0.0;
  double grad_phi_sup = 0.0;
  double diag_ratio = 0.0;
  double wall_ms = 0.0;
  std::vector<double> sample_times, sample_errors;
};

struct ConvergenceReport {
  SweepConfig config;
  std::vector<RunMetrics> runs;
  double delta_hat = 0.0;
  double r2_delta = 0.0;
  double slope_init = 0.0;
  double slope_gap = 0.0;
  double slope_y = 0.0;
  bool dropped_largest_eps = false;
  bool partial = false;
  std::string failure_message;
};

// sup-sample L2 distance between the scaled state and phi + q G.
double state_error(const RadialField& psi_eps, const DomainElement& elem);

// max_t |I^{1/2}(q_eps - q)(t)| on a common grid.
double charge_gap(const ChargeTrajectory& q_eps, const ChargeTrajectory& q_lim);

// ||psi0 - psi0_eps||.
double initial_data_error(const RadialField& psi0, const RadialField& psi0_eps,
                          cplx q0);

FormFactor form_factor_from_config(const SweepConfig& cfg);

// One eps: solve both flows, sample the error metrics.
RunMetrics run_single_eps(const SweepConfig& cfg, const FormFactor& ff,
                          double eps, int steps);

ConvergenceReport run_convergence_study(const SweepConfig& cfg);

int resolve_thread_count(int requested);

}  // namespace pointnls
