#include "pointnls/convergence.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <thread>

#include "pointnls/config.hpp"
#include "pointnls/quadrature.hpp"

namespace pointnls {

namespace {

double tail_norm_sq(cplx c, double k_max) {
  const double a = std::abs(c);
  return a * a / (2.0 * pi * pi * k_max);
}

double diff_norm(const RadialField& f, const RadialField& g, cplx tail_extra) {
  // || f - g || with an extra analytic green-tail coefficient on g.
  const auto k = f.grid->nodes();
  const auto w = f.grid->weights();
  double sum = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) {
    const double a = std::abs(f.values[i] - g.values[i]);
    sum += w[i] * k[i] * k[i] * a * a;
  }
  sum *= 4.0 * pi;
  sum += tail_norm_sq(f.tail_coeff - g.tail_coeff - tail_extra, f.grid->k_max());
  return std::sqrt(sum);
}

}  // namespace

double state_error(const RadialField& psi_eps, const DomainElement& elem) {
  if (!psi_eps.grid->same_nodes(*elem.phi.grid))
    throw GridError("state_error: fields live on different k-grids");
  const auto k = psi_eps.grid->nodes();
  const auto w = psi_eps.grid->weights();
  double sum = 0.0;
  for (size_t i = 0; i < psi_eps.values.size(); ++i) {
    const cplx d = psi_eps.values[i] - elem.phi.values[i] -
                   elem.q * two_pi_pow_m32 / (k[i] * k[i]);
    const double a = std::abs(d);
    sum += w[i] * k[i] * k[i] * a * a;
  }
  sum *= 4.0 * pi;
  sum += tail_norm_sq(psi_eps.tail_coeff - elem.phi.tail_coeff - elem.q,
                      psi_eps.grid->k_max());
  return std::sqrt(sum);
}

double charge_gap(const ChargeTrajectory& q_eps, const ChargeTrajectory& q_lim) {
  if (!(q_eps.grid == q_lim.grid))
    throw GridError("charge_gap: trajectories on different time grids");
  TimeSeries d(q_eps.grid);
  for (int j = 0; j <= q_eps.grid.steps; ++j)
    d.v[j] = q_eps.q[j] - q_lim.q[j];
  return max_abs(half_integral(d));
}

double initial_data_error(const RadialField& psi0, const RadialField& psi0_eps,
                          cplx q0) {
  (void)q0;
  return diff_norm(psi0, psi0_eps, cplx(0.0, 0.0));
}

FormFactor form_factor_from_config(const SweepConfig& cfg) {
  if (cfg.ff_kind == "gaussian") return FormFactor::make_gaussian(cfg.sigma);
  if (cfg.ff_kind == "table") {
    auto [x, rho] = read_profile_csv(cfg.table_path);
    return FormFactor::make_tabulated(x, rho);
  }
  throw std::invalid_argument("form_factor.kind must be gaussian or table");
}

RunMetrics run_single_eps(const SweepConfig& cfg, const FormFactor& ff,
                          double eps, int steps) {
  const auto t0 = std::chrono::steady_clock::now();
  RunMetrics m;
  m.eps = eps;
  m.steps = steps;

  auto kgrid = KGrid::for_run(eps, cfg.sigma);
  const TimeGrid tgrid(cfg.T, steps);
  PhysParams params = make_domain_data(cfg.gamma, cfg.mu, cfg.q0, kgrid,
                                       cfg.width, cfg.tail_scale,
                                       cfg.compensated);

  ScaledRun run = solve_scaled_charge(ff, eps, params, tgrid, kgrid);
  ChargeTrajectory lim = solve_limit_charge(params, tgrid);
  m.diag_ratio = run.diag_ratio;

  m.init_err = initial_data_error(psi0_field(params), run.psi0_eps, cfg.q0);
  m.gap = charge_gap(run.q_traj, lim);
  const auto y = remainder_terms(run);
  for (int j = 0; j <= steps; ++j) {
    const double s =
        std::abs(y[0].v[j] + y[1].v[j] + y[2].v[j] + y[3].v[j]);
    m.y_norm = std::max(m.y_norm, s);
  }
  m.q_sup_scaled = 0.0;
  for (const cplx& q : run.q_traj.q)
    m.q_sup_scaled = std::max(m.q_sup_scaled, std::abs(q));

  const int ns = std::max(cfg.samples, 2);
  double mass_s0 = 0.0, mass_l0 = 0.0, e_s0 = 0.0, e_l0 = 0.0;
  for (int s = 0; s < ns; ++s) {
    const int j = int(std::llround(double(s) * steps / (ns - 1)));
    const double t = tgrid.node(j);

    const RadialField psi_eps = reconstruct_scaled_state(run, j);
    const DomainElement elem = reconstruct_state(lim, params, j);
    const double err = state_error(psi_eps, elem);
    m.sample_times.push_back(t);
    m.sample_errors.push_back(err);
    m.sup_err = std::max(m.sup_err, err);

    const auto [phi_e, q_e] = decompose_scaled(psi_eps, ff, eps);
    m.grad_phi_sup = std::max(m.grad_phi_sup, grad_norm(phi_e));
    const auto [e1, e2] = scaled_energy(psi_eps, ff, eps, params);
    m.energy_forms_gap = std::max(
        m.energy_forms_gap, std::abs(e1 - e2) / std::max(1.0, std::abs(e1)));
    m.bc_residual_max =
        std::max(m.bc_residual_max, boundary_residual(elem, params));

    double mass_s = 0.0, mass_l = 0.0;
    if (cfg.compensated) {
      mass_s = l2_norm(psi_eps);
      const RadialField psi_l = reconstruct_psi(lim, params, j);
      mass_l = l2_norm(psi_l);
    }
    const double e_l = limit_energy(elem, params);
    if (s == 0) {
      mass_s0 = mass_s;
      mass_l0 = mass_l;
      e_s0 = e1;
      e_l0 = e_l;
    } else {
      if (cfg.compensated) {
        m.mass_drift_scaled =
            std::max(m.mass_drift_scaled,
                     std::abs(mass_s - mass_s0) / std::max(1e-300, mass_s0));
        m.mass_drift_limit =
            std::max(m.mass_drift_limit,
                     std::abs(mass_l - mass_l0) / std::max(1e-300, mass_l0));
      }
      const double e_scale_s = std::max(1.0, std::abs(e_s0));
      const double e_scale_l = std::max(1.0, std::abs(e_l0));
      m.energy_drift_scaled =
          std::max(m.energy_drift_scaled, std::abs(e1 - e_s0) / e_scale_s);
      m.energy_drift_limit =
          std::max(m.energy_drift_limit, std::abs(e_l - e_l0) / e_scale_l);
    }
  }

  if (!cfg.out_dir.empty()) {
    write_scaled_run_csv(cfg.out_dir, cfg, run, y, m);
    write_limit_run_csv(cfg.out_dir, cfg, lim, params, m);
  }
  m.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  return m;
}

int resolve_thread_count(int requested) {
  int n = requested > 0 ? requested
                        : int(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("POINTNLS_THREADS")) {
    const int c = std::atoi(cap);
    if (c > 0) n = std::min(n, c);
  }
  return std::max(1, n);
}

ConvergenceReport run_convergence_study(const SweepConfig& cfg) {
  ConvergenceReport rep;
  rep.config = cfg;
  if (!existence_guard_ok(cfg.gamma, cfg.mu))
    throw std::invalid_argument("run_convergence_study: existence guard violated");
  if (cfg.epsilons.size() < 2)
    throw std::invalid_argument("run_convergence_study: need >= 2 epsilons");

  const FormFactor ff = form_factor_from_config(cfg);
  const int n_eps = int(cfg.epsilons.size());
  std::vector<int> steps(n_eps, cfg.base_steps);
  const int snap = std::max(cfg.samples - 1, 1);
  for (int i = 0; i < n_eps; ++i) {
    if (cfg.double_steps) {
      const double ratio = cfg.epsilons[0] / cfg.epsilons[i];
      long n = std::llround(cfg.base_steps * ratio);
      n = ((n + snap - 1) / snap) * snap;  // keep sample nodes on the grid
      steps[i] = int(n);
    } else {
      steps[i] = ((cfg.base_steps + snap - 1) / snap) * snap;
    }
  }

  const int threads = resolve_thread_count(cfg.threads);
  rep.runs.resize(n_eps);
  std::vector<std::string> errors(n_eps);
  for (int base = 0; base < n_eps; base += threads) {
    std::vector<std::future<void>> fut;
    for (int i = base; i < std::min(n_eps, base + threads); ++i) {
      fut.push_back(std::async(std::launch::async, [&, i] {
        try {
          rep.runs[i] = run_single_eps(cfg, ff, cfg.epsilons[i], steps[i]);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }));
    }
    for (auto& f : fut) f.get();
  }
  for (int i = 0; i < n_eps; ++i) {
    if (!errors[i].empty()) {
      rep.partial = true;
      rep.failure_message = "eps=" + std::to_string(cfg.epsilons[i]) + ": " +
                            errors[i];
    }
  }
  if (rep.partial) {
    if (!cfg.out_dir.empty()) persist_report(rep);
    return rep;
  }

  std::vector<double> lx, le, li, lg, ly;
  for (const RunMetrics& m : rep.runs) {
    lx.push_back(std::log(m.eps));
    le.push_back(std::log(m.sup_err));
    li.push_back(std::log(m.init_err));
    lg.push_back(std::log(m.gap));
    ly.push_back(std::log(m.y_norm));
  }
  LineFit fe = fit_line(lx, le);
  // Pre-asymptotic pollution rule: drop the largest eps when its residual
  // exceeds twice the fit RMS.
  const double res0 = std::abs(le[0] - (fe.intercept + fe.slope * lx[0]));
  if (n_eps >= 4 && res0 > 2.0 * fe.rms_residual) {
    fe = fit_line(std::span(lx).subspan(1), std::span(le).subspan(1));
    rep.dropped_largest_eps = true;
  }
  rep.delta_hat = fe.slope;
  rep.r2_delta = fe.r2;
  rep.slope_init = fit_line(lx, li).slope;
  rep.slope_gap = fit_line(lx, lg).slope;
  rep.slope_y = fit_line(lx, ly).slope;

  if (!cfg.out_dir.empty()) persist_report(rep);
  return rep;
}

}  // namespace pointnls
