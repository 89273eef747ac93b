#include "pointnls/scaled_solver.hpp"

#include <cmath>

#include "pointnls/fractional.hpp"
#include "pointnls/oscillatory.hpp"
#include "scalar_step.hpp"

namespace pointnls {

namespace {

const cplx c16 = 16.0 * pi * pi * sqrt_pi_i;  // (4pi)^2 sqrt(pi i)

// S(t_j) = 4 pi sqrt(pi i) int_0^{t_j} (rho^eps, U(s) psi0^eps) ds, split as
// phi0 trace plus the q0 (rho^eps * G) trace.
std::vector<cplx> build_source(const FormFactor& ff, double eps,
                               const PhysParams& p, const TimeGrid& grid) {
  const int n = grid.steps;
  std::vector<cplx> s(n + 1, cplx{});
  if (p.analytic && ff.is_gaussian()) {
    const double sig = ff.sigma();
    for (int j = 1; j <= n; ++j) {
      const double t = grid.node(j);
      s[j] = four_pi_sqrt_pi_i *
             (analytic::int_rho_u_phi0(*p.analytic, p.q0, sig, eps, t) +
              p.q0 * analytic::int_rho_u_green(sig, eps, t));
    }
    return s;
  }
  // Generic path: cumulative trapezoid of the phi0 trace plus the Filon
  // time-integrated G trace.
  const double k_hi = ff.spectral_cutoff() / eps;
  const double scale_u = ff.decay_scale_u(eps);
  TimeSeries trace(grid);
  for (int j = 0; j <= n; ++j) {
    const double t = grid.node(j);
    trace.v[j] = 4.0 * pi *
                 oscillatory_k_integral(
                     [&](double k) {
                       return k * k * ff.rho_hat(eps * k) *
                              field_eval(p.phi0, k);
                     },
                     0.0, p.phi0.grid->k_max(), t, scale_u);
  }
  const TimeSeries cum = cumulative_integral(trace);
  const auto g_amp = [&](double k) {
    const double r = ff.rho_hat(eps * k);
    return cplx(r * r, 0.0);
  };
  for (int j = 1; j <= n; ++j) {
    const double t = grid.node(j);
    const cplx green_part =
        4.0 * pi * time_integrated_trace(g_amp, k_hi, t, scale_u);
    s[j] = four_pi_sqrt_pi_i * (cum.v[j] + p.q0 * green_part);
  }
  return s;
}

cplx rho_phi0_inner(const FormFactor& ff, double eps, const PhysParams& p) {
  if (p.analytic && ff.is_gaussian())
    return analytic::rho_u_phi0(*p.analytic, p.q0, ff.sigma(), eps, 0.0);
  return inner(rho_eps_field(ff, eps, p.phi0.grid), p.phi0);
}

}  // namespace

ScaledRun solve_scaled_charge(const FormFactor& ff, double eps,
                              const PhysParams& params, const TimeGrid& tgrid,
                              std::shared_ptr<const KGrid> kgrid) {
  if (!(eps > 0.0))
    throw std::invalid_argument("solve_scaled_charge: eps must be > 0");
  if (!existence_guard_ok(params.gamma, params.mu))
    throw std::invalid_argument("solve_scaled_charge: existence guard violated");

  ScaledRun run{eps, ff, params, tgrid, kgrid};
  run.psi0_eps = build_initial_data(params, ff, eps, kgrid);
  run.kernel = build_memory_kernel(ff, eps, tgrid);
  run.source = build_source(ff, eps, params, tgrid);
  run.q0_eps = params.q0 + eps / ff.ell() * rho_phi0_inner(ff, eps, params);

  const int n = tgrid.steps;
  const double dt = tgrid.dt();
  const AbelWeights aw(tgrid);
  const MemoryKernel& mk = run.kernel;
  const double el = eps / ff.ell();
  const double gamma = params.gamma;
  const double mu = params.mu;

  const cplx a = aw.diag() + c16 * mk.diff_late[1];
  const cplx b = gamma * (four_pi_sqrt_pi_i * 0.5 * dt -
                          c16 * el * mk.diff_late[1] - el * aw.diag());
  run.diag_ratio = std::abs(a) / aw.diag();

  std::vector<cplx> q(n + 1), nl(n + 1);
  q[0] = run.q0_eps;
  nl[0] = charge_nonlinearity(q[0], mu);
  for (auto& y : run.y_partial) y.assign(n + 1, cplx{});

  ChargeTrajectory traj;
  traj.grid = tgrid;
  traj.kind = ChargeTrajectory::Kind::scaled;
  traj.eps = eps;

  cplx trap = 0.0;  // int_0^{t_{j-1}} nl ds
  for (int j = 1; j <= n; ++j) {
    cplx a_q = 0.0, a_nl = 0.0, d_q = 0.0, d_nl = 0.0;
    if (gamma != 0.0) {
      for (int i = 0; i + 1 < j; ++i) {
        const int c = j - i;
        a_q += aw.early(c) * q[i] + aw.late(c) * q[i + 1];
        a_nl += aw.early(c) * nl[i] + aw.late(c) * nl[i + 1];
        d_q += mk.diff_early[c] * q[i] + mk.diff_late[c] * q[i + 1];
        d_nl += mk.diff_early[c] * nl[i] + mk.diff_late[c] * nl[i + 1];
      }
      a_q += aw.early(1) * q[j - 1];
      a_nl += aw.early(1) * nl[j - 1];
      d_q += mk.diff_early[1] * q[j - 1];
      d_nl += mk.diff_early[1] * nl[j - 1];
    } else {
      for (int i = 0; i + 1 < j; ++i) {
        const int c = j - i;
        a_q += aw.early(c) * q[i] + aw.late(c) * q[i + 1];
        d_q += mk.diff_early[c] * q[i] + mk.diff_late[c] * q[i + 1];
      }
      a_q += aw.early(1) * q[j - 1];
      d_q += mk.diff_early[1] * q[j - 1];
    }
    const cplx t_hist = trap + 0.5 * dt * nl[j - 1];
    const cplx known = a_q + four_pi_sqrt_pi_i * gamma * t_hist -
                       run.source[j] + c16 * d_q - c16 * gamma * el * d_nl -
                       gamma * el * a_nl;
    // a q_j + b nl(q_j) = -known
    q[j] = detail::solve_scalar_nonlinear(b / a, mu, -known / a, q[j - 1], j,
                                          traj.max_nonlinear_iters);
    nl[j] = charge_nonlinearity(q[j], mu);
    const cplx defect = a * q[j] + b * nl[j] + known;
    traj.max_equation_residual =
        std::max(traj.max_equation_residual, std::abs(defect));
    trap += 0.5 * dt * (nl[j - 1] + nl[j]);
    // the history sums are exactly the remainder convolutions
    run.y_partial[0][j] = -c16 * (d_q + mk.diff_late[1] * q[j]);
    run.y_partial[1][j] = c16 * gamma * el * (d_nl + mk.diff_late[1] * nl[j]);
    run.y_partial[2][j] = gamma * el * (a_nl + aw.diag() * nl[j]);
  }
  traj.q = std::move(q);
  run.q_traj = std::move(traj);
  return run;
}

RadialField reconstruct_scaled_state(const ScaledRun& run, int t_index) {
  if (t_index < 0 || t_index > run.tgrid.steps)
    throw std::out_of_range("reconstruct_scaled_state: node index");
  const double dt = run.tgrid.dt();
  const double t = run.tgrid.node(t_index);
  const double el = run.eps / run.ff.ell();

  std::vector<cplx> w(run.tgrid.n_nodes());
  for (int j = 0; j <= run.tgrid.steps; ++j) {
    const cplx qj = run.q_traj.q[j];
    w[j] = qj - run.params.gamma * el * charge_nonlinearity(qj, run.params.mu);
  }

  RadialField psi = run.psi0_eps;
  const auto nodes = psi.grid->nodes();
  for (int ik = 0; ik < psi.grid->n_nodes(); ++ik) {
    const double k2 = nodes[ik] * nodes[ik];
    cplx mom[2];
    exp_moments(cplx(0.0, k2 * dt), 1, mom);
    const cplx step = std::exp(cplx(0.0, k2 * dt));
    cplx rot = std::exp(cplx(0.0, -k2 * t));
    cplx J = 0.0;
    for (int i = 0; i < t_index; ++i) {
      J += rot * dt * (w[i] * mom[0] + (w[i + 1] - w[i]) * mom[1]);
      rot *= step;
      if ((i & 511) == 511) rot = std::exp(cplx(0.0, -k2 * (t - (i + 1) * dt)));
    }
    const double rk = run.ff.rho_hat(run.eps * nodes[ik]);
    psi.values[ik] = std::exp(cplx(0.0, -k2 * t)) * run.psi0_eps.values[ik] +
                     cplx(0.0, 1.0) * rk * J;
  }
  return psi;
}

std::pair<RadialField, cplx> decompose_scaled(const RadialField& psi_eps,
                                              const FormFactor& ff,
                                              double eps) {
  const RadialField rho = rho_eps_field(ff, eps, psi_eps.grid);
  const cplx q = eps / ff.ell() * inner(rho, psi_eps);
  const RadialField green = smeared_green(ff, eps, psi_eps.grid);
  RadialField phi = lin_comb(1.0, psi_eps, -q, green);
  return {std::move(phi), q};
}

std::pair<double, double> scaled_energy(const RadialField& psi_eps,
                                        const FormFactor& ff, double eps,
                                        const PhysParams& params) {
  auto [phi, q] = decompose_scaled(psi_eps, ff, eps);
  const double aq = std::abs(q);
  const double nl_term =
      params.gamma / (params.mu + 1.0) * std::pow(aq, 2.0 * params.mu + 2.0);
  const double gpsi = grad_norm(psi_eps);
  const double form1 = gpsi * gpsi - ff.ell() / eps * aq * aq + nl_term;
  const double gphi = grad_norm(phi);
  const double form2 = gphi * gphi + nl_term;
  return {form1, form2};
}

std::array<TimeSeries, 4> remainder_terms(const ScaledRun& run) {
  const TimeGrid& grid = run.tgrid;
  const int n = grid.steps;
  if (run.y_partial[0].size() != size_t(n + 1))
    throw std::logic_error("remainder_terms: run has not been solved");

  std::array<TimeSeries, 4> y{TimeSeries(grid), TimeSeries(grid),
                              TimeSeries(grid), TimeSeries(grid)};
  for (int i = 0; i < 3; ++i) y[i].v = run.y_partial[i];

  // Y4 = S - 4pi sqrt(pi i) int_0^t (U(s) psi0)(0) ds; the G part of psi0
  // contributes exactly 2 q0 sqrt(t).
  const TimeSeries h = propagator_trace(run.params, grid);
  const TimeSeries cum_h = cumulative_integral(h);
  for (int j = 1; j <= n; ++j) {
    y[3].v[j] = run.source[j] - four_pi_sqrt_pi_i * cum_h.v[j] -
                2.0 * run.params.q0 * std::sqrt(grid.node(j));
  }
  return y;
}

}  // namespace pointnls
