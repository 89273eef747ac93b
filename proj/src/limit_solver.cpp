#include "pointnls/limit_solver.hpp"

#include <cmath>

#include "pointnls/oscillatory.hpp"
#include "scalar_step.hpp"

namespace pointnls::detail {

// Solve q + c * |q|^{2mu} q = b: damped fixed point with Newton fallback.
// Damping 0.5 engages when the Lipschitz estimate |c| (2mu+1) |q|^{2mu}
// reaches 1. Returns the iteration count via iters.
namespace {

cplx newton_step(cplx c, double mu, cplx b, cplx q, bool& singular) {
  const double x = q.real(), y = q.imag();
  const double r2 = x * x + y * y;
  const double r2mu = (mu == 0.0) ? 1.0 : std::pow(r2, mu);
  // d(|q|^{2mu} q): |q|^{2mu} I plus the rank-one 2mu |q|^{2mu-2} q q^T;
  // at q = 0 with mu > 0 the derivative is taken as 0.
  double dxx = 0.0, dxy = 0.0, dyy = 0.0;
  if (r2 > 0.0 || mu == 0.0) {
    const double r2mum1 = (mu == 0.0) ? 0.0 : 2.0 * mu * std::pow(r2, mu - 1.0);
    dxx = r2mu + r2mum1 * x * x;
    dxy = r2mum1 * x * y;
    dyy = r2mu + r2mum1 * y * y;
  }
  const cplx f = q + c * charge_nonlinearity(q, mu) - b;
  const double a11 = 1.0 + c.real() * dxx - c.imag() * dxy;
  const double a12 = c.real() * dxy - c.imag() * dyy;
  const double a21 = c.imag() * dxx + c.real() * dxy;
  const double a22 = 1.0 + c.imag() * dxy + c.real() * dyy;
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0 || !std::isfinite(det)) {
    singular = true;
    return {0.0, 0.0};
  }
  singular = false;
  return {(f.real() * a22 - f.imag() * a12) / det,
          (a11 * f.imag() - a21 * f.real()) / det};
}

}  // namespace

cplx solve_scalar_nonlinear(cplx c, double mu, cplx b, cplx guess, int node,
                            int& iters) {
  const double tol = 1e-14;
  const auto residual = [&](cplx q) {
    return std::abs(q + c * charge_nonlinearity(q, mu) - b);
  };

  // Damped fixed point while the Lipschitz estimate keeps it contractive.
  const double lip0 =
      std::abs(c) * (2.0 * mu + 1.0) *
      std::pow(std::abs(guess) + 1e-300, 2.0 * mu);
  cplx q = guess;
  if (lip0 < 0.9) {
    double prev_delta = 1e300;
    for (int it = 0; it < 50; ++it) {
      const cplx next = b - c * charge_nonlinearity(q, mu);
      const double lip = std::abs(c) * (2.0 * mu + 1.0) *
                         std::pow(std::abs(q) + 1e-300, 2.0 * mu);
      const double theta = (lip >= 1.0) ? 0.5 : 1.0;
      const cplx updated = (1.0 - theta) * q + theta * next;
      const double delta = std::abs(updated - q);
      q = updated;
      if (delta <= tol * (1.0 + std::abs(q))) {
        iters = std::max(iters, it + 1);
        return q;
      }
      if (delta > 4.0 * prev_delta || !std::isfinite(delta)) break;
      prev_delta = delta;
    }
  }

  // Newton with residual-decrease line search, restarted from the guess.
  q = guess;
  for (int it = 0; it < 80; ++it) {
    const double f0 = residual(q);
    if (f0 <= tol * (1.0 + std::abs(q))) {
      iters = std::max(iters, 50 + it);
      return q;
    }
    bool singular = false;
    cplx step = newton_step(c, mu, b, q, singular);
    if (singular) step = cplx(f0, f0);  // nudge off the singular point
    double alpha = 1.0;
    while (alpha > 1e-6 && residual(q - alpha * step) > (1.0 - 0.25 * alpha) * f0)
      alpha *= 0.5;
    q -= alpha * step;
  }
  if (residual(q) <= 1e-11 * (1.0 + std::abs(q))) return q;
  throw StepFailure(node);
}

}  // namespace pointnls::detail

namespace pointnls {

TimeSeries forcing(const PhysParams& p, const TimeGrid& grid) {
  const TimeSeries h = propagator_trace(p, grid);
  TimeSeries out = half_integral(h);
  for (cplx& v : out.v) v = four_sqrt_pi_i * v + p.q0;
  return out;
}

ChargeTrajectory solve_limit_charge(const PhysParams& p, const TimeGrid& grid) {
  if (!existence_guard_ok(p.gamma, p.mu))
    throw std::invalid_argument("solve_limit_charge: existence guard violated");
  const int n = grid.steps;
  const AbelWeights aw(grid);

  const TimeSeries h = propagator_trace(p, grid);
  const TimeSeries ih = half_integral(h);

  const cplx nl0 = charge_nonlinearity(p.q0, p.mu);
  std::vector<cplx> q(n + 1), d(n + 1);  // d_m = nl(q_m) - nl(q_0)
  q[0] = p.q0;
  d[0] = 0.0;

  ChargeTrajectory traj;
  traj.grid = grid;
  traj.kind = ChargeTrajectory::Kind::limit;

  const cplx cgamma = four_sqrt_pi_i * p.gamma;
  for (int j = 1; j <= n; ++j) {
    cplx hist = 0.0;
    for (int i = 0; i + 1 < j; ++i) {
      const int c = j - i;
      hist += aw.early(c) * d[i] + aw.late(c) * d[i + 1];
    }
    hist += aw.early(1) * d[j - 1];  // the last cell's early node
    const double tj = grid.node(j);
    const cplx rhs = p.q0 +
                     four_sqrt_pi_i * (ih.v[j] - p.gamma * nl0 * 2.0 * std::sqrt(tj)) -
                     cgamma * (hist - aw.diag() * nl0);
    // q + cgamma * diag * nl(q) = rhs
    q[j] = detail::solve_scalar_nonlinear(cgamma * aw.diag(), p.mu, rhs,
                                          q[j - 1], j,
                                          traj.max_nonlinear_iters);
    d[j] = charge_nonlinearity(q[j], p.mu) - nl0;
    traj.max_equation_residual =
        std::max(traj.max_equation_residual,
                 std::abs(q[j] + cgamma * aw.diag() * d[j] - rhs));
  }
  traj.q = std::move(q);
  return traj;
}

RadialField reconstruct_psi(const ChargeTrajectory& traj, const PhysParams& p,
                            int t_index) {
  if (t_index < 0 || t_index > traj.grid.steps)
    throw std::out_of_range("reconstruct_psi: node index");
  const RadialField psi0 = psi0_field(p);
  const double dt = traj.grid.dt();
  const double t = traj.grid.node(t_index);

  RadialField psi = psi0;
  const auto nodes = psi.grid->nodes();
  for (int ik = 0; ik < psi.grid->n_nodes(); ++ik) {
    const double k2 = nodes[ik] * nodes[ik];
    cplx mom[2];
    exp_moments(cplx(0.0, k2 * dt), 1, mom);
    const cplx step = std::exp(cplx(0.0, k2 * dt));
    cplx rot = std::exp(cplx(0.0, -k2 * t));  // e^{-i k^2 (t - t_i)}, i = 0
    cplx J = 0.0;
    for (int i = 0; i < t_index; ++i) {
      J += rot * dt * (traj.q[i] * mom[0] + (traj.q[i + 1] - traj.q[i]) * mom[1]);
      rot *= step;
      if ((i & 511) == 511) rot = std::exp(cplx(0.0, -k2 * (t - (i + 1) * dt)));
    }
    psi.values[ik] = std::exp(cplx(0.0, -k2 * t)) * psi0.values[ik] +
                     cplx(0.0, 1.0) * two_pi_pow_m32 * J;
  }
  psi.tail_coeff = traj.q[t_index];
  return psi;
}

DomainElement reconstruct_state(const ChargeTrajectory& traj,
                                const PhysParams& p, int t_index) {
  RadialField psi = reconstruct_psi(traj, p, t_index);
  const cplx qt = traj.q[t_index];
  const auto nodes = psi.grid->nodes();
  for (int ik = 0; ik < psi.grid->n_nodes(); ++ik)
    psi.values[ik] -= qt * two_pi_pow_m32 / (nodes[ik] * nodes[ik]);
  psi.tail_coeff = 0.0;
  return DomainElement{std::move(psi), qt};
}

double limit_energy(const DomainElement& elem, const PhysParams& p) {
  const double g = grad_norm(elem.phi);
  const double aq = std::abs(elem.q);
  return g * g + p.gamma / (p.mu + 1.0) * std::pow(aq, 2.0 * p.mu + 2.0);
}

double boundary_residual(const DomainElement& elem, const PhysParams& p) {
  return std::abs(value_at_origin(elem.phi) -
                  p.gamma * charge_nonlinearity(elem.q, p.mu));
}

}  // namespace pointnls
