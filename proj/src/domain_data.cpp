#include "pointnls/domain_data.hpp"

#include <cmath>

#include "pointnls/kernels.hpp"

namespace pointnls {

namespace {

const double pi32 = pi * sqrt_pi;  // pi^{3/2}

void validate_guard(double gamma, double mu) {
  if (!existence_guard_ok(gamma, mu))
    throw std::invalid_argument(
        "PhysParams: outside the global-existence region "
        "(need gamma >= 0, mu >= 0 or gamma < 0, 0 <= mu < 1)");
}

}  // namespace

PhysParams make_domain_data(double gamma, double mu, cplx q0,
                            std::shared_ptr<const KGrid> grid, double width,
                            double tail_scale, bool compensated) {
  validate_guard(gamma, mu);
  if (!(width > 0.0) || !(tail_scale > 0.0))
    throw std::invalid_argument("make_domain_data: scales must be positive");

  GaussianAmpPhi0 d;
  d.width = width;
  d.tail_scale = tail_scale;
  d.compensated = compensated;
  const double a = d.a();

  const cplx target = gamma * charge_nonlinearity(q0, mu);
  const double g0 = 1.0 / (width * width * width);  // unit-gaussian value at 0
  const cplx comp_at_origin =
      compensated ? cplx(-1.0 / (4.0 * pi32 * tail_scale), 0.0) : cplx(0.0);
  d.amp = (target - q0 * comp_at_origin) / g0;

  PhysParams p;
  p.gamma = gamma;
  p.mu = mu;
  p.q0 = q0;
  p.analytic = d;
  p.phi0 = make_field(std::move(grid), [&](double k) {
    cplx v = d.amp * std::exp(-0.5 * width * width * k * k);
    if (compensated)
      v -= q0 * two_pi_pow_m32 * std::exp(-a * k * k) / (k * k);
    return v;
  });
  return p;
}

PhysParams rescale_to_boundary(const RadialField& base, double gamma, double mu,
                               cplx q0) {
  validate_guard(gamma, mu);
  const cplx target = gamma * charge_nonlinearity(q0, mu);
  const cplx v = value_at_origin(base);
  cplx amp;
  if (std::abs(v) == 0.0) {
    if (std::abs(target) != 0.0)
      throw std::invalid_argument(
          "rescale_to_boundary: base profile vanishes at the origin, "
          "boundary condition cannot be satisfied");
    amp = 0.0;
  } else {
    amp = target / v;
  }
  PhysParams p;
  p.gamma = gamma;
  p.mu = mu;
  p.q0 = q0;
  p.phi0 = lin_comb(amp, base, 0.0, base);
  return p;
}

double data_boundary_residual(const PhysParams& p) {
  return std::abs(value_at_origin(p.phi0) -
                  p.gamma * charge_nonlinearity(p.q0, p.mu));
}

RadialField psi0_field(const PhysParams& p) {
  const bool comp = p.analytic && p.analytic->compensated;
  const double a = p.analytic ? p.analytic->a() : 0.0;
  RadialField psi = p.phi0;
  const auto nodes = psi.grid->nodes();
  for (int i = 0; i < psi.grid->n_nodes(); ++i) {
    const double k2 = nodes[i] * nodes[i];
    if (p.analytic) {
      // rebuild the charge part in the stable combined form
      const double s = comp ? -std::expm1(-a * k2) : 1.0;
      psi.values[i] = p.analytic->amp *
                          std::exp(-0.5 * p.analytic->width *
                                   p.analytic->width * k2) +
                      p.q0 * two_pi_pow_m32 * s / k2;
    } else {
      psi.values[i] += p.q0 * two_pi_pow_m32 / k2;
    }
  }
  psi.tail_coeff = p.q0;
  return psi;
}

RadialField build_initial_data(const PhysParams& p, const FormFactor& ff,
                               double eps, std::shared_ptr<const KGrid> grid) {
  if (!(eps > 0.0))
    throw std::invalid_argument("build_initial_data: eps must be > 0");
  const double k_max = grid->k_max();
  const double rh0 = FormFactor::rho_hat_zero();
  if (std::abs(ff.rho_hat(eps * k_max)) > 1e-7 * rh0)
    throw GridError("build_initial_data: k_max does not certify rho^eps * G");
  const bool comp = p.analytic && p.analytic->compensated;
  const double a = p.analytic ? p.analytic->a() : 0.0;
  if (comp && a * k_max * k_max < 32.0)
    throw GridError("build_initial_data: k_max does not certify the compensator");

  const bool gauss_ff = ff.is_gaussian();
  const double half_se2 =
      gauss_ff ? 0.5 * ff.sigma() * ff.sigma() * eps * eps : 0.0;

  RadialField out;
  if (p.analytic) {
    const GaussianAmpPhi0 d = *p.analytic;
    out = make_field(std::move(grid), [&](double k) {
      const double k2 = k * k;
      // rho_hat(eps k) - rho_hat(0) e^{-a k^2}, stable at small k
      double num;
      if (comp) {
        num = gauss_ff
                  ? rh0 * (std::expm1(-half_se2 * k2) - std::expm1(-a * k2))
                  : ff.rho_hat(eps * k) - rh0 * std::exp(-a * k2);
      } else {
        num = ff.rho_hat(eps * k);
      }
      return d.amp * std::exp(-0.5 * d.width * d.width * k2) +
             p.q0 * num / k2;
    });
  } else {
    const RadialField phi = p.phi0.grid->same_nodes(*grid)
                                ? p.phi0
                                : resample(p.phi0, grid);
    out = make_field(std::move(grid), [&](double k) {
      return field_eval(phi, k) + p.q0 * ff.rho_hat(eps * k) / (k * k);
    });
  }
  return out;
}

TimeSeries propagator_trace(const PhysParams& p, const TimeGrid& grid) {
  TimeSeries h(grid);
  if (p.analytic) {
    for (int j = 0; j <= grid.steps; ++j)
      h.v[j] = analytic::u_phi0_at_origin(*p.analytic, p.q0, grid.node(j));
    return h;
  }
  for (int j = 0; j <= grid.steps; ++j)
    h.v[j] = propagator_at_origin(p.phi0, grid.node(j));
  return h;
}

namespace analytic {

cplx u_phi0_at_origin(const GaussianAmpPhi0& d, cplx q0, double t) {
  const double w2 = d.width * d.width;
  cplx v = d.amp * pow_m32(cplx(w2, 2.0 * t));
  if (d.compensated) v -= q0 / (4.0 * pi32) * inv_sqrt(cplx(d.a(), t));
  return v;
}

cplx rho_u_phi0(const GaussianAmpPhi0& d, cplx q0, double sigma, double eps,
                double s) {
  const double se2 = sigma * sigma * eps * eps;
  const double w2 = d.width * d.width;
  cplx v = d.amp * pow_m32(cplx(se2 + w2, 2.0 * s));
  if (d.compensated)
    v -= q0 / (4.0 * pi32) * inv_sqrt(cplx(0.5 * se2 + d.a(), s));
  return v;
}

cplx int_rho_u_phi0(const GaussianAmpPhi0& d, cplx q0, double sigma, double eps,
                    double t) {
  const double se2 = sigma * sigma * eps * eps;
  const double b = se2 + d.width * d.width;
  const cplx i1(0.0, 1.0);
  cplx v = d.amp * i1 * (inv_sqrt(cplx(b, 2.0 * t)) - inv_sqrt(cplx(b, 0.0)));
  if (d.compensated) {
    const double c = 0.5 * se2 + d.a();
    v += q0 * i1 / (2.0 * pi32) *
         (std::sqrt(cplx(c, t)) - std::sqrt(cplx(c, 0.0)));
  }
  return v;
}

cplx int_rho_u_green(double sigma, double eps, double t) {
  const double A = sigma * sigma * eps * eps;
  return 1.0 / (4.0 * pi32) * cplx(0.0, -2.0) *
         (std::sqrt(cplx(A, t)) - sigma * eps);
}

}  // namespace analytic

}  // namespace pointnls
