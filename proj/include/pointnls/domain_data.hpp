#pragma once

#include <optional>

#include "pointnls/form_factor.hpp"
#include "pointnls/radial_field.hpp"
#include "pointnls/time_series.hpp"

namespace pointnls {

// Global-existence region of the limit flow.
inline bool existence_guard_ok(double gamma, double mu) {
  if (mu < 0.0) return false;
  if (gamma >= 0.0) return true;
  return mu < 1.0;
}

// Analytic description of the gaussian_amp initial datum
//   phi0_hat(k) = amp e^{-width^2 k^2 / 2}
//               - q0 (2pi)^{-3/2} e^{-a k^2} / k^2   (compensated only)
// with a = tail_scale^2. The compensator reproduces -q0 G at large distance,
// which keeps phi0 + q0 G square integrable; without it the k^-2 part of the
// full state never decays at k -> 0.
struct GaussianAmpPhi0 {
  cplx amp{0.0, 0.0};
  double width = 1.0;
  double tail_scale = 1.0;
  bool compensated = true;
  double a() const { return tail_scale * tail_scale; }
};

struct PhysParams {
  double gamma = 0.0;
  double mu = 0.0;
  cplx q0{0.0, 0.0};
  RadialField phi0;
  std::optional<GaussianAmpPhi0> analytic;
};

// Builds compliant data of gaussian_amp shape: the Gaussian amplitude is
// solved from the boundary condition phi0(0) = gamma |q0|^{2mu} q0.
PhysParams make_domain_data(double gamma, double mu, cplx q0,
                            std::shared_ptr<const KGrid> grid,
                            double width = 1.0, double tail_scale = 1.0,
                            bool compensated = true);

// Rescales an arbitrary base profile's amplitude to satisfy the boundary
// condition. Throws when the target is nonzero but the base vanishes at 0.
PhysParams rescale_to_boundary(const RadialField& base, double gamma, double mu,
                               cplx q0);

// |phi0(0) - gamma |q0|^{2mu} q0| of the stored data.
double data_boundary_residual(const PhysParams& p);

// Limit initial state psi0 = phi0 + q0 G (samples; green tail q0).
RadialField psi0_field(const PhysParams& p);

// Scaled initial state psi0_eps = phi0 + q0 rho^eps * G, zero tail
// (certified by the grid; GridError otherwise).
RadialField build_initial_data(const PhysParams& p, const FormFactor& ff,
                               double eps, std::shared_ptr<const KGrid> grid);

// h(t_j) = (U(t_j) phi0)(0): closed forms on the analytic path, Filon panels
// otherwise.
TimeSeries propagator_trace(const PhysParams& p, const TimeGrid& grid);

namespace analytic {
// Closed forms for gaussian form factor + gaussian_amp data.
cplx u_phi0_at_origin(const GaussianAmpPhi0& d, cplx q0, double t);
cplx rho_u_phi0(const GaussianAmpPhi0& d, cplx q0, double sigma, double eps,
                double s);
cplx int_rho_u_phi0(const GaussianAmpPhi0& d, cplx q0, double sigma, double eps,
                    double t);
// int_0^t (rho^eps, U(s) rho^eps * G) ds for gaussian rho.
cplx int_rho_u_green(double sigma, double eps, double t);
}  // namespace analytic

}  // namespace pointnls
