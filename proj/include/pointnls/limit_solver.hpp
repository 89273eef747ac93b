#pragma once

#include "pointnls/domain_data.hpp"
#include "pointnls/fractional.hpp"

namespace pointnls {

struct ChargeTrajectory {
  enum class Kind { limit, scaled };
  TimeGrid grid;
  std::vector<cplx> q;
  Kind kind = Kind::limit;
  double eps = 0.0;  // scaled kind only
  double max_equation_residual = 0.0;
  int max_nonlinear_iters = 0;
};

struct DomainElement {
  RadialField phi;
  cplx q{0.0, 0.0};
};

struct StepFailure : std::runtime_error {
  int node;
  explicit StepFailure(int j)
      : std::runtime_error("nonlinear step failed to converge at node " +
                           std::to_string(j)),
        node(j) {}
};

// F(t_j) = 4 sqrt(pi i) I^{1/2}[(U(.)phi0)(0)](t_j) + q0; the G part of the
// initial datum contributes the exact constant q0 and is never quadratured.
TimeSeries forcing(const PhysParams& p, const TimeGrid& grid);

// Solves the subtracted charge equation
//   (q - q0) + 4 sqrt(pi i) gamma I^{1/2}(|q|^{2mu} q - |q0|^{2mu} q0)
//     = 4 sqrt(pi i) I^{1/2} f,      f = (U(.)phi0)(0) - gamma |q0|^{2mu} q0
// by Abel product-integration marching with a damped fixed point (Newton
// fallback) on the implicit node.
ChargeTrajectory solve_limit_charge(const PhysParams& p, const TimeGrid& grid);

// psi_hat(t,k) = e^{-ik^2 t} psi0_hat(k)
//              + i (2pi)^{-3/2} int_0^t e^{-ik^2 (t-s)} q(s) ds,
// cell-exact for the piecewise-linear trajectory. Green tail q(t).
RadialField reconstruct_psi(const ChargeTrajectory& traj, const PhysParams& p,
                            int t_index);

// Same state split as phi = psi - q G (zero tail by construction).
DomainElement reconstruct_state(const ChargeTrajectory& traj,
                                const PhysParams& p, int t_index);

// E[psi] = ||grad phi||^2 + gamma/(mu+1) |q|^{2mu+2}.
double limit_energy(const DomainElement& elem, const PhysParams& p);

// |phi(0) - gamma |q|^{2mu} q|.
double boundary_residual(const DomainElement& elem, const PhysParams& p);

}  // namespace pointnls
