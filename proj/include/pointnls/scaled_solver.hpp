#pragma once

#include <array>

#include "pointnls/kernels.hpp"
#include "pointnls/limit_solver.hpp"

namespace pointnls {

// One solved scaled problem at fixed eps: trajectory, kernels and the source
// table (everything remainder_terms and reconstruction need).
struct ScaledRun {
  double eps = 0.0;
  FormFactor ff;
  PhysParams params;
  TimeGrid tgrid;
  std::shared_ptr<const KGrid> kgrid;

  ChargeTrajectory q_traj;
  MemoryKernel kernel;
  RadialField psi0_eps;
  std::vector<cplx> source;   // S(t_j) = 4pi sqrt(pi i) int_0^{t_j} (rho^e, U psi0^e)
  cplx q0_eps{0.0, 0.0};

  // Y1..Y3 accumulated during the march (the history sums are already there);
  // remainder_terms adds Y4 from the source split.
  std::array<std::vector<cplx>, 3> y_partial;

  double diag_ratio = 0.0;    // |implicit diagonal| / Abel diagonal (conditioning)
};

// Marches the reformulated charge equation
//   I^{1/2} q = -4pi sqrt(pi i) gamma int nl(q)
//             + 4pi sqrt(pi i) int (rho^e, U(s) psi0^e) ds + Y1 + Y2 + Y3
// with product-integration weights for every kernel; the Abel part of the
// free kernel cancels exactly against the difference kernel's free part, so
// the implicit diagonal is the smeared-kernel moment.
ScaledRun solve_scaled_charge(const FormFactor& ff, double eps,
                              const PhysParams& params, const TimeGrid& tgrid,
                              std::shared_ptr<const KGrid> kgrid);

// psi^e_hat(t,k) = e^{-ik^2 t} psi0e_hat(k)
//   + i rho_hat(eps k) int_0^t e^{-ik^2(t-s)} [q - gamma (eps/l) nl(q)](s) ds.
RadialField reconstruct_scaled_state(const ScaledRun& run, int t_index);

// q^e = (eps/l) (rho^e, psi); phi^e = psi - q^e rho^e * G.
std::pair<RadialField, cplx> decompose_scaled(const RadialField& psi_eps,
                                              const FormFactor& ff, double eps);

// (form1, form2): ||grad psi||^2 - (l/eps)|q^e|^2 + gamma/(mu+1)|q^e|^{2mu+2}
// and ||grad phi^e||^2 + gamma/(mu+1)|q^e|^{2mu+2}; algebraically equal.
std::pair<double, double> scaled_energy(const RadialField& psi_eps,
                                        const FormFactor& ff, double eps,
                                        const PhysParams& params);

// Y1..Y4 on the grid (same discrete operators as the solver).
std::array<TimeSeries, 4> remainder_terms(const ScaledRun& run);

}  // namespace pointnls
