#pragma once

#include <vector>

#include "pointnls/form_factor.hpp"
#include "pointnls/radial_field.hpp"
#include "pointnls/time_series.hpp"

namespace pointnls {

// (U(t) G)(0) = (1/4pi) (pi i t)^{-1/2}.
cplx green_at_origin(double t);

// int_0^inf e^{-i k^2 s} dk = (1/(2 sqrt s)) sqrt(pi/i).
cplx fresnel_value(double s);

// (U(t) phi0)(0) = (2pi)^{-3/2} 4pi int k^2 e^{-i k^2 t} phi0_hat(k) dk.
// Filon-type panels keep the accuracy amplitude-limited, uniformly in t;
// accuracy_warning is set when the accumulated phase exceeds what double
// precision can represent faithfully.
cplx propagator_at_origin(const RadialField& phi0, double t,
                          bool* accuracy_warning = nullptr);

// Time kernels of the scaled charge equation on a uniform grid.
//
//   K(t)  = (rho^eps, U(t) rho^eps) = 4pi int k^2 rho_hat(eps k)^2 e^{-ik^2 t} dk
//   Dk(t) = int (rho_hat(eps k)^2 - rho_hat(0)^2) e^{-ik^2 t} dk
//
// diff_early/diff_late are the product-integration moments of Dk against
// piecewise-linear data (lag convention as in AbelWeights); k_early/k_late
// the same for K, used by the untransformed-equation residual check.
// diff_samples[0] is stored as 0: Dk diverges at t -> 0 and only its cell
// moments are ever used there.
struct MemoryKernel {
  double eps = 0.0;
  TimeGrid grid;
  std::vector<cplx> samples;        // K(t_j)
  std::vector<cplx> diff_samples;   // Dk(t_j), j >= 1
  std::vector<cplx> diff_early, diff_late;
  std::vector<cplx> k_early, k_late;
};

MemoryKernel build_memory_kernel(const FormFactor& ff, double eps,
                                 const TimeGrid& grid);

// int_0^t amp(k) (1 - e^{-i k^2 t'}) / (i k^2) dk for amplitude bounded at
// k = 0 and decaying beyond k_hi (used for time-integrated traces of
// tabulated form factors).
cplx time_integrated_trace(const std::function<cplx(double)>& amp, double k_hi,
                           double t, double amp_scale_u);

}  // namespace pointnls
