#pragma once

#include <functional>

#include "pointnls/types.hpp"

namespace pointnls {

// phi_m(x) = int_0^1 s^m e^{x s} ds for m = 0..m_max (m_max <= 7).
// Series evaluation for small |x|, stable recurrence otherwise.
void exp_moments(cplx x, int m_max, cplx* out);

// int_{k_lo}^{k_hi} A(k) e^{-i k^2 t} dk for smooth amplitude A.
//
// Strategy: where the phase is slow (k^2 |t| small) plain composite
// Gauss-Legendre in k; elsewhere a Filon rule in u = k^2 with degree-5
// amplitude interpolation per cell and exact exponential moments, so the
// accuracy is set by the amplitude resolution alone, uniformly in t.
// amp_scale_u: the u-scale over which A varies appreciably (for a profile
// decaying like e^{-u/s} pass s). cells_per_scale controls resolution.
cplx oscillatory_k_integral(const std::function<cplx(double)>& amp,
                            double k_lo, double k_hi, double t,
                            double amp_scale_u, int cells_per_scale = 12);

}  // namespace pointnls
