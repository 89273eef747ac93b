#pragma once

#include "pointnls/limit_solver.hpp"
#include "pointnls/types.hpp"

namespace pointnls::detail {

// Solve q + c |q|^{2mu} q = b: damped fixed point, Newton fallback.
cplx solve_scalar_nonlinear(cplx c, double mu, cplx b, cplx guess, int node,
                            int& iters);

}  // namespace pointnls::detail
