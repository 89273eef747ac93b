#pragma once

#include <vector>

#include "pointnls/time_series.hpp"

namespace pointnls {

// Product-integration weights for the Abel kernel (t-s)^{-1/2} against
// piecewise-linear data on a uniform grid. For the cell ending c steps before
// the target node, early(c) weights the cell's left value and late(c) its
// right value; early(c) + late(c) = 2 sqrt(dt) (sqrt(c) - sqrt(c-1)) exactly.
// All forms are rationalized so no cancellation occurs at large lag.
struct AbelWeights {
  explicit AbelWeights(const TimeGrid& grid);

  double early(int c) const { return early_[c]; }
  double late(int c) const { return late_[c]; }
  double diag() const { return late_[1]; }  // (4/3) sqrt(dt)

  // I^{1/2} f at node j given samples f_0..f_j.
  cplx apply(const std::vector<cplx>& f, int j) const;

 private:
  std::vector<double> early_, late_;
};

// I^{1/2} f (t) = int_0^t f(s) / sqrt(t-s) ds, node-exact for piecewise-linear
// f; output(0) = 0.
TimeSeries half_integral(const TimeSeries& f);

// I^{1/2} of c/sqrt(s) + g: the inverse-square-root part is never quadratured,
// it contributes the exact constant c*pi at every t > 0.
TimeSeries half_integral_with_sqrt_part(cplx c, const TimeSeries& g);

// D^{1/2} f = d/dt I^{1/2} f, realized as finite differences of the discrete
// half-integral: one-sided second order at the ends, centered inside.
TimeSeries half_derivative(const TimeSeries& f);

// Residual of int_0^t g(s) f(t-s) ds = (1/pi) int_0^t I^{1/2}g(s)
// (d/dt I^{1/2} f)(t-s) ds, which holds for f(0) = 0. Returns LHS - RHS.
TimeSeries convolve_halfkernel_residual(const TimeSeries& g,
                                        const TimeSeries& f);

// Cumulative integral int_0^{t_j} f ds by the trapezoid rule (exact for the
// piecewise-linear interpolant, matching the Abel weights' convention).
TimeSeries cumulative_integral(const TimeSeries& f);

}  // namespace pointnls
