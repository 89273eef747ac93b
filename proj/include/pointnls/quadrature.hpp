#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pointnls/types.hpp"

namespace pointnls {

// 16-point Gauss-Legendre rule on [-1, 1].
std::span<const double> gl16_nodes();
std::span<const double> gl16_weights();

// Composite 16-point Gauss-Legendre over [a, b] split into n equal panels.
cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b,
                  int n_panels = 1);
double gl_integrate_real(const std::function<double(double)>& f, double a,
                         double b, int n_panels = 1);

// Adaptive Gauss-Kronrod 7/15 with bisection. Throws QuadratureError when the
// requested tolerance cannot be met within max_depth subdivisions.
cplx gk_adaptive(const std::function<cplx(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 0.0,
                 int max_depth = 40);
double gk_adaptive_real(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-12, double abs_tol = 0.0,
                        int max_depth = 40);

// Ordinary least squares of y against x; returns {slope, intercept, r2}.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double rms_residual = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace pointnls
