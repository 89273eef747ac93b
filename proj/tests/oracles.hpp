#pragma once

// Test-only oracles: independent quadrature routes and closed forms used to
// freeze expected values. Nothing here is allowed to call the implementation
// path it checks.

#include <functional>
#include <random>

#include "pointnls/quadrature.hpp"
#include "pointnls/radial_field.hpp"
#include "pointnls/time_series.hpp"

namespace oracles {

using pointnls::cplx;
using pointnls::pi;

// Brute-force oscillatory integral int_0^kmax A(k) e^{-i k^2 t} dk by
// adaptive Gauss-Kronrod with enough depth to resolve the phase.
inline cplx osc_integral_gk(const std::function<cplx(double)>& amp,
                            double k_max, double t, double rel_tol = 1e-10) {
  return pointnls::gk_adaptive(
      [&](double k) { return amp(k) * std::exp(cplx(0.0, -k * k * t)); }, 0.0,
      k_max, rel_tol, 0.0, 48);
}

// I^{1/2} of the piecewise-linear interpolant of f, per node, by adaptive
// quadrature with the square-root substitution s = t - v^2 (smooth integrand).
inline cplx half_integral_gk(const pointnls::TimeSeries& f, int j) {
  const double t = f.grid.node(j);
  const double dt = f.grid.dt();
  const auto interp = [&](double s) -> cplx {
    const double x = s / dt;
    int i = std::min(int(x), f.grid.steps - 1);
    const double u = x - i;
    return (1.0 - u) * f.v[i] + u * f.v[i + 1];
  };
  return 2.0 * pointnls::gk_adaptive(
                   [&](double v) { return interp(t - v * v); }, 0.0,
                   std::sqrt(t), 1e-11, 1e-14, 48);
}

// Random Schwartz-type radial field: sum of a few gaussians with random
// complex amplitudes and O(1) widths.
inline pointnls::RadialField random_field(
    std::shared_ptr<const pointnls::KGrid> grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> w(0.4, 1.6);
  struct Term {
    cplx a;
    double s;
  };
  std::vector<Term> terms;
  for (int i = 0; i < 3; ++i) terms.push_back({cplx(u(rng), u(rng)), w(rng)});
  return pointnls::make_field(std::move(grid), [terms](double k) {
    cplx v = 0.0;
    for (const auto& t : terms) v += t.a * std::exp(-0.5 * t.s * t.s * k * k);
    return v;
  });
}

}  // namespace oracles
