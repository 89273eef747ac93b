#include "pointnls/fractional.hpp"

#include <cmath>

namespace pointnls {

AbelWeights::AbelWeights(const TimeGrid& grid) {
  const int n = grid.steps;
  const double rdt = std::sqrt(grid.dt());
  early_.assign(n + 1, 0.0);
  late_.assign(n + 1, 0.0);
  for (int c = 1; c <= n; ++c) {
    const double s1 = std::sqrt(double(c));
    const double s0 = std::sqrt(double(c - 1));
    // late = (2 rdt / 3) (3c+1) / (2c s1 + (2c+1) s0)
    late_[c] = 2.0 * rdt / 3.0 * (3.0 * c + 1.0) /
               (2.0 * c * s1 + (2.0 * c + 1.0) * s0);
    // early = 2 rdt ((3c-1) s1 + (3c+2) s0) / (3 (s1+s0) (2c s1 + (2c+1) s0))
    early_[c] = 2.0 * rdt * ((3.0 * c - 1.0) * s1 + (3.0 * c + 2.0) * s0) /
                (3.0 * (s1 + s0) * (2.0 * c * s1 + (2.0 * c + 1.0) * s0));
  }
}

cplx AbelWeights::apply(const std::vector<cplx>& f, int j) const {
  cplx sum = 0.0;
  for (int i = 0; i < j; ++i) {
    const int c = j - i;
    sum += early_[c] * f[i] + late_[c] * f[i + 1];
  }
  return sum;
}

TimeSeries half_integral(const TimeSeries& f) {
  const AbelWeights w(f.grid);
  TimeSeries out(f.grid);
  for (int j = 1; j <= f.grid.steps; ++j) out.v[j] = w.apply(f.v, j);
  return out;
}

TimeSeries half_integral_with_sqrt_part(cplx c, const TimeSeries& g) {
  TimeSeries out = half_integral(g);
  for (int j = 1; j <= g.grid.steps; ++j) out.v[j] += c * pi;
  return out;
}

TimeSeries half_derivative(const TimeSeries& f) {
  const TimeSeries h = half_integral(f);
  const int n = f.grid.steps;
  const double dt = f.grid.dt();
  TimeSeries out(f.grid);
  out.v[0] = (-3.0 * h.v[0] + 4.0 * h.v[1] - h.v[2]) / (2.0 * dt);
  for (int j = 1; j < n; ++j) out.v[j] = (h.v[j + 1] - h.v[j - 1]) / (2.0 * dt);
  out.v[n] = (3.0 * h.v[n] - 4.0 * h.v[n - 1] + h.v[n - 2]) / (2.0 * dt);
  return out;
}

TimeSeries convolve_halfkernel_residual(const TimeSeries& g,
                                        const TimeSeries& f) {
  if (!(g.grid == f.grid))
    throw std::invalid_argument("convolve_halfkernel_residual: grid mismatch");
  if (std::abs(f.v[0]) != 0.0)
    throw std::invalid_argument("convolve_halfkernel_residual: needs f(0) = 0");
  const int n = g.grid.steps;
  const double dt = g.grid.dt();
  const TimeSeries a = half_integral(g);
  TimeSeries b = half_derivative(f);
  // Near t = 0, I^{1/2} f is an odd series in v = sqrt(t) (f(0) = 0 removes
  // the v^1 term's derivative blow-up), so differentiate the degree-4
  // interpolant in v there; the plain stencils only see the v^3 layer.
  {
    const TimeSeries h = half_integral(f);
    b.v[0] = 0.0;
    const int m_sten = std::min(4, n);
    for (int j = 1; j <= std::min(3, n - 1); ++j) {
      const double vj = std::sqrt(double(j));
      double dsum_re = 0.0, dsum_im = 0.0;
      for (int m = 0; m <= m_sten; ++m) {
        // derivative of the Lagrange basis at v_j on nodes sqrt(0..4)
        double dl = 0.0;
        for (int r = 0; r <= m_sten; ++r) {
          if (r == m) continue;
          double prod = 1.0;
          for (int s = 0; s <= m_sten; ++s) {
            if (s == m || s == r) continue;
            prod *= (vj - std::sqrt(double(s))) /
                    (std::sqrt(double(m)) - std::sqrt(double(s)));
          }
          dl += prod / (std::sqrt(double(m)) - std::sqrt(double(r)));
        }
        dsum_re += dl * h.v[m].real();
        dsum_im += dl * h.v[m].imag();
      }
      // dH/dt = h'(v) / (2 v sqrt(dt) * sqrt(dt))
      b.v[j] = cplx(dsum_re, dsum_im) / (2.0 * vj * dt);
    }
  }
  TimeSeries out(g.grid);
  // Navot endpoint correction for the sqrt-type behavior of the right-hand
  // integrand at both ends (I^{1/2}g ~ c sqrt(s), D^{1/2}f ~ c' sqrt(t-s));
  // -zeta(-1/2) = 0.2078862...
  const double navot = 0.20788622497735456602;
  for (int j = 1; j <= n; ++j) {
    cplx lhs = 0.0, rhs = 0.0;
    for (int i = 0; i <= j; ++i) {
      const double w = (i == 0 || i == j) ? 0.5 * dt : dt;
      lhs += w * g.v[i] * f.v[j - i];
      rhs += w * a.v[i] * b.v[j - i];
    }
    if (j >= 2) rhs += navot * dt * (a.v[1] * b.v[j - 1] + a.v[j - 1] * b.v[1]);
    out.v[j] = lhs - rhs / pi;
  }
  return out;
}

TimeSeries cumulative_integral(const TimeSeries& f) {
  TimeSeries out(f.grid);
  const double dt = f.grid.dt();
  cplx acc = 0.0;
  for (int j = 1; j <= f.grid.steps; ++j) {
    acc += 0.5 * dt * (f.v[j - 1] + f.v[j]);
    out.v[j] = acc;
  }
  return out;
}

}  // namespace pointnls
