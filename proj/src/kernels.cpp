#include "pointnls/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "pointnls/oscillatory.hpp"
#include "pointnls/quadrature.hpp"

namespace pointnls {

cplx green_at_origin(double t) {
  if (!(t > 0.0)) throw std::domain_error("green_at_origin: t must be > 0");
  // (1/4pi) (pi i t)^{-1/2} = e^{-i pi/4} / (4 pi sqrt(pi t))
  const double mag = 1.0 / (4.0 * pi * std::sqrt(pi * t));
  return mag * std::conj(sqrt_i);
}

cplx fresnel_value(double s) {
  if (!(s > 0.0)) throw std::domain_error("fresnel_value: s must be > 0");
  return 0.5 * sqrt_pi / std::sqrt(s) * std::conj(sqrt_i);
}

cplx propagator_at_origin(const RadialField& phi0, double t,
                          bool* accuracy_warning) {
  if (phi0.tail_coeff != cplx(0.0, 0.0))
    throw std::domain_error("propagator_at_origin: field must have zero tail");
  if (t < 0.0) throw std::domain_error("propagator_at_origin: t must be >= 0");
  if (accuracy_warning) *accuracy_warning = false;
  if (t == 0.0) return value_at_origin(phi0);

  const KGrid& g = *phi0.grid;
  const double k_max = g.k_max();
  if (accuracy_warning && t * k_max * k_max > 1e8) *accuracy_warning = true;

  // u-scale on which the amplitude decays, from the sampled profile.
  double v_max = 0.0;
  for (const cplx& z : phi0.values) v_max = std::max(v_max, std::abs(z));
  double k_dec = k_max;
  const auto nodes = g.nodes();
  for (int i = g.n_nodes() - 1; i >= 0; --i) {
    if (std::abs(phi0.values[i]) > 0.01 * v_max) {
      k_dec = nodes[i];
      break;
    }
  }
  const double scale_u =
      std::max(k_dec * k_dec / std::log(100.0), k_max * k_max / 1024.0);

  const cplx integral = oscillatory_k_integral(
      [&](double k) { return k * k * field_eval(phi0, k); }, 0.0, k_max, t,
      scale_u);
  return 4.0 * pi * two_pi_pow_m32 * integral;
}

namespace {

// M0 = int_0^w (B+iv)^{-1/2} dv, M1 = int_0^w v (B+iv)^{-1/2} dv.
// Closed forms when w is comparable to |B|, binomial series for w << |B|
// (the closed forms cancel catastrophically there).
void sqrt_cell_moments(cplx B, double w, cplx& M0, cplx& M1) {
  const double aB = std::abs(B);
  if (w < 0.1 * aB) {
    const cplx r = 1.0 / std::sqrt(B);
    cplx c = 1.0;  // binomial(-1/2, n) (i/B)^n
    cplx s0 = 0.0, s1 = 0.0;
    double wn = w;  // w^{n+1}
    for (int n = 0; n < 12; ++n) {
      s0 += c * wn / double(n + 1);
      s1 += c * wn * w / double(n + 2);
      c *= (-0.5 - n) / double(n + 1) * cplx(0.0, 1.0) / B;
      wn *= w;
      if (std::abs(c) * wn < 1e-18) break;
    }
    M0 = r * s0;
    M1 = r * s1;
    return;
  }
  const cplx e1 = std::sqrt(B + cplx(0.0, w));
  const cplx e0 = std::sqrt(B);
  M0 = -2.0 * cplx(0.0, 1.0) * (e1 - e0);
  const cplx i32_1 = -(2.0 / 3.0) * e1 * e1 * e1 + 2.0 * B * e1;
  const cplx i32_0 = -(2.0 / 3.0) * e0 * e0 * e0 + 2.0 * B * e0;
  M1 = i32_1 - i32_0;
}

// Same for the (B+iv)^{-3/2} kernel.
void pow32_cell_moments(cplx B, double w, cplx& M0, cplx& M1) {
  const double aB = std::abs(B);
  if (w < 0.1 * aB) {
    const cplx r = pow_m32(B);
    cplx c = 1.0;  // binomial(-3/2, n) (i/B)^n
    cplx s0 = 0.0, s1 = 0.0;
    double wn = w;
    for (int n = 0; n < 12; ++n) {
      s0 += c * wn / double(n + 1);
      s1 += c * wn * w / double(n + 2);
      c *= (-1.5 - n) / double(n + 1) * cplx(0.0, 1.0) / B;
      wn *= w;
      if (std::abs(c) * wn < 1e-18) break;
    }
    M0 = r * s0;
    M1 = r * s1;
    return;
  }
  const cplx B1 = B + cplx(0.0, w);
  const cplx r1 = std::sqrt(B1), r0 = std::sqrt(B);
  M0 = 2.0 * cplx(0.0, 1.0) * (1.0 / r1 - 1.0 / r0);
  const cplx j1 = -2.0 * r1 - 2.0 * B / r1;
  const cplx j0 = -2.0 * r0 - 2.0 * B / r0;
  M1 = j1 - j0;
}

// (1 - e^{-ix}) / (ix), bounded at 0.
cplx s1_factor(double x) {
  if (std::abs(x) < 1e-4) {
    const cplx ix(0.0, x);
    return 1.0 - ix / 2.0 + ix * ix / 6.0 - ix * ix * ix / 24.0;
  }
  const cplx ix(0.0, x);
  return (1.0 - std::exp(-ix)) / ix;
}

// ((1+ix) e^{-ix} - 1) / x^2 -> 1/2 at 0.
cplx s2_factor(double x) {
  if (std::abs(x) < 0.01) {
    // coefficients (-i)^n (1-n)/n! of (1+ix)e^{-ix}, starting at n = 2
    cplx sum = 0.0;
    cplx a = cplx(-1.0, 0.0) * (1.0 - 2.0) / 2.0;  // n=2 term / x^0: 1/2
    double fact = 2.0;
    cplx mi_pow(-1.0, 0.0);  // (-i)^2
    double xp = 1.0;
    for (int n = 2; n < 16; ++n) {
      a = mi_pow * ((1.0 - n) / fact);
      sum += a * xp;
      xp *= x;
      mi_pow *= cplx(0.0, -1.0);
      fact *= (n + 1);
    }
    return sum;
  }
  const cplx ix(0.0, x);
  return ((1.0 + ix) * std::exp(-ix) - 1.0) / (x * x);
}

}  // namespace

cplx time_integrated_trace(const std::function<cplx(double)>& amp, double k_hi,
                           double t, double amp_scale_u) {
  if (t == 0.0) return 0.0;
  const double k_s = std::min(k_hi, std::sqrt(0.35 / t));
  cplx low = 0.0;
  if (k_s > 0.0) {
    const double scale_k = std::sqrt(amp_scale_u);
    const int panels = std::max(2, int(8.0 * k_s / scale_k) + 2);
    low = gl_integrate(
        [&](double k) { return amp(k) * t * s1_factor(k * k * t); }, 0.0, k_s,
        panels);
  }
  if (k_s >= k_hi) return low;
  const auto g2 = [&](double k) { return amp(k) / (k * k); };
  const cplx plain = oscillatory_k_integral(g2, k_s, k_hi, 0.0, amp_scale_u);
  const cplx osc = oscillatory_k_integral(g2, k_s, k_hi, t, amp_scale_u);
  return low + (plain - osc) / cplx(0.0, 1.0);
}

namespace {

// int_0^infty amp(k) [int_0^u v e^{-i k^2 v} dv] dk; used for the first
// moments of tabulated difference kernels.
cplx time2_integrated_trace(const std::function<cplx(double)>& amp,
                            double k_hi, double u, double amp_scale_u) {
  if (u == 0.0) return 0.0;
  const double k_s = std::min(k_hi, std::sqrt(0.35 / u));
  cplx low = 0.0;
  if (k_s > 0.0) {
    const double scale_k = std::sqrt(amp_scale_u);
    const int panels = std::max(2, int(8.0 * k_s / scale_k) + 2);
    low = gl_integrate(
        [&](double k) { return amp(k) * u * u * s2_factor(k * k * u); }, 0.0,
        k_s, panels);
  }
  if (k_s >= k_hi) return low;
  const auto g2 = [&](double k) { return amp(k) / (k * k); };
  const auto g4 = [&](double k) { return amp(k) / (k * k * k * k); };
  const cplx plain4 = oscillatory_k_integral(g4, k_s, k_hi, 0.0, amp_scale_u);
  const cplx osc4 = oscillatory_k_integral(g4, k_s, k_hi, u, amp_scale_u);
  const cplx osc2 = oscillatory_k_integral(g2, k_s, k_hi, u, amp_scale_u);
  return low - plain4 + osc4 + cplx(0.0, u) * osc2;
}

}  // namespace

MemoryKernel build_memory_kernel(const FormFactor& ff, double eps,
                                 const TimeGrid& grid) {
  if (!(eps > 0.0))
    throw std::invalid_argument("build_memory_kernel: eps must be > 0");
  MemoryKernel mk;
  mk.eps = eps;
  mk.grid = grid;
  const int n = grid.steps;
  const double dt = grid.dt();
  mk.samples.resize(n + 1);
  mk.diff_samples.assign(n + 1, cplx{});
  mk.diff_early.assign(n + 1, cplx{});
  mk.diff_late.assign(n + 1, cplx{});

  const double rh0 = FormFactor::rho_hat_zero();
  if (ff.is_gaussian()) {
    const double sig = ff.sigma();
    const double A = sig * sig * eps * eps;
    const double kappa = rh0 * rh0 * 0.5 * sqrt_pi;  // (2pi)^{-3} sqrt(pi)/2
    mk.k_early.assign(n + 1, cplx{});
    mk.k_late.assign(n + 1, cplx{});
    for (int j = 0; j <= n; ++j) {
      const double t = grid.node(j);
      mk.samples[j] = pow_m32(4.0 * pi * cplx(A, t));
      if (j > 0)
        mk.diff_samples[j] =
            kappa * (inv_sqrt(cplx(A, t)) - inv_sqrt(cplx(0.0, t)));
    }
    for (int c = 1; c <= n; ++c) {
      const double u1 = (c - 1) * dt;
      cplx m0a, m1a, m0f, m1f;
      sqrt_cell_moments(cplx(A, u1), dt, m0a, m1a);
      sqrt_cell_moments(cplx(0.0, u1), dt, m0f, m1f);
      const cplx d0 = kappa * (m0a - m0f);
      mk.diff_early[c] = kappa * (m1a - m1f) / dt;
      mk.diff_late[c] = d0 - mk.diff_early[c];
      cplx n0, n1;
      pow32_cell_moments(cplx(A, u1), dt, n0, n1);
      const double k_amp = std::pow(4.0 * pi, -1.5);
      mk.k_early[c] = k_amp * n1 / dt;
      mk.k_late[c] = k_amp * n0 - mk.k_early[c];
    }
    return mk;
  }

  // Tabulated path: Filon panels.
  const double k_hi = ff.spectral_cutoff() / eps;
  const double scale_u = ff.decay_scale_u(eps);
  const auto sq_amp = [&](double k) {
    const double r = ff.rho_hat(eps * k);
    return cplx(r * r, 0.0);
  };
  mk.samples[0] = 4.0 * pi *
                  gk_adaptive_real(
                      [&](double k) {
                        const double r = ff.rho_hat(eps * k);
                        return k * k * r * r;
                      },
                      0.0, k_hi, 1e-11);
  for (int j = 1; j <= n; ++j) {
    const double t = grid.node(j);
    mk.samples[j] =
        4.0 * pi *
        oscillatory_k_integral([&](double k) { return k * k * sq_amp(k); }, 0.0,
                               k_hi, t, scale_u);
    // The free part -rho_hat(0)^2 int_0^inf e^{-ik^2 t} dk is analytic; the
    // smeared part is negligible beyond k_hi by the cutoff certificate.
    mk.diff_samples[j] = oscillatory_k_integral(sq_amp, 0.0, k_hi, t, scale_u) -
                         rh0 * rh0 * fresnel_value(t);
  }
  // Cell moments from the cumulative kernels W(u) = int_0^u Dk and
  // V(u) = int_0^u v Dk(v) dv.
  std::vector<cplx> W(n + 1, cplx{}), V(n + 1, cplx{});
  for (int j = 1; j <= n; ++j) {
    const double u = grid.node(j);
    // subtract the free part analytically: int (0 - rh0^2) e^{-ik^2 v} over k
    // is already inside diff_amp, which decays at infinity only like -rh0^2;
    // handle it exactly through the split against the smeared part.
    W[j] = time_integrated_trace(sq_amp, k_hi, u, scale_u) -
           rh0 * rh0 * cplx(0.0, -1.0) * sqrt_pi_i * std::sqrt(u);
    V[j] = time2_integrated_trace(sq_amp, k_hi, u, scale_u) -
           rh0 * rh0 * (1.0 / 3.0) * std::conj(sqrt_i) * sqrt_pi *
               std::pow(u, 1.5);
  }
  for (int c = 1; c <= n; ++c) {
    const double u1 = (c - 1) * dt;
    const cplx d0 = W[c] - W[c - 1];
    mk.diff_early[c] = ((V[c] - V[c - 1]) - u1 * d0) / dt;
    mk.diff_late[c] = d0 - mk.diff_early[c];
  }
  return mk;
}

}  // namespace pointnls
