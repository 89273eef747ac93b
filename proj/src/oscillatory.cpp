#include "pointnls/oscillatory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "pointnls/quadrature.hpp"

namespace pointnls {

void exp_moments(cplx x, int m_max, cplx* out) {
  const double ax = std::abs(x);
  if (ax < 8.0) {
    // phi_m(x) = sum_n x^n / (n! (m+n+1))
    for (int m = 0; m <= m_max; ++m) {
      cplx term = 1.0;  // x^n / n!
      cplx sum = 1.0 / double(m + 1);
      for (int n = 1; n < 80; ++n) {
        term *= x / double(n);
        const cplx add = term / double(m + n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-30)) break;
      }
      out[m] = sum;
    }
    return;
  }
  const cplx ex = std::exp(x);
  out[0] = (ex - 1.0) / x;
  for (int m = 1; m <= m_max; ++m) out[m] = (ex - double(m) * out[m - 1]) / x;
}

namespace {

constexpr int kDeg = 5;  // amplitude interpolation degree per Filon cell

// Chebyshev-Lobatto nodes mapped to [0,1].
const std::array<double, kDeg + 1>& filon_nodes() {
  static const std::array<double, kDeg + 1> nodes = [] {
    std::array<double, kDeg + 1> n{};
    for (int j = 0; j <= kDeg; ++j) n[j] = 0.5 * (1.0 - std::cos(pi * j / kDeg));
    return n;
  }();
  return nodes;
}

// Inverse of the Vandermonde matrix on the local nodes, so that
// c = Vinv * samples gives the coefficients of sum_m c_m xi^m.
const std::array<std::array<double, kDeg + 1>, kDeg + 1>& filon_vinv() {
  static const auto vinv = [] {
    constexpr int n = kDeg + 1;
    std::array<std::array<double, 2 * n>, n> a{};
    const auto& nodes = filon_nodes();
    for (int i = 0; i < n; ++i) {
      double p = 1.0;
      for (int j = 0; j < n; ++j) {
        a[i][j] = p;
        p *= nodes[i];
      }
      a[i][n + i] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[piv], a[col]);
      const double d = a[col][col];
      for (int j = 0; j < 2 * n; ++j) a[col][j] /= d;
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a[r][col];
        if (f == 0.0) continue;
        for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
      }
    }
    std::array<std::array<double, n>, n> inv{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
  }();
  return vinv;
}

// One Filon cell [u0, u0+w]: interpolate B on local nodes, integrate the
// polynomial against e^{-i t u} exactly.
cplx filon_cell(const std::function<cplx(double)>& amp_u, double u0, double w,
                double t) {
  const auto& nodes = filon_nodes();
  const auto& vinv = filon_vinv();
  std::array<cplx, kDeg + 1> samples;
  for (int j = 0; j <= kDeg; ++j) samples[j] = amp_u(u0 + w * nodes[j]);
  std::array<cplx, kDeg + 1> coef{};
  for (int m = 0; m <= kDeg; ++m) {
    cplx s = 0.0;
    for (int j = 0; j <= kDeg; ++j) s += vinv[m][j] * samples[j];
    coef[m] = s;
  }
  std::array<cplx, kDeg + 1> mom;
  exp_moments(cplx(0.0, -t * w), kDeg, mom.data());
  cplx s = 0.0;
  for (int m = 0; m <= kDeg; ++m) s += coef[m] * mom[m];
  return w * std::exp(cplx(0.0, -t * u0)) * s;
}

}  // namespace

cplx oscillatory_k_integral(const std::function<cplx(double)>& amp,
                            double k_lo, double k_hi, double t,
                            double amp_scale_u, int cells_per_scale) {
  if (!(k_hi > k_lo)) return 0.0;
  if (!(amp_scale_u > 0.0)) throw std::invalid_argument("amp_scale_u must be > 0");
  const double at = std::abs(t);
  const int cps = std::max(4, cells_per_scale);

  // Slow-phase prefix handled by plain Gauss-Legendre panels in k.
  const double phase_cut = 0.5;
  double k_split = k_hi;
  if (at * (k_hi * k_hi) > phase_cut)
    k_split = std::max(k_lo, std::sqrt(phase_cut / at));

  cplx total = 0.0;
  if (k_split > k_lo) {
    const double scale_k = std::sqrt(amp_scale_u);
    std::vector<double> edges{k_lo};
    while (edges.back() < k_split) {
      const double k = edges.back();
      const double w = std::max(scale_k * scale_k / (2.0 * k + scale_k), 1e-300) / 3.0;
      edges.push_back(std::min(k_split, k + w));
      if (edges.size() > 4096) {
        edges.back() = k_split;
        break;
      }
    }
    const std::function<cplx(double)> f = [&](double k) {
      return amp(k) * std::exp(cplx(0.0, -t * k * k));
    };
    for (size_t i = 0; i + 1 < edges.size(); ++i)
      total += gl_integrate(f, edges[i], edges[i + 1], 1);
  }
  if (k_split >= k_hi) return total;

  // Filon segment in u = k^2.
  const double u_hi = k_hi * k_hi;
  double u = k_split * k_split;
  const std::function<cplx(double)> amp_u = [&](double uu) {
    const double k = std::sqrt(uu);
    return amp(k) / (2.0 * k);
  };
  const double w_cap = amp_scale_u / cps;
  int guard = 0;
  while (u < u_hi) {
    double w = std::min(u / cps, w_cap);
    w = std::min(w, u_hi - u);
    if (u + w > u_hi || ++guard > 2'000'000) w = u_hi - u;
    total += filon_cell(amp_u, u, w, t);
    u += w;
  }
  return total;
}

}  // namespace pointnls
