#include "pointnls/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pointnls {

namespace {

constexpr std::array<double, 16> kGl16Nodes = {
    -0.9894009349916499325961542, -0.9445750230732325760779884,
    -0.8656312023878317438804679, -0.7554044083550030338951012,
    -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193,
    0.0950125098376374401853193,  0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};

constexpr std::array<double, 16> kGl16Weights = {
    0.0271524594117540948517806, 0.0622535239386478928628438,
    0.0951585116824927848099251, 0.1246289712555338720524763,
    0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967,
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// Gauss-Kronrod 7/15 pair (QUADPACK dqk15 constants).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322541, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999234, 0.209482141084727828012999174892};

constexpr std::array<double, 4> kGauss7Weights = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct GkResult {
  cplx value;
  double error;
};

GkResult gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cplx kronrod = kKronrodWeights[7] * f(c);
  cplx gauss = kGauss7Weights[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const cplx f1 = f(c - h * kKronrodNodes[i]);
    const cplx f2 = f(c + h * kKronrodNodes[i]);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kGauss7Weights[i / 2] * (f1 + f2);
  }
  kronrod *= h;
  gauss *= h;
  return {kronrod, std::abs(kronrod - gauss)};
}

void gk_recurse(const std::function<cplx(double)>& f, double a, double b,
                double tol, int depth, int max_depth, cplx& sum,
                double& err_sum) {
  const GkResult r = gk15(f, a, b);
  if (r.error <= tol || depth >= max_depth) {
    if (depth >= max_depth && r.error > 64.0 * tol) {
      throw QuadratureError("gk_adaptive: tolerance not reached on [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    sum += r.value;
    err_sum += r.error;
    return;
  }
  const double m = 0.5 * (a + b);
  gk_recurse(f, a, m, 0.5 * tol, depth + 1, max_depth, sum, err_sum);
  gk_recurse(f, m, b, 0.5 * tol, depth + 1, max_depth, sum, err_sum);
}

}  // namespace

std::span<const double> gl16_nodes() { return kGl16Nodes; }
std::span<const double> gl16_weights() { return kGl16Weights; }

cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b,
                  int n_panels) {
  cplx total = 0.0;
  const double w = (b - a) / n_panels;
  for (int p = 0; p < n_panels; ++p) {
    const double lo = a + p * w;
    const double c = lo + 0.5 * w;
    cplx s = 0.0;
    for (int i = 0; i < 16; ++i) s += kGl16Weights[i] * f(c + 0.5 * w * kGl16Nodes[i]);
    total += 0.5 * w * s;
  }
  return total;
}

double gl_integrate_real(const std::function<double(double)>& f, double a,
                         double b, int n_panels) {
  return gl_integrate([&](double x) { return cplx(f(x), 0.0); }, a, b, n_panels)
      .real();
}

cplx gk_adaptive(const std::function<cplx(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_depth) {
  const GkResult first = gk15(f, a, b);
  const double scale = std::max(std::abs(first.value), 1e-300);
  const double tol = std::max(abs_tol, rel_tol * scale);
  cplx sum = 0.0;
  double err = 0.0;
  gk_recurse(f, a, b, tol, 0, max_depth, sum, err);
  return sum;
}

double gk_adaptive_real(const std::function<double(double)>& f, double a,
                        double b, double rel_tol, double abs_tol,
                        int max_depth) {
  return gk_adaptive([&](double x) { return cplx(f(x), 0.0); }, a, b, rel_tol,
                     abs_tol, max_depth)
      .real();
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need >= 2 points");
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = (syy > 0) ? 1.0 - ss_res / syy : 1.0;
  fit.rms_residual = std::sqrt(ss_res / n);
  return fit;
}

}  // namespace pointnls
