#include "pointnls/form_factor.hpp"

#include <algorithm>
#include <cmath>

#include "pointnls/quadrature.hpp"

namespace pointnls {

namespace {

double sinc(double z) {
  if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

struct CubicSpline {
  std::vector<double> x, y, m;  // m: second derivatives (natural BCs)

  void build(std::vector<double> xs, std::vector<double> ys) {
    x = std::move(xs);
    y = std::move(ys);
    const size_t n = x.size();
    m.assign(n, 0.0);
    if (n < 3) return;
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      d[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    for (size_t i = 2; i + 1 < n; ++i) {
      const double f = a[i] / b[i - 1];
      b[i] -= f * c[i - 1];
      d[i] -= f * d[i - 1];
    }
    for (size_t i = n - 2; i >= 1; --i) {
      m[i] = (d[i] - c[i] * m[i + 1]) / b[i];
      if (i == 1) break;
    }
  }

  double eval(double t) const {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    size_t hi = std::upper_bound(x.begin(), x.end(), t) - x.begin();
    size_t lo = hi - 1;
    const double h = x[hi] - x[lo];
    const double u = (t - x[lo]) / h;
    const double v = 1.0 - u;
    return v * y[lo] + u * y[hi] +
           h * h / 6.0 * (v * (v * v - 1.0) * m[lo] + u * (u * u - 1.0) * m[hi]);
  }
};

}  // namespace

struct FormFactor::Table {
  CubicSpline rho_hat;     // on [0, k_end]
  double k_end = 0.0;
  double tail_value = 0.0;  // rho_hat at k_end
  double tail_rate = 0.0;   // rho_hat(k) ~ tail_value * exp(-rate (k^2 - k_end^2))
};

FormFactor FormFactor::make_gaussian(double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("FormFactor: sigma must be positive");
  FormFactor ff;
  ff.kind_ = Kind::gaussian;
  ff.sigma_ = sigma;
  ff.finalize();
  return ff;
}

FormFactor FormFactor::make_tabulated(std::span<const double> x,
                                      std::span<const double> rho) {
  if (x.size() != rho.size() || x.size() < 8)
    throw std::invalid_argument("FormFactor: need >= 8 radial samples");
  for (size_t i = 0; i < x.size(); ++i) {
    if (i > 0 && !(x[i] > x[i - 1]))
      throw std::invalid_argument("FormFactor: radii must increase");
    if (!(x[i] >= 0.0) || !(rho[i] >= 0.0) || !std::isfinite(rho[i]))
      throw std::invalid_argument("FormFactor: rho must be finite and >= 0");
  }

  CubicSpline profile;
  profile.build(std::vector<double>(x.begin(), x.end()),
                std::vector<double>(rho.begin(), rho.end()));
  const double x_max = x.back();

  const double mass = 4.0 * pi *
                      gk_adaptive_real(
                          [&](double r) { return r * r * profile.eval(r); }, 0.0,
                          x_max, 1e-13);
  if (!(mass > 0.0))
    throw std::invalid_argument("FormFactor: profile has zero mass");

  // Radial sine transform of the unit-mass profile.
  const auto transform = [&](double k) {
    const int panels = 8 + int(x_max * k / 2.0);
    return std::sqrt(2.0 / pi) / mass *
           gl_integrate_real(
               [&](double r) { return r * r * profile.eval(r) * sinc(k * r); },
               0.0, x_max, panels);
  };

  // Extend the k-table until rho_hat has decayed well below working precision.
  const double rh0 = rho_hat_zero();
  double k_end = 4.0 / x_max * 8.0;
  for (int iter = 0; iter < 40; ++iter) {
    if (std::abs(transform(k_end)) < 1e-10 * rh0 &&
        std::abs(transform(0.93 * k_end)) < 1e-10 * rh0)
      break;
    k_end *= 1.5;
    if (iter == 39)
      throw std::invalid_argument("FormFactor: tabulated profile does not decay");
  }

  const int n_tab = 2048;
  std::vector<double> kk(n_tab + 1), vv(n_tab + 1);
  for (int j = 0; j <= n_tab; ++j) {
    kk[j] = k_end * j / n_tab;
    vv[j] = (j == 0) ? rh0 : transform(kk[j]);
  }

  auto table = std::make_shared<Table>();
  table->k_end = k_end;
  table->tail_value = vv[n_tab];
  // Gaussian-type tail fit from the last clearly positive stretch.
  table->tail_rate = 0.0;
  for (int j = n_tab - 1; j > n_tab / 2; --j) {
    if (vv[j] > 0.0 && vv[n_tab] > 0.0 && vv[j] > vv[n_tab]) {
      table->tail_rate =
          std::log(vv[j] / vv[n_tab]) / (kk[n_tab] * kk[n_tab] - kk[j] * kk[j]);
      break;
    }
  }
  table->rho_hat.build(std::move(kk), std::move(vv));

  FormFactor ff;
  ff.kind_ = Kind::tabulated;
  ff.table_ = std::move(table);
  ff.finalize();
  return ff;
}

double FormFactor::sigma() const {
  if (kind_ != Kind::gaussian)
    throw std::logic_error("FormFactor: sigma() on non-gaussian kind");
  return sigma_;
}

double FormFactor::rho_hat(double k) const {
  k = std::abs(k);  // rho_hat is even
  if (kind_ == Kind::gaussian)
    return two_pi_pow_m32 * std::exp(-0.5 * sigma_ * sigma_ * k * k);
  const Table& t = *table_;
  if (k <= t.k_end) return t.rho_hat.eval(k);
  if (t.tail_rate <= 0.0) return 0.0;
  return t.tail_value * std::exp(-t.tail_rate * (k * k - t.k_end * t.k_end));
}

double FormFactor::decay_scale_u(double eps) const {
  const double kh = k_half_ / eps;  // in k; u-scale from the half-decay point
  return kh * kh / std::log(4.0);   // rho_hat^2 halves over u * ln2 / ... ~ fit
}

void FormFactor::finalize() {
  const double rh0 = rho_hat_zero();

  // Certified cutoff: rho_hat(k)^2 < 1e-16 rho_hat(0)^2 beyond k_cut_.
  double kc = (kind_ == Kind::gaussian) ? 6.1 / sigma_ : table_->k_end * 0.25;
  for (int iter = 0; iter < 60; ++iter) {
    if (std::abs(rho_hat(kc)) < 1e-8 * rh0 && std::abs(rho_hat(1.11 * kc)) < 1e-8 * rh0)
      break;
    kc *= 1.4;
    if (iter == 59) throw QuadratureError("FormFactor: rho_hat does not decay");
  }
  k_cut_ = kc;

  // Half-decay scale used to size oscillatory-quadrature cells.
  double lo = 0.0, hi = kc;
  for (int iter = 0; iter < 200 && std::abs(rho_hat(hi)) > 0.5 * rh0; ++iter) hi *= 1.3;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (std::abs(rho_hat(mid)) > 0.5 * rh0 ? lo : hi) = mid;
  }
  k_half_ = 0.5 * (lo + hi);

  ell_ = compute_ell(*this);

  if (kind_ == Kind::gaussian) {
    // 4pi (2pi)^{-3} sigma^{-1} sqrt(pi) (sqrt(2) - 1)
    green_gap_ = (std::sqrt(2.0) - 1.0) * sqrt_pi / (2.0 * pi * pi * sigma_);
  } else {
    const double body = gk_adaptive_real(
        [&](double p) {
          const double d = rho_hat(p) - rh0;
          return (p == 0.0) ? 0.0 : d * d / (p * p);
        },
        0.0, k_cut_, 1e-11);
    green_gap_ = 4.0 * pi * (body + rh0 * rh0 / k_cut_);
  }
}

double compute_ell(const FormFactor& ff) {
  const double k_cut = ff.spectral_cutoff();
  const double ell =
      4.0 * pi * gk_adaptive_real(
                     [&](double k) {
                       const double r = ff.rho_hat(k);
                       return r * r;
                     },
                     0.0, k_cut, 1e-12);
  if (!(ell > 0.0) || !std::isfinite(ell))
    throw QuadratureError("compute_ell: non-positive or non-finite result");
  return ell;
}

}  // namespace pointnls
