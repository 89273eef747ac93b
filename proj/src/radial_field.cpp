#include "pointnls/radial_field.hpp"

#include <algorithm>
#include <cmath>

namespace pointnls {

namespace {

void check_field(const RadialField& f) {
  if (!f.grid || f.values.size() != size_t(f.grid->n_nodes()))
    throw std::invalid_argument("RadialField: values/grid size mismatch");
}

// Tail contribution to 4pi int_{k_max}^inf k^2 conj(f) g dk for two
// green-type tails: conj(cf) cg / (2 pi^2 k_max).
cplx tail_inner(cplx cf, cplx cg, double k_max) {
  return std::conj(cf) * cg / (2.0 * pi * pi * k_max);
}

// Barycentric Lagrange evaluation on one source panel.
cplx panel_eval(const KGrid& g, const std::vector<cplx>& v, int panel,
                double k) {
  const int n = g.nodes_per_panel();
  const auto nodes = g.nodes();
  const int base = panel * n;
  // Barycentric weights for scaled Gauss-Legendre nodes, computed on the fly
  // (n = 16, negligible cost next to the quadratures around it).
  cplx num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = nodes[base + i];
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      w /= (xi - nodes[base + j]);
    }
    const double d = k - xi;
    if (d == 0.0) return v[base + i];
    num += w / d * v[base + i];
    den += w / d;
  }
  return num / den;
}

}  // namespace

RadialField make_field(std::shared_ptr<const KGrid> grid,
                       const std::function<cplx(double)>& fhat,
                       cplx tail_coeff) {
  RadialField f;
  f.grid = std::move(grid);
  f.values.reserve(f.grid->n_nodes());
  for (double k : f.grid->nodes()) f.values.push_back(fhat(k));
  f.tail_coeff = tail_coeff;
  return f;
}

cplx field_eval(const RadialField& f, double k) {
  check_field(f);
  const KGrid& src = *f.grid;
  if (k > src.k_max()) return f.tail_coeff * two_pi_pow_m32 / (k * k);
  const auto edges = src.edges();
  int panel = int(std::upper_bound(edges.begin(), edges.end(), k) -
                  edges.begin()) -
              1;
  panel = std::clamp(panel, 0, src.panels() - 1);
  return panel_eval(src, f.values, panel, k);
}

RadialField resample(const RadialField& f, std::shared_ptr<const KGrid> grid) {
  check_field(f);
  if (f.grid->same_nodes(*grid)) {
    RadialField out = f;
    out.grid = std::move(grid);
    return out;
  }
  RadialField out;
  out.grid = std::move(grid);
  out.tail_coeff = f.tail_coeff;
  out.values.reserve(out.grid->n_nodes());
  for (double k : out.grid->nodes()) out.values.push_back(field_eval(f, k));
  return out;
}

RadialField lin_comb(cplx a, const RadialField& f, cplx b,
                     const RadialField& g) {
  check_field(f);
  check_field(g);
  const RadialField gg = f.grid->same_nodes(*g.grid) ? g : resample(g, f.grid);
  RadialField out;
  out.grid = f.grid;
  out.values.resize(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i)
    out.values[i] = a * f.values[i] + b * gg.values[i];
  out.tail_coeff = a * f.tail_coeff + b * gg.tail_coeff;
  return out;
}

double l2_norm(const RadialField& f) {
  check_field(f);
  const auto k = f.grid->nodes();
  const auto w = f.grid->weights();
  double sum = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) {
    const double a = std::abs(f.values[i]);
    sum += w[i] * k[i] * k[i] * a * a;
  }
  sum *= 4.0 * pi;
  // k^{-2}-type samples near k = 0 integrate like 1/k: not square integrable.
  const double c0 = std::abs(f.values[0]) * k[0] * k[0];
  const double c1 = std::abs(f.values[1]) * k[1] * k[1];
  if (c0 > 0.0 && std::abs(c1 - c0) < 0.25 * c0 &&
      c0 * c0 / k[0] > 1e-6 * sum) {
    throw std::domain_error("l2_norm: field is not square-integrable near k=0");
  }
  const double ct = std::abs(f.tail_coeff);
  sum += ct * ct / (2.0 * pi * pi * f.grid->k_max());
  return std::sqrt(sum);
}

cplx inner(const RadialField& f, const RadialField& g) {
  check_field(f);
  check_field(g);
  const RadialField gg = f.grid->same_nodes(*g.grid) ? g : resample(g, f.grid);
  const auto k = f.grid->nodes();
  const auto w = f.grid->weights();
  cplx sum = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    sum += w[i] * k[i] * k[i] * std::conj(f.values[i]) * gg.values[i];
  sum *= 4.0 * pi;
  sum += tail_inner(f.tail_coeff, gg.tail_coeff, f.grid->k_max());
  return sum;
}

double grad_norm(const RadialField& f) {
  check_field(f);
  if (f.tail_coeff != cplx(0.0, 0.0))
    throw std::domain_error("grad_norm: field with green tail is not in H^1");
  const auto k = f.grid->nodes();
  const auto w = f.grid->weights();
  double sum = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) {
    const double a = std::abs(f.values[i]);
    const double k2 = k[i] * k[i];
    sum += w[i] * k2 * k2 * a * a;
  }
  return std::sqrt(4.0 * pi * sum);
}

cplx value_at_origin(const RadialField& f) {
  check_field(f);
  if (f.tail_coeff != cplx(0.0, 0.0))
    throw std::domain_error("value_at_origin: green tail is not integrable");
  const auto k = f.grid->nodes();
  const auto w = f.grid->weights();
  cplx sum = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    sum += w[i] * k[i] * k[i] * f.values[i];
  return 4.0 * pi * two_pi_pow_m32 * sum;
}

RadialField rho_eps_field(const FormFactor& ff, double eps,
                          std::shared_ptr<const KGrid> grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("rho_eps_field: eps must be > 0");
  return make_field(std::move(grid),
                    [&](double k) { return cplx(ff.rho_hat(eps * k), 0.0); });
}

RadialField smeared_green(const FormFactor& ff, double eps,
                          std::shared_ptr<const KGrid> grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("smeared_green: eps must be > 0");
  if (std::abs(ff.rho_hat(eps * grid->k_max())) > 1e-7 * ff.rho_hat_zero())
    throw GridError("smeared_green: k_max does not certify the truncation");
  return make_field(std::move(grid), [&](double k) {
    return cplx(ff.rho_hat(eps * k) / (k * k), 0.0);
  });
}

}  // namespace pointnls
