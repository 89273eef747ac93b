#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "pointnls/form_factor.hpp"
#include "pointnls/kgrid.hpp"
#include "pointnls/types.hpp"

namespace pointnls {

// Radially symmetric function on R^3 stored as Fourier samples psi_hat(k) on
// a KGrid. tail_coeff c describes psi_hat(k) ~ c (2pi)^{-3/2} k^{-2} beyond
// k_max; c = 0 means negligible truncation. Immutable value type.
struct RadialField {
  std::shared_ptr<const KGrid> grid;
  std::vector<cplx> values;
  cplx tail_coeff{0.0, 0.0};
};

RadialField make_field(std::shared_ptr<const KGrid> grid,
                       const std::function<cplx(double)>& fhat,
                       cplx tail_coeff = {0.0, 0.0});

// a*f + b*g on a common grid (g is resampled when the node sets differ).
RadialField lin_comb(cplx a, const RadialField& f, cplx b,
                     const RadialField& g);

RadialField resample(const RadialField& f, std::shared_ptr<const KGrid> grid);

// Interpolated evaluation between nodes (panel polynomial; tail beyond k_max).
cplx field_eval(const RadialField& f, double k);

// ||f||_{L^2(R^3)} = (4pi int k^2 |f^|^2 dk)^{1/2}, tail in closed form.
// Rejects fields that are not square integrable near k = 0 (G-like samples).
double l2_norm(const RadialField& f);

// (f, g) = 4pi int k^2 conj(f^) g^ dk; conjugate-linear in f.
cplx inner(const RadialField& f, const RadialField& g);

// ||grad f|| = (4pi int k^4 |f^|^2 dk)^{1/2}; requires zero tail.
double grad_norm(const RadialField& f);

// f(0) = (2pi)^{-3/2} 4pi int k^2 f^(k) dk; requires zero tail.
cplx value_at_origin(const RadialField& f);

// Fourier samples of rho^eps (that is rho_hat(eps k)).
RadialField rho_eps_field(const FormFactor& ff, double eps,
                          std::shared_ptr<const KGrid> grid);

// (rho^eps * G)^(k) = rho_hat(eps k) / k^2, tail certified negligible.
RadialField smeared_green(const FormFactor& ff, double eps,
                          std::shared_ptr<const KGrid> grid);

}  // namespace pointnls
