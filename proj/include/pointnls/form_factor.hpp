#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pointnls/types.hpp"

namespace pointnls {

class FormFactor;

// ell = (rho, (-Delta)^{-1} rho) = 4pi * int_0^inf rho_hat(k)^2 dk, by
// adaptive panel quadrature on [0, k_cut] with k_cut certified by the decay
// of rho_hat. Throws QuadratureError for degenerate tabulated input.
double compute_ell(const FormFactor& ff);

// Smearing profile rho: Schwartz-like, real, positive, spherically symmetric,
// unit mass. Immutable after construction; shares nothing mutable.
class FormFactor {
 public:
  enum class Kind { gaussian, tabulated };

  // rho_hat(k) = (2pi)^{-3/2} exp(-sigma^2 k^2 / 2)
  static FormFactor make_gaussian(double sigma);

  // Radial samples of rho(x); normalized internally to unit mass, then
  // rho_hat built by the radial sine transform and cubic interpolation with
  // a Gaussian-decay tail beyond the table.
  static FormFactor make_tabulated(std::span<const double> x,
                                   std::span<const double> rho);

  Kind kind() const { return kind_; }
  bool is_gaussian() const { return kind_ == Kind::gaussian; }
  double sigma() const;

  double rho_hat(double k) const;
  static double rho_hat_zero() { return two_pi_pow_m32; }
  double ell() const { return ell_; }

  // 4pi * int (rho_hat(p) - rho_hat(0))^2 p^{-2} dp; gives the initial-data
  // gap through ||G - rho^eps * G||^2 = eps * green_gap_integral().
  double green_gap_integral() const { return green_gap_; }

  // k beyond which rho_hat(k)^2 < 1e-16 rho_hat(0)^2.
  double spectral_cutoff() const { return k_cut_; }

  // u = k^2 scale over which rho_hat(eps k)^2 decays.
  double decay_scale_u(double eps) const;

 private:
  FormFactor() = default;
  void finalize();  // fills ell_, green_gap_, k_cut_, k_half_

  Kind kind_ = Kind::gaussian;
  double sigma_ = 1.0;

  struct Table;
  std::shared_ptr<const Table> table_;

  double ell_ = 0.0;
  double green_gap_ = 0.0;
  double k_cut_ = 0.0;
  double k_half_ = 0.0;
};

}  // namespace pointnls
