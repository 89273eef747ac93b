#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pointnls {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt_pi = 1.7724538509055160273;
inline constexpr double two_pi_pow_m32 = 0.063493635934240969785;  // (2*pi)^{-3/2}

// Branch conventions, fixed once: every fractional power in the charge
// equations routes through these. Principal square root, so
// sqrt(i) = e^{i pi/4} and (i t)^{3/2} = t^{3/2} e^{i 3pi/4} for t > 0.
inline const cplx sqrt_i{0.70710678118654752440, 0.70710678118654752440};
inline const cplx sqrt_pi_i = sqrt_pi * sqrt_i;          // sqrt(pi*i)
inline const cplx four_sqrt_pi_i = 4.0 * sqrt_pi_i;      // 4 sqrt(pi i)
inline const cplx four_pi_sqrt_pi_i = 4.0 * pi * sqrt_pi_i;

// z^{-1/2} and z^{-3/2}, principal branch (all kernel arguments here have
// Re z >= 0, so the branch cut is never crossed).
inline cplx inv_sqrt(cplx z) { return 1.0 / std::sqrt(z); }
inline cplx pow_m32(cplx z) {
  const cplx r = std::sqrt(z);
  return 1.0 / (z * r);
}

// |q|^{2 mu} q, continuously extended by 0 at q = 0 for mu > 0.
inline cplx charge_nonlinearity(cplx q, double mu) {
  if (mu == 0.0) return q;
  const double a = std::abs(q);
  if (a == 0.0) return {0.0, 0.0};
  return std::pow(a, 2.0 * mu) * q;
}

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pointnls
