#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pointnls/radial_field.hpp"

using namespace pointnls;

namespace {
std::shared_ptr<const KGrid> grid40() { return KGrid::make(40.0); }
}  // namespace

TEST_CASE("parseval: gaussian field norms match closed forms") {
  // phi_hat = e^{-w^2 k^2/2}: ||phi||^2 = 4pi int k^2 e^{-w^2k^2} dk
  //                                     = pi^{3/2} / w^3
  for (const double w : {0.7, 1.0, 1.9}) {
    const RadialField f = make_field(grid40(), [w](double k) {
      return cplx(std::exp(-0.5 * w * w * k * k), 0.0);
    });
    const double want = std::sqrt(pi * sqrt_pi / (w * w * w));
    CHECK(std::abs(l2_norm(f) - want) < 1e-10 * want);
  }
}

TEST_CASE("zero field has zero norm and value") {
  const RadialField z = make_field(grid40(), [](double) { return cplx{}; });
  CHECK(l2_norm(z) == 0.0);
  CHECK(grad_norm(z) == 0.0);
  CHECK(std::abs(value_at_origin(z)) == 0.0);
}

TEST_CASE("G alone is rejected as not square-integrable") {
  const RadialField g = make_field(
      grid40(), [](double k) { return cplx(two_pi_pow_m32 / (k * k), 0.0); },
      cplx(1.0, 0.0));
  CHECK_THROWS_AS(l2_norm(g), std::domain_error);
  CHECK_THROWS_AS(grad_norm(g), std::domain_error);
  CHECK_THROWS_AS(value_at_origin(g), std::domain_error);
}

TEST_CASE("grad norm of the unit gaussian matches the moment oracle") {
  // 4pi int k^4 e^{-k^2} dk = 4pi * 3 sqrt(pi)/8
  const RadialField f = make_field(
      grid40(), [](double k) { return cplx(std::exp(-0.5 * k * k), 0.0); });
  const double want = std::sqrt(4.0 * pi * 3.0 * sqrt_pi / 8.0);
  CHECK(grad_norm(f) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("value at origin: oracle and linearity") {
  const RadialField f = make_field(
      grid40(), [](double k) { return cplx(std::exp(-0.5 * k * k), 0.0); });
  // (2pi)^{-3/2} 4pi int k^2 e^{-k^2/2} dk, oracle by adaptive quadrature
  const double mom = gk_adaptive_real(
      [](double k) { return k * k * std::exp(-0.5 * k * k); }, 0.0, 40.0,
      1e-13);
  const cplx want = 4.0 * pi * two_pi_pow_m32 * mom;
  CHECK(std::abs(value_at_origin(f) - want) < 1e-12);
  CHECK(std::abs(value_at_origin(lin_comb(cplx(0.0, 2.0), f, 0.0, f)) -
                 cplx(0.0, 2.0) * want) < 1e-12);
  // unit-width unit-amplitude gaussian profile has value 1 at the origin
  CHECK(std::abs(value_at_origin(f) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("cauchy-schwarz and inner product consistency on random fields") {
  std::mt19937_64 rng(1234);
  auto g = grid40();
  for (int trial = 0; trial < 8; ++trial) {
    const RadialField f = oracles::random_field(g, rng);
    const RadialField h = oracles::random_field(g, rng);
    const cplx ip = inner(f, h);
    CHECK(std::abs(ip) <= l2_norm(f) * l2_norm(h) * (1.0 + 1e-12));
    const cplx self = inner(f, f);
    CHECK(std::abs(self.imag()) < 1e-14 * std::abs(self));
    CHECK(std::abs(std::sqrt(self.real()) - l2_norm(f)) < 1e-12);
    // conjugate linearity in the first slot
    const cplx a(0.3, -1.1);
    CHECK(std::abs(inner(lin_comb(a, f, 0.0, f), h) - std::conj(a) * ip) <
          1e-12);
  }
}

TEST_CASE("grid refinement changes norms below 1e-9") {
  const auto coarse = KGrid::make(40.0, 64, 16);
  const auto fine = KGrid::make(40.0, 128, 16);
  const auto fun = [](double k) {
    return cplx(std::exp(-0.4 * k * k) * (1.0 + k), 0.0);
  };
  const double a = l2_norm(make_field(coarse, fun));
  const double b = l2_norm(make_field(fine, fun));
  CHECK(std::abs(a - b) < 1e-9 * b);
}

TEST_CASE("smeared green identities") {
  const FormFactor ff = FormFactor::make_gaussian(1.0);
  for (const double eps : {0.4, 0.1}) {
    const auto g = KGrid::for_run(eps, 1.0);
    const RadialField green = smeared_green(ff, eps, g);
    const RadialField rho = rho_eps_field(ff, eps, g);
    // eps (rho^e, rho^e * G) / ell = 1
    CHECK(std::abs(eps / ff.ell() * inner(rho, green) - 1.0) < 1e-10);
    // ||grad rho^e*G||^2 = ell / eps
    const double gg = grad_norm(green);
    CHECK(std::abs(gg * gg - ff.ell() / eps) < 1e-8 * ff.ell() / eps);
  }
  CHECK_THROWS_AS(smeared_green(ff, -1.0, KGrid::for_run(0.1, 1.0)),
                  std::invalid_argument);
  // insufficient k_max: rho_hat(eps k_max) not negligible
  CHECK_THROWS_AS(smeared_green(ff, 1e-4, KGrid::make(40.0)), GridError);
}

TEST_CASE("smearing error ||G - rho^e G|| follows sqrt(eps)") {
  const FormFactor ff = FormFactor::make_gaussian(1.0);
  // closed form eps * (sqrt2 - 1) sqrt(pi) / (2 pi^2): cross-check against
  // direct quadrature of the (5.4c)-type integral
  const double igg = gk_adaptive_real(
      [&](double p) {
        const double d = ff.rho_hat(p) - ff.rho_hat(0.0);
        return p < 1e-12 ? 0.0 : d * d / (p * p);
      },
      0.0, 400.0, 1e-11);
  const double tail = ff.rho_hat(0.0) * ff.rho_hat(0.0) / 400.0;
  CHECK(std::abs(4.0 * pi * (igg + tail) - ff.green_gap_integral()) <
        1e-8 * ff.green_gap_integral());
}

TEST_CASE("resample reproduces smooth fields between grids") {
  const auto a = KGrid::make(40.0, 64, 16);
  const auto b = KGrid::make(40.0, 96, 16);
  const auto fun = [](double k) { return cplx(std::exp(-0.3 * k * k), 0.1 * k * std::exp(-k)); };
  const RadialField fa = make_field(a, fun);
  const RadialField fb = resample(fa, b);
  double err = 0.0;
  for (int i = 0; i < b->n_nodes(); ++i)
    err = std::max(err, std::abs(fb.values[i] - fun(b->nodes()[i])));
  CHECK(err < 1e-10);
}
