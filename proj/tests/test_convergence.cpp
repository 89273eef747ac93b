#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "pointnls/config.hpp"
#include "pointnls/convergence.hpp"

using namespace pointnls;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.gamma = 1.0;
  cfg.mu = 0.5;
  cfg.q0 = cplx(1.0, 0.0);
  cfg.T = 1.0;
  cfg.base_steps = 256;
  cfg.epsilons = {0.4, 0.2, 0.1};
  cfg.samples = 5;
  return cfg;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("state error: zero for identical states, init gap at t=0") {
  const FormFactor ff = FormFactor::make_gaussian(1.0);
  const double eps = 0.1;
  const auto grid = KGrid::for_run(eps, 1.0);
  const auto p = make_domain_data(1.0, 0.5, cplx(1.0, 0.0), grid);

  // identical field: difference vanishes identically
  const RadialField psi = psi0_field(p);
  DomainElement same;
  same.q = p.q0;
  same.phi = psi;
  const auto k = grid->nodes();
  for (int i = 0; i < grid->n_nodes(); ++i)
    same.phi.values[i] -= p.q0 * two_pi_pow_m32 / (k[i] * k[i]);
  same.phi.tail_coeff = psi.tail_coeff - p.q0;
  CHECK(state_error(psi, same) == 0.0);

  // t = 0: ||psi0_eps - psi0|| = |q0| ||rho^e*G - G||
  const RadialField psi0e = build_initial_data(p, ff, eps, grid);
  DomainElement elem0;
  elem0.q = p.q0;
  elem0.phi = p.phi0;
  const double err0 = state_error(psi0e, elem0);
  const double want = std::abs(p.q0) * std::sqrt(eps * ff.green_gap_integral());
  CHECK(err0 == doctest::Approx(want).epsilon(1e-7));

  // grid mismatch is an error
  const auto other = KGrid::for_run(0.2, 1.0);
  DomainElement wrong;
  wrong.q = p.q0;
  wrong.phi = make_field(other, [](double) { return cplx{}; });
  CHECK_THROWS_AS(state_error(psi0e, wrong), GridError);
}

TEST_CASE("charge gap basics") {
  const TimeGrid tg(1.0, 128);
  ChargeTrajectory a, b;
  a.grid = b.grid = tg;
  a.q.assign(tg.n_nodes(), cplx(1.0, 0.0));
  b.q = a.q;
  CHECK(charge_gap(a, b) == 0.0);
  // I^{1/2} of a bounded deviation is at most 2 sqrt(T) sup|dq|
  for (int j = 0; j <= tg.steps; ++j)
    b.q[j] = a.q[j] + 0.25 * std::sin(7.0 * tg.node(j));
  CHECK(charge_gap(a, b) <= 2.0 * std::sqrt(1.0) * 0.25 * (1.0 + 1e-12));
}

TEST_CASE("stationary pair: state error stays within 2x of its t=0 value") {
  const FormFactor ff = FormFactor::make_gaussian(1.0);
  SweepConfig cfg = small_config();
  cfg.gamma = 0.0;
  cfg.mu = 0.0;
  cfg.compensated = false;  // phi0 = 0: the pure charge pair
  cfg.width = 1.0;
  for (const double eps : {0.4, 0.1}) {
    const RunMetrics m = run_single_eps(cfg, ff, eps, 256);
    const double e0 = m.sample_errors.front();
    for (const double e : m.sample_errors) CHECK(e <= 2.0 * e0);
  }
}

TEST_CASE("mini convergence study: decay, rates, artifacts, determinism") {
  SweepConfig cfg = small_config();
  const std::string dir = "test_out_mini_study";
  std::filesystem::remove_all(dir);
  cfg.out_dir = dir;
  const ConvergenceReport rep = run_convergence_study(cfg);
  REQUIRE_FALSE(rep.partial);
  REQUIRE(rep.runs.size() == 3);

  // sup errors decrease along decreasing eps
  CHECK(rep.runs[0].sup_err > rep.runs[1].sup_err);
  CHECK(rep.runs[1].sup_err > rep.runs[2].sup_err);
  // the initial-data slope is exactly 1/2 for gaussian profiles
  CHECK(rep.slope_init == doctest::Approx(0.5).epsilon(0.01));
  CHECK(rep.delta_hat > 0.0);
  CHECK(rep.slope_y > 0.0);

  // artifacts exist
  CHECK(std::filesystem::exists(dir + "/report.json"));
  CHECK(std::filesystem::exists(dir + "/errors.csv"));
  CHECK(std::filesystem::exists(dir + "/scaled_eps0p4.csv"));
  CHECK(std::filesystem::exists(dir + "/limit_eps0p1.csv"));

  // determinism: identical config gives bit-identical errors.csv
  const std::string first = slurp(dir + "/errors.csv");
  std::filesystem::remove_all(dir);
  run_convergence_study(cfg);
  CHECK(slurp(dir + "/errors.csv") == first);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rate consistency between the total error and its pieces") {
  SweepConfig cfg = small_config();
  const ConvergenceReport rep = run_convergence_study(cfg);
  REQUIRE_FALSE(rep.partial);
  CHECK(rep.delta_hat >=
        std::min(rep.slope_gap, 0.25) - 0.05);
}

TEST_CASE("guard violation rejected") {
  SweepConfig cfg = small_config();
  cfg.gamma = -1.0;
  cfg.mu = 1.5;
  CHECK_THROWS_AS(run_convergence_study(cfg), std::invalid_argument);
}
