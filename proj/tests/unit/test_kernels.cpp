// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/kernels.hpp"

using namespace hst;

namespace {

constexpr double pi = std::numbers::pi;

// Subordination integral for the stable member with an integrator unrelated
// to the library's Gauss-Kronrod code.
double stable_green_oracle(double alpha, int d, double r) {
  boost::math::quadrature::exp_sinh<double> es;
  const double c = 1.0 / boost::math::tgamma(alpha / 2);
  return es.integrate(
      [&](double t) { return std::pow(4 * pi * t, -0.5 * d) * std::exp(-r * r / (4 * t)) * c * std::pow(t, alpha / 2 - 1); },
      1e-12);
}

double stable_jump_oracle(double alpha, int d, double r) {
  boost::math::quadrature::exp_sinh<double> es;
  const double c = 0.5 * alpha / boost::math::tgamma(1 - alpha / 2);
  return es.integrate(
      [&](double t) { return std::pow(4 * pi * t, -0.5 * d) * std::exp(-r * r / (4 * t)) * c * std::pow(t, -1 - alpha / 2); },
      1e-12);
}

}  // namespace

TEST_CASE("riesz green function") {
  const ExponentSpec s(Stable{1.0}, 3);
  for (double r : {0.01, 0.1, 1.0}) {
    const double oracle = stable_green_oracle(1.0, 3, r);
    CHECK(green_radial(s, r).value == doctest::Approx(oracle).epsilon(1e-9));
  }
  // Gamma(1) / (2 pi^{3/2} Gamma(1/2)) = 1/(2 pi^2)
  CHECK(stable_green_closed_form(1.0, 3, 1.0) == doctest::Approx(1.0 / (2 * pi * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(green_radial(s, 0.0), DomainError);
  CHECK_THROWS_AS(green_radial(s, -1.0), DomainError);
}

TEST_CASE("stable jump kernel") {
  const ExponentSpec s(Stable{1.0}, 2);
  CHECK(jump_density(s, 1.0).value == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-9));
  CHECK(jump_density(s, 1.0).value == doctest::Approx(stable_jump_oracle(1.0, 2, 1.0)).epsilon(1e-9));
  CHECK(stable_jump_closed_form(1.0, 2, 1.0) == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(jump_density(s, 0.0), DomainError);
}

TEST_CASE("exact stable scaling") {
  const ExponentSpec s(Stable{1.0}, 3);
  CHECK(green_radial(s, 0.2).value / green_radial(s, 0.1).value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(jump_density(s, 0.2).value / jump_density(s, 0.1).value == doctest::Approx(1.0 / 16).epsilon(1e-12));
}

TEST_CASE("renewal surrogate") {
  CHECK(renewal_surrogate(ExponentSpec(Stable{1.0}, 3), 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  const ExponentSpec bps(BrownianPlusStable{1.0, 1.0, 1.0}, 3);
  CHECK(renewal_surrogate(bps, 0.01) == doctest::Approx(1.0 / std::sqrt(1e4 + 1e2)).epsilon(1e-14));
  CHECK_THROWS_AS(renewal_surrogate(bps, 0.0), DomainError);
}

TEST_CASE("green ball mass for the stable member") {
  // m(t) = int_0^t G(r) sigma_{d-1} r^{d-1} dr; for alpha = 1, d = 3 that is 4 pi G(1) t.
  const ExponentSpec s(Stable{1.0}, 3);
  for (double t : {0.01, 0.5, 1.0})
    CHECK(green_ball_mass(s, t).value == doctest::Approx(4 * pi * stable_green_closed_form(1.0, 3, 1.0) * t).epsilon(1e-9));
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi));
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-3, 1.0, 40);
  CHECK(g.size() == 121);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1.0);
  CHECK_THROWS(log_grid(1.0, 0.5, 10));
}

TEST_CASE("kernel table monotonicity and thread independence") {
  const auto grid = log_grid(1e-3, 1.0, 10);
  for (const auto& s : default_catalog(3)) {
    const auto a = tabulate_kernels(s, grid, {}, 1);
    const auto b = tabulate_kernels(s, grid, {}, 3);
    CHECK(a.g_values == b.g_values);
    CHECK(a.j_values == b.j_values);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(a.g_values[i] <= a.g_values[i - 1]);
      CHECK(a.j_values[i] <= a.j_values[i - 1]);
      CHECK(a.v_values[i] >= a.v_values[i - 1]);
    }
  }
  std::ostringstream os;
  write_kernel_table_csv(os, tabulate_kernels(ExponentSpec(Stable{1.0}, 3), std::vector<double>{0.5}));
  CHECK(os.str().rfind("r,g,g_err,j,j_err,v\n0.5,", 0) == 0);
}

TEST_CASE("ratio sweeps") {
  const auto grid = log_grid(1e-3, 1.0, 40);
  SUBCASE("stable ratios are constant") {
    const ExponentSpec s(Stable{1.0}, 3);
    CHECK(verify_green_asymptotics(s, grid).spread == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(verify_green_mass_ratio(s, grid).spread == doctest::Approx(1.0).epsilon(1e-9));
    const auto j = verify_j_asymptotics(ExponentSpec(Stable{1.0}, 2), grid);
    CHECK(j.spread == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j.doubling_constant == doctest::Approx(8.0).epsilon(1e-9));
  }
  SUBCASE("stable mix spreads") {
    const ExponentSpec s(StableMix{1.5, 0.5}, 3);
    const auto g = verify_green_asymptotics(s, grid);
    CHECK(g.passed);
    CHECK(g.spread == doctest::Approx(1.18185).epsilon(1e-4));
    CHECK(verify_j_asymptotics(s, grid).passed);
    CHECK(verify_green_mass_ratio(s, grid).passed);
    const auto j2 = verify_j_asymptotics(ExponentSpec(StableMix{1.5, 0.5}, 2), log_grid(1e-3, 0.5, 40));
    CHECK(j2.passed);
    CHECK(j2.spread <= 20.0);
    CHECK_FALSE(verify_green_asymptotics(s, grid, {}, 1.0).passed);
  }
  SUBCASE("newtonian refinement for the alpha = 2 member") {
    const auto g = verify_green_asymptotics(ExponentSpec(BrownianPlusStable{1.0, 1.0, 1.0}, 3), grid);
    CHECK(g.brownian_refinement_checked);
    CHECK(g.brownian_refinement_passed);
    CHECK(std::abs(g.brownian_refinement - 1.0) <= 0.05);
    CHECK_FALSE(verify_j_asymptotics(ExponentSpec(BrownianPlusStable{1.0, 1.0, 1.0}, 3), grid).applicable);
  }
  CHECK_THROWS_AS(verify_green_mass_ratio(ExponentSpec(Stable{1.0}, 3), std::vector<double>{}), PreconditionError);
}

TEST_CASE("ratio csv layout") {
  const auto grid = log_grid(1e-2, 1.0, 2);
  std::vector<RatioSweep> sweeps{verify_j_asymptotics(ExponentSpec(Stable{1.0}, 3), grid)};
  std::ostringstream os;
  write_ratio_sweeps_csv(os, sweeps);
  const std::string s = os.str();
  CHECK(s.rfind("sweep,x,ratio,spread,spread_bound,passed\n", 0) == 0);
  CHECK(s.find("jump_doubling,") != std::string::npos);
}

TEST_CASE("property: stable scaling on random pairs") {
  std::uint64_t state = 99;
  auto next = [&] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int k = 0; k < 60; ++k) {
    const double alpha = 0.2 + 1.6 * next();
    const int d = 2 + k % 3;
    const ExponentSpec s(Stable{alpha}, d);
    const double r = std::exp(-7.0 * next());
    const double l = std::exp(4.0 * (next() - 0.5));
    CHECK(green_radial(s, l * r).value / green_radial(s, r).value == doctest::Approx(std::pow(l, alpha - d)).epsilon(1e-9));
    CHECK(jump_density(s, l * r).value / jump_density(s, r).value == doctest::Approx(std::pow(l, -alpha - d)).epsilon(1e-9));
  }
}
