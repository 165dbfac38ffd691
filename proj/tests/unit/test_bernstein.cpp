// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "hst/bernstein.hpp"
#include "hst/errors.hpp"
#include "hst/laplace.hpp"

using namespace hst;

namespace {

// Independent route to int_0^inf e^{-lambda t} f(t) dt.
template <class F>
double laplace_oracle(F f, double lambda) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double t) { return std::exp(-lambda * t) * f(t); }, 1e-13);
}

std::vector<double> lambda_grid() {
  std::vector<double> g;
  for (int k = 0; k < 25; ++k) g.push_back(1e-2 * std::pow(1e6, k / 24.0));
  return g;
}

}  // namespace

TEST_CASE("phi closed forms") {
  CHECK(phi(ExponentSpec(Stable{1.0}, 3), 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi(ExponentSpec(RelativisticStable{1.0, 1.0}, 3), 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi(ExponentSpec(StableMix{1.5, 0.5}, 3), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi(ExponentSpec(BrownianPlusStable{1.0, 1.0, 1.0}, 3), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("complex continuation agrees on the positive axis") {
  for (const auto& s : default_catalog(3))
    for (double l : {0.1, 1.0, 7.0}) CHECK(phi(s, std::complex<double>(l, 0.0)).real() == doctest::Approx(phi(s, l)));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ExponentSpec(Stable{2.0}, 3), DomainError);
  CHECK_THROWS_AS(ExponentSpec(Stable{0.0}, 3), DomainError);
  CHECK_THROWS_AS(ExponentSpec(StableMix{0.5, 1.0}, 3), DomainError);
  CHECK_THROWS_AS(ExponentSpec(BrownianPlusStable{1.0, 1.0, 1.0}, 2), DomainError);
  CHECK_THROWS_AS(ExponentSpec(RelativisticStable{1.0, 0.0}, 3), DomainError);
  CHECK_THROWS_AS(ExponentSpec(Stable{1.0}, 1), DomainError);
  try {
    ExponentSpec(Stable{3.0}, 3);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "process.alpha out of range (0,2)");
  }
}

TEST_CASE("alpha index, drift and small-lambda index") {
  const ExponentSpec mix(StableMix{1.5, 0.5}, 3);
  CHECK(mix.alpha_index() == 1.5);
  CHECK(mix.drift() == 0.0);
  const ExponentSpec bps(BrownianPlusStable{1.0, 1.0, 1.0}, 3);
  CHECK(bps.alpha_index() == 2.0);
  CHECK(bps.drift() == 1.0);
  CHECK(ExponentSpec(RelativisticStable{1.0, 1.0}, 3).alpha_index() == 1.0);
}

TEST_CASE("levy density") {
  const ExponentSpec s(Stable{1.0}, 3);
  CHECK(levy_density(s, 1.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
  const ExponentSpec mix(StableMix{1.0, 0.5}, 3);
  const double sum = levy_density(ExponentSpec(Stable{1.0}, 3), 1.0) + levy_density(ExponentSpec(Stable{0.5}, 3), 1.0);
  CHECK(levy_density(mix, 1.0) == doctest::Approx(sum).epsilon(1e-14));
  CHECK_THROWS_AS(levy_density(s, 0.0), DomainError);
}

TEST_CASE("relativistic levy density decays like e^{-t}") {
  const ExponentSpec s(RelativisticStable{1.0, 1.0}, 3);
  // For alpha = 1: eta(t) = e^{-t} t^{-3/2} / (2 sqrt(pi)).
  for (double t = 5.0; t <= 20.0; t += 2.5) {
    const double ratio = levy_density(s, t) * std::pow(t, 1.5) * std::exp(t);
    CHECK(ratio == doctest::Approx(0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-10));
  }
}

TEST_CASE("potential density") {
  const ExponentSpec s(Stable{1.0}, 3);
  CHECK(potential_density(s, 1.0) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(potential_density(ExponentSpec(Stable{1.999999}, 3), 0.7) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(potential_density(s, -1.0), DomainError);
}

TEST_CASE("transform identity for the catalog against an independent integrator") {
  for (const auto& s : default_catalog(3)) {
    for (double l : {0.05, 1.0, 20.0}) {
      const double transform = laplace_oracle([&](double t) { return potential_density(s, t); }, l);
      CHECK(std::abs(phi(s, l) * transform - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("potential_transform rows and fault injection") {
  for (const auto& s : default_catalog(3)) {
    for (double l : lambda_grid()) {
      const auto row = potential_transform(s, l);
      CHECK(row.converged);
      CHECK(row.residual <= 1e-6);
    }
    CHECK(potential_transform(s, 1.0, 1.01).residual == doctest::Approx(0.01).epsilon(1e-4));
  }
}

TEST_CASE("levy-khintchine reconstruction") {
  const auto grid = lambda_grid();
  for (const auto& s : default_catalog(3)) {
    const auto rep = verify_levy_khintchine(s, grid, 1e-6);
    CHECK(rep.passed);
    CHECK(rep.rows.size() == grid.size());
  }
  const ExponentSpec bps(BrownianPlusStable{1.0, 1.0, 1.0}, 3);
  const double one[] = {1.0};
  CHECK(verify_levy_khintchine(bps, one, 1e-6).rows[0].reconstructed == doctest::Approx(2.0).epsilon(1e-8));
  CHECK_THROWS_AS(verify_levy_khintchine(bps, std::span<const double>{}, 1e-6), PreconditionError);
}

TEST_CASE("laplace inversion routines on a known pair") {
  // 1/(s+1) <-> e^{-t}
  const auto tr = [](std::complex<double> s) { return 1.0 / (s + 1.0); };
  CHECK(laplace::talbot(tr, 2.0, 32) == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  const auto rt = [](long double s) { return 1.0L / (s + 1.0L); };
  CHECK(laplace::stehfest(rt, 1.0, 14) == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
}

TEST_CASE("property: phi is increasing and concave on random pairs") {
  std::uint64_t state = 12345;
  auto next = [&] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  const auto cat = default_catalog(3);
  for (int k = 0; k < 500; ++k) {
    const auto& s = cat[k % cat.size()];
    const double a = std::exp(-8.0 + 16.0 * next());
    const double b = a * (1.0 + 10.0 * next());
    CHECK(phi(s, b) >= phi(s, a));
    const double m = phi(s, 0.5 * (a + b));
    CHECK(m >= 0.5 * (phi(s, a) + phi(s, b)) * (1.0 - 1e-12));
  }
}

TEST_CASE("property: potential density times phi-scale is bounded for stable") {
  // u(t) = t^{alpha/2-1}/Gamma(alpha/2)
  for (double alpha : {0.3, 1.0, 1.7}) {
    const ExponentSpec s(Stable{alpha}, 3);
    for (double t : {1e-3, 0.1, 10.0})
      CHECK(potential_density(s, t) ==
            doctest::Approx(std::pow(t, alpha / 2 - 1) / boost::math::tgamma(alpha / 2)).epsilon(1e-13));
  }
}
