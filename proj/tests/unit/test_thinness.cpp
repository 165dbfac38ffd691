// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "hst/errors.hpp"
#include "hst/thinness.hpp"

using namespace hst;

namespace {

constexpr double pi = std::numbers::pi;

ProfileSpec power(double beta, double c = 1.0) { return ProfileSpec(PowerLaw{c, beta}); }
ProfileSpec power_log(double p) { return ProfileSpec(PowerLog{1.0, 1.0, p}); }
SetSpec graph(const ProfileSpec& f, int d) { return SetSpec(LipschitzGraph{f, f.observed_lipschitz()}, d); }

// Polar quadrature of int_{A cap B(0,1)} |x|^{-3} dx for A = {x_3 <= f(|x_tilde|)}
// in d = 3, with the x_3 integral done in closed form.
double graph_integral_oracle_d3(double beta) {
  auto f = [&](double r) { return std::pow(r, beta); };
  // The graph leaves the unit ball where f(r) = sqrt(1 - r^2).
  const auto [lo, hi] = boost::math::tools::bisect([&](double r) { return f(r) - std::sqrt(1 - r * r); }, 0.1, 1.0,
                                                   boost::math::tools::eps_tolerance<double>(50));
  const double r_star = 0.5 * (lo + hi);
  auto inner = [](double r, double g) { return g / (r * std::sqrt(r * r + g * g)); };
  boost::math::quadrature::tanh_sinh<double> ts;
  // Near 0 the inner value is r^{beta-2} / sqrt(1 + r^{2 beta - 2}).
  const double a = ts.integrate(
      [&](double r) { return std::pow(r, beta - 2) / std::sqrt(1 + std::pow(r, 2 * beta - 2)); }, 0.0, r_star);
  const double b = ts.integrate([&](double r) { return inner(r, std::sqrt(1 - r * r)); }, r_star, 1.0);
  return 2 * pi * (a + b);
}

double box_oracle(const Box& b) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  return gk::integrate(
      [&](double x) {
        return gk::integrate(
            [&](double y) {
              return gk::integrate([&](double z) { return std::pow(x * x + y * y + z * z, -1.5); }, b.lo[2], b.hi[2]);
            },
            b.lo[1], b.hi[1]);
      },
      b.lo[0], b.hi[0]);
}

}  // namespace

TEST_CASE("profiles") {
  CHECK(power(1.5, 2.0)(0.25) == doctest::Approx(0.25));
  CHECK(power_log(2.0)(std::exp(-1.0)) == doctest::Approx(std::exp(-1.0) / 4.0));
  CHECK(power_log(2.0)(3.0) == 1.0);
  CHECK_THROWS_AS(power(0.5), DomainError);
  CHECK_THROWS_AS(ProfileSpec(PowerLaw{-1.0, 1.0}), DomainError);
  const ProfileSpec tab(TabulatedRadial{{0.1, 0.5, 1.0}, {0.01, 0.25, 1.0}, 2.0});
  CHECK(tab(0.5) == doctest::Approx(0.25));
  CHECK(tab(0.05) == doctest::Approx(0.0025).epsilon(1e-12));
  CHECK(power(1.0).observed_lipschitz() == doctest::Approx(1.0));
}

TEST_CASE("set validation and membership") {
  CHECK_THROWS_AS(SetSpec(LipschitzGraph{power(1.0, 2.0), 1.0}, 3), DomainError);
  CHECK_THROWS_AS(SetSpec(BoxUnion{{Box{{0.0, 0.0, -0.1}, {1.0, 1.0, 1.0}}}}, 3), DomainError);
  const auto g = graph(power(1.0), 3);
  CHECK(g.contains(HPoint{{0.3, 0.4}, 0.5}));
  CHECK_FALSE(g.contains(HPoint{{0.3, 0.4}, 0.51}));
  const SetSpec t(Thorn{power(2.0)}, 3);
  CHECK(t.contains(HPoint{{0.0, 0.0}, 0.5}));
  CHECK_FALSE(t.contains(HPoint{{0.3, 0.0}, 0.5}));
  const SetSpec u(BoxUnion{{Box{{0, 0, 0}, {1, 1, 1}}, Box{{0.5, 0.5, 0.5}, {2, 2, 2}}}}, 3);
  double vol = 0.0;
  for (const auto& b : u.disjoint_boxes()) {
    double v = 1.0;
    for (int k = 0; k < 3; ++k) v *= b.hi[k] - b.lo[k];
    vol += v;
  }
  CHECK(vol == doctest::Approx(1.0 + 3.375 - 0.125));
}

TEST_CASE("burdzy integral") {
  const auto v = burdzy_integral(power(1.5), 3);
  CHECK(v.status == IntegralStatus::Converges);
  CHECK(v.value == doctest::Approx(4 * pi).epsilon(1e-6));
  CHECK(v.error_bound < 1e-4 * v.value);

  const auto lin = burdzy_integral(power(1.0), 3);
  CHECK(lin.status == IntegralStatus::Diverges);
  CHECK(lin.shells_used <= 60);
  // Shells are asymptotically constant: sigma_1 log 2 each.
  CHECK(lin.shell_evidence.back().second == doctest::Approx(2 * pi * std::log(2.0)).epsilon(1e-8));
  CHECK(burdzy_integral(power(1.0), 5).status == IntegralStatus::Diverges);

  CHECK(burdzy_integral(power_log(1.0), 3).status == IntegralStatus::Diverges);
  const auto p2 = burdzy_integral(power_log(2.0), 3);
  CHECK(p2.status == IntegralStatus::Converges);
  CHECK(p2.value == doctest::Approx(2 * pi).epsilon(5e-3));
  const auto p2d2 = burdzy_integral(power_log(2.0), 2);
  CHECK(p2d2.value == doctest::Approx(2.0).epsilon(5e-3));
  CHECK_THROWS(burdzy_integral(power(1.5), 1));
}

TEST_CASE("beurling-dahlberg integral") {
  SUBCASE("graph against polar oracle") {
    const auto v = beurling_dahlberg_integral(graph(power(1.5), 3));
    CHECK(v.status == IntegralStatus::Converges);
    CHECK(v.value == doctest::Approx(graph_integral_oracle_d3(1.5)).epsilon(1e-5));
    CHECK(beurling_dahlberg_integral(graph(power(1.0), 3)).status == IntegralStatus::Diverges);
  }
  SUBCASE("box against tensor oracle") {
    const Box box{{0.5, 0.5, 0.1}, {0.6, 0.6, 0.2}};
    const auto v = beurling_dahlberg_integral(SetSpec(BoxUnion{{box}}, 3));
    CHECK(v.status == IntegralStatus::Converges);
    CHECK(v.certificate == "finite");
    CHECK(v.value == doctest::Approx(box_oracle(box)).epsilon(1e-8));
  }
  SUBCASE("empty union and box touching the origin") {
    CHECK(beurling_dahlberg_integral(SetSpec(BoxUnion{}, 3)).value == 0.0);
    const auto v = beurling_dahlberg_integral(SetSpec(BoxUnion{{Box{{-0.1, -0.1, 0.0}, {0.1, 0.1, 0.1}}}}, 3));
    CHECK(v.status == IntegralStatus::Diverges);
  }
}

TEST_CASE("thorn criteria") {
  const auto b4 = thorn_criterion_brownian(power(1.5), 4);
  CHECK(b4.status == IntegralStatus::Converges);
  CHECK(b4.value == doctest::Approx(2.0).epsilon(5e-3));
  CHECK(thorn_criterion_brownian(power(1.0), 4).status == IntegralStatus::Diverges);
  CHECK(thorn_criterion_brownian(power(2.0), 3).status == IntegralStatus::Diverges);

  const auto s = thorn_criterion_stable(power_log(2.0), 3, 1.0);
  CHECK(s.status == IntegralStatus::Converges);
  CHECK(s.value == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(thorn_criterion_stable(power_log(1.0), 3, 1.0).status == IntegralStatus::Diverges);
  CHECK(thorn_criterion_stable(power(1.0), 3, 1.0).status == IntegralStatus::Diverges);
  try {
    thorn_criterion_brownian(power(1.5), 2);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "thorn criteria require d>=3");
  }
}

TEST_CASE("shell certification") {
  std::vector<double> geo, err;
  for (int j = 0; j < 40; ++j) {
    geo.push_back(std::pow(0.5, j));
    err.push_back(0.0);
  }
  const auto g = certify_shells(geo, err, 0);
  CHECK(g.status == IntegralStatus::Converges);
  CHECK(g.value == doctest::Approx(2.0).epsilon(1e-10));

  std::vector<double> harmonic(30, 1.0);
  CHECK(certify_shells(harmonic, std::vector<double>(30, 0.0), 0).status == IntegralStatus::Diverges);

  std::vector<double> few(3, 1.0);
  CHECK(certify_shells(few, std::vector<double>(3, 0.0), 0).status == IntegralStatus::Inconclusive);
  CHECK(certify_shells(few, std::vector<double>(3, 0.0), 0, true).status == IntegralStatus::Converges);
}

TEST_CASE("minimal thinness verdicts") {
  const auto cat = default_catalog(3);
  for (const auto& s : cat) {
    const auto lin = minimal_thinness_verdict(graph(power(1.0), 3), s);
    CHECK(lin.status == SetStatus::NotMinimallyThin);
    CHECK(lin.process_independent);
    CHECK(minimal_thinness_verdict(graph(power(1.5), 3), s).status == SetStatus::MinimallyThin);
  }
  CHECK(minimal_thinness_verdict(graph(power(1.5), 3), ExponentSpec(Stable{0.5}, 3)).status == SetStatus::MinimallyThin);
  const SetSpec far(BoxUnion{{Box{{0.5, 0.5, 0.5}, {0.6, 0.6, 0.6}}}}, 3);
  const auto rec = minimal_thinness_verdict(far, cat[0]);
  CHECK(rec.status == SetStatus::Unknown);
  CHECK(rec.inconclusive);

  const SetSpec thorn(Thorn{power_log(2.0)}, 3);
  const auto t = minimal_thinness_verdict(thorn, ExponentSpec(Stable{1.0}, 3));
  CHECK(t.status == SetStatus::Thin);
  CHECK(t.ordinary_thinness);
  CHECK(minimal_thinness_verdict(SetSpec(Thorn{power(1.0)}, 3), ExponentSpec(Stable{1.0}, 3)).status ==
        SetStatus::NotThin);
  CHECK(minimal_thinness_verdict(thorn, cat[2]).status == SetStatus::Unknown);
  CHECK_THROWS_AS(minimal_thinness_verdict(graph(power(1.5), 2), cat[0]), PreconditionError);
}

TEST_CASE("property: verdicts do not depend on the process") {
  std::uint64_t st = 3;
  auto next = [&] {
    st = st * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(st >> 11) * 0x1.0p-53;
  };
  const auto cat = default_catalog(3);
  for (int k = 0; k < 8; ++k) {
    const double beta = 1.0 + 1.5 * next();
    const double c = 0.2 + 0.8 * next();
    const auto set = graph(power(beta, c), 3);
    const auto ref = minimal_thinness_verdict(set, cat[0]).status;
    for (std::size_t i = 1; i < cat.size(); ++i) CHECK(minimal_thinness_verdict(set, cat[i]).status == ref);
  }
}

TEST_CASE("property: burdzy value is monotone in the profile") {
  // Larger f gives a larger integral.
  for (double beta : {1.3, 1.6, 2.0}) {
    const auto small = burdzy_integral(power(beta, 0.5), 3);
    const auto big = burdzy_integral(power(beta, 1.0), 3);
    REQUIRE(small.status == IntegralStatus::Converges);
    CHECK(big.value == doctest::Approx(2 * small.value).epsilon(1e-6));
    CHECK(big.value == doctest::Approx(2 * pi / (beta - 1)).epsilon(1e-5));
  }
}
