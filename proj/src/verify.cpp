// SPDX-License-Identifier: Apache-2.0
#include "hst/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/halfspace.hpp"
#include "hst/kernels.hpp"
#include "hst/rng.hpp"
#include "hst/thinness.hpp"

namespace hst {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Runs one property; exceptions count as failures with their message.
void check(std::vector<PropertyResult>& out, std::string name, const std::function<std::pair<bool, std::string>()>& body) {
  PropertyResult r;
  r.name = std::move(name);
  try {
    auto [ok, detail] = body();
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  out.push_back(std::move(r));
}

std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
  return g;
}

// Signs of the first two divided differences, up to a noise floor relative to
// the values (u of a member with finite mean flattens to a constant).
bool completely_monotone_prefix(const std::vector<double>& t, const std::function<double(double)>& f) {
  std::vector<double> v;
  for (double s : t) v.push_back(f(s));
  const double floor = 1e-9 * std::abs(v.front());
  std::vector<double> slope, tol;
  for (std::size_t i = 1; i < t.size(); ++i) {
    slope.push_back((v[i] - v[i - 1]) / (t[i] - t[i - 1]));
    tol.push_back(floor / (t[i] - t[i - 1]));
  }
  for (std::size_t i = 0; i < slope.size(); ++i) {
    if (!(slope[i] < tol[i])) return false;
    if (i > 0 && !(slope[i] > slope[i - 1] - tol[i] - tol[i - 1])) return false;
  }
  return true;
}

HPoint random_hpoint(StreamRng& rng, int d, double spread, double height) {
  HPoint x;
  for (int k = 0; k < d - 1; ++k) x.x_tilde.push_back(spread * (2.0 * rng.uniform() - 1.0));
  x.x_d = height * rng.uniform();
  return x;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const std::vector<ExponentSpec>& catalog, const VerifyOptions& opt) {
  std::vector<PropertyResult> out;
  const auto lambda_grid = geometric(1e-2, 1e4, 25);

  for (const auto& spec : catalog) {
    const std::string tag = "[" + spec.name() + "]";
    check(out, "transform_identity" + tag, [&] {
      double worst = 0.0;
      bool converged = true;
      for (double l : lambda_grid) {
        const auto row = potential_transform(spec, l, opt.u_scale);
        worst = std::max(worst, row.residual);
        converged = converged && row.converged;
      }
      return std::pair{converged && worst <= 1e-6, "max residual " + fmt(worst)};
    });
    check(out, "levy_khintchine" + tag, [&] {
      const auto rep = verify_levy_khintchine(spec, lambda_grid, 1e-6);
      return std::pair{rep.passed, "max deviation " + fmt(rep.max_rel_deviation)};
    });
    check(out, "bernstein_shape" + tag, [&] {
      const auto g = geometric(1e-4, 1e6, 200);
      for (std::size_t i = 1; i < g.size(); ++i) {
        if (!(phi(spec, g[i]) > phi(spec, g[i - 1]))) return std::pair{false, std::string("not increasing")};
        const double mid = phi(spec, 0.5 * (g[i] + g[i - 1]));
        const double avg = 0.5 * (phi(spec, g[i]) + phi(spec, g[i - 1]));
        if (mid < avg - 1e-12 * std::abs(avg)) return std::pair{false, "midpoint concavity fails at " + fmt(g[i])};
      }
      return std::pair{true, std::string("increasing, midpoint concave")};
    });
    check(out, "complete_monotonicity" + tag, [&] {
      const auto t = geometric(1e-3, 1e2, 30);
      const bool eta = completely_monotone_prefix(t, [&](double s) { return levy_density(spec, s); });
      const bool u = completely_monotone_prefix(t, [&](double s) { return potential_density(spec, s); });
      return std::pair{eta && u, std::string("eta ") + (eta ? "ok" : "fails") + ", u " + (u ? "ok" : "fails")};
    });
    check(out, "asymptotic_index" + tag, [&] {
      const double index = std::log(phi(spec, 1e8)) / std::log(1e8);
      const double dev = std::abs(index - 0.5 * spec.alpha_index());
      return std::pair{dev <= 0.02, "deviation " + fmt(dev)};
    });
    check(out, "kernel_monotonicity" + tag, [&] {
      const auto grid = log_grid(1e-3, 1.0, 8);
      const auto t = tabulate_kernels(spec, grid, {}, opt.threads);
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(t.g_values[i] < t.g_values[i - 1]) || !(t.j_values[i] < t.j_values[i - 1]) ||
            !(t.v_values[i] > t.v_values[i - 1]))
          return std::pair{false, "monotonicity fails at r=" + fmt(grid[i])};
      }
      return std::pair{true, std::string("G, j decreasing; V increasing")};
    });
    check(out, "green_renewal_bounded" + tag, [&] {
      const auto grid = log_grid(1e-3, 1.0, 10);
      const auto s = green_renewal_ratio(spec, grid, {}, 20.0, opt.threads);
      return std::pair{s.passed, "range [" + fmt(s.min_ratio) + ", " + fmt(s.max_ratio) + "]"};
    });
    check(out, "halfspace_green_symmetry" + tag, [&] {
      StreamRng rng(7, 0);
      const int d = spec.dimension();
      for (int k = 0; k < 20; ++k) {
        const HPoint x = random_hpoint(rng, d, 0.4, 0.6);
        const HPoint y = random_hpoint(rng, d, 0.4, 0.6);
        const auto a = green_halfspace_bounds(spec, x, y, 2.0);
        const auto b = green_halfspace_bounds(spec, y, x, 2.0);
        const double g = green_radial(spec, distance(x, y)).value;
        if (a.center != b.center || a.lower != b.lower || a.upper != b.upper)
          return std::pair{false, std::string("asymmetric bounds")};
        if (a.center > g) return std::pair{false, std::string("center exceeds G")};
      }
      return std::pair{true, std::string("20 random pairs")};
    });
  }

  check(out, "stable_scaling", [&] {
    StreamRng rng(11, 0);
    const double alphas[] = {0.5, 1.0, 1.5};
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double alpha = alphas[k % 3];
      const int d = 2 + (k / 3) % 2;
      const ExponentSpec s(Stable{alpha}, d);
      const double r = std::exp(std::log(1e-3) * rng.uniform());
      const double l = std::exp(std::log(100.0) * (2.0 * rng.uniform() - 1.0));
      const double g = green_radial(s, l * r).value / green_radial(s, r).value / std::pow(l, alpha - d);
      const double j = jump_density(s, l * r).value / jump_density(s, r).value / std::pow(l, -alpha - d);
      worst = std::max({worst, std::abs(g - 1.0), std::abs(j - 1.0)});
    }
    return std::pair{worst <= 1e-8, "max deviation " + fmt(worst)};
  });
  check(out, "riesz_cross_check", [&] {
    const ExponentSpec s3(Stable{1.0}, 3);
    double worst = 0.0;
    for (double r : {0.01, 0.1, 1.0})
      worst = std::max(worst, std::abs(green_radial(s3, r).value / stable_green_closed_form(1.0, 3, r) - 1.0));
    const ExponentSpec s2(Stable{1.0}, 2);
    worst = std::max(worst, std::abs(jump_density(s2, 1.0).value / stable_jump_closed_form(1.0, 2, 1.0) - 1.0));
    return std::pair{worst <= 1e-6, "max deviation " + fmt(worst)};
  });
  check(out, "martin_containment", [&] {
    StreamRng rng(13, 0);
    int tested = 0;
    for (int k = 0; tested < 1000 && k < 100000; ++k) {
      const double alpha = 0.25 + 1.5 * rng.uniform();
      const int d = 2 + k % 2;
      const ExponentSpec s(Stable{alpha}, d);
      BoundaryPoint z;
      for (int i = 0; i < d - 1; ++i) z.z_tilde.push_back(2.0 * rng.uniform() - 1.0);
      HPoint x = random_hpoint(rng, d, 1.0, 0.5);
      if (!(norm(z) < 1.0) || !(distance(x, z) < 0.5)) continue;
      x.x_d = std::max(x.x_d, 1e-12);
      const auto b = martin_kernel_bounds(s, x, z, 1.0 + 1e-12);
      const double m = stable_martin_kernel(alpha, x, z);
      if (!(m >= b.lower && m <= b.upper)) return std::pair{false, "outside bounds at pair " + std::to_string(tested)};
      ++tested;
    }
    return std::pair{tested == 1000, std::to_string(tested) + " admissible pairs, c = 1"};
  });
  check(out, "bhp_ratio", [&] {
    StreamRng rng(17, 0);
    const ExponentSpec s(Stable{1.0}, 2);
    const BoundaryPoint far{{3.0}};
    std::vector<std::pair<HPoint, double>> samples;
    while (samples.size() < 100) {
      HPoint x{{0.25 * (2.0 * rng.uniform() - 1.0)}, 0.25 * rng.uniform()};
      if (norm(x) >= 0.25 || !(x.x_d > 0.0)) continue;
      samples.emplace_back(x, stable_martin_kernel(1.0, x, far));
    }
    const auto rep = bhp_ratio_check(s, samples, 50.0);
    return std::pair{rep.passed, "max ratio " + fmt(rep.max_ratio)};
  });
  check(out, "boundary_vanishing", [&] {
    const BoundaryPoint z{{0.0, 0.0}};
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (int k = 4; k <= 40; ++k) {
      const HPoint x{{0.5, 0.0}, std::ldexp(1.0, -k)};
      last = stable_martin_kernel(1.5, x, z);
      if (!(last < prev)) return std::pair{false, "not monotone at k=" + std::to_string(k)};
      prev = last;
    }
    return std::pair{last < 1e-5, "value at 2^-40: " + fmt(last)};
  });

  const int d = catalog.empty() ? 3 : catalog.front().dimension();
  const std::vector<ProfileSpec> profiles = {
      ProfileSpec(PowerLaw{1.0, 1.0}),       ProfileSpec(PowerLaw{1.0, 1.5}), ProfileSpec(PowerLaw{0.5, 2.0}),
      ProfileSpec(PowerLog{1.0, 1.0, 1.0}),  ProfileSpec(PowerLog{1.0, 1.0, 2.0}),
      ProfileSpec(PowerLog{1.0, 1.0, 0.5})};
  check(out, "process_independence", [&] {
    for (const auto& f : profiles) {
      const SetSpec set(LipschitzGraph{f, f.observed_lipschitz()}, d);
      std::optional<SetStatus> first;
      for (const auto& spec : catalog) {
        if (spec.dimension() != d) continue;
        const auto rec = minimal_thinness_verdict(set, spec);
        if (!rec.process_independent) return std::pair{false, std::string("flag not set")};
        if (first && *first != rec.status) return std::pair{false, "verdict differs for " + f.name()};
        first = rec.status;
      }
    }
    return std::pair{true, std::to_string(profiles.size()) + " profiles"};
  });
  check(out, "localization", [&] {
    // Tabulated twins agree with c r^beta below 0.25 and differ above it.
    for (double beta : {1.0, 1.5, 2.0}) {
      TabulatedRadial base{{}, {}, 0.0};
      TabulatedRadial twin{{}, {}, 0.0};
      for (double r : geometric(1e-3, 1.0, 40)) {
        base.r.push_back(r);
        twin.r.push_back(r);
        base.values.push_back(std::pow(r, beta));
        twin.values.push_back(r <= 0.25 ? std::pow(r, beta) : std::pow(0.25, beta) * (1.0 + 0.5 * (r - 0.25)));
      }
      base.lipschitz = beta + 1e-9;
      twin.lipschitz = beta + 1e-9;
      const auto a = burdzy_integral(ProfileSpec(base), d);
      const auto b = burdzy_integral(ProfileSpec(twin), d);
      if (a.status != b.status) return std::pair{false, "verdict flips for beta=" + fmt(beta)};
    }
    return std::pair{true, std::string("3 tail-modified twins")};
  });
  check(out, "burdzy_beurling_consistency", [&] {
    for (const auto& f : profiles) {
      const auto b = burdzy_integral(f, d);
      if (b.status != IntegralStatus::Diverges) continue;
      const SetSpec set(LipschitzGraph{f, f.observed_lipschitz()}, d);
      if (beurling_dahlberg_integral(set).status != IntegralStatus::Diverges)
        return std::pair{false, "Beurling-Dahlberg integral not divergent for " + f.name()};
    }
    return std::pair{true, std::string("divergent graphs have divergent Beurling-Dahlberg integrals")};
  });
  return out;
}

}  // namespace hst
