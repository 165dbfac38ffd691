// SPDX-License-Identifier: Apache-2.0
#include "hst/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "hst/csv.hpp"
#include "hst/errors.hpp"
#include "hst/parallel.hpp"

namespace hst {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature abs_tol must be positive");
  if (!(rel_tol > 0.0)) throw DomainError("quadrature rel_tol must be positive");
  if (max_refinements < 1) throw DomainError("quadrature max_refinements must be >= 1");
  if (!(tail_cutoff_multiplier > 0.0)) throw DomainError("quadrature tail_cutoff_multiplier must be positive");
}

namespace {

constexpr double kPi = std::numbers::pi;
// Below s = -8 the Gaussian factor exp(-e^{-s}) is under e^{-2980}.
constexpr double kGaussianSpan = 8.0;

double smallest_jump_index(const ExponentSpec& spec) {
  return std::visit([](const auto& k) -> double {
    using T = std::decay_t<decltype(k)>;
    if constexpr (std::is_same_v<T, StableMix>) return k.beta;
    else if constexpr (std::is_same_v<T, BrownianPlusStable>) return k.beta;
    else return k.alpha;
  }, spec.kind());
}

KernelValue finish(const char* what, double r, const QuadResult& res, const QuadratureConfig& q) {
  if (!res.converged || !std::isfinite(res.value) || res.error > std::max(q.abs_tol, q.rel_tol * std::abs(res.value))) {
    std::ostringstream os;
    os << what << ": quadrature did not converge at r=" << r << " (error " << res.error << ")";
    throw ConvergenceError(os.str(), res.value, res.error);
  }
  return {res.value, res.error};
}

// int_0^inf (4 pi t)^{-d/2} exp(-r^2/(4t)) w(t) dt with t = (r^2/4) e^s;
// `rate_hi` is the decay rate of the integrand as s -> +inf.
template <class W>
QuadResult subordination_integral(int d, double r, W&& w, double rate_hi, const QuadratureConfig& q) {
  const double t0 = 0.25 * r * r;
  const double half_d = 0.5 * d;
  auto g = [&](double s) {
    const double t = t0 * std::exp(s);
    const double log_gauss = -half_d * std::log(4.0 * kPi * t) - std::exp(-s);
    if (log_gauss < -745.0) return 0.0;
    return std::exp(log_gauss) * w(t) * t;
  };
  const double m = q.tail_cutoff_multiplier;
  return integrate_with_exponential_tails(g, 0.0, kGaussianSpan * m, 0.0, 40.0 * m / rate_hi, rate_hi, q.rel_tol,
                                          q.max_refinements);
}

void check_radius(const char* what, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError(std::string(what) + ": r must be positive");
}

void check_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw PreconditionError(std::string(what) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError(std::string(what) + ": grid points must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw PreconditionError(std::string(what) + ": grid must be strictly increasing");
  }
}

void summarize(RatioSweep& s) {
  const auto [lo, hi] = std::minmax_element(s.ratios.begin(), s.ratios.end());
  s.min_ratio = *lo;
  s.max_ratio = *hi;
  s.spread = s.max_ratio / s.min_ratio;
  const bool finite = std::all_of(s.ratios.begin(), s.ratios.end(), [](double v) { return std::isfinite(v) && v > 0; });
  s.passed = !s.applicable || (finite && s.spread <= s.spread_bound);
}

template <class F>
RatioSweep sweep(std::string name, std::span<const double> grid, double bound, int threads, F&& ratio_at) {
  RatioSweep s;
  s.name = std::move(name);
  s.grid.assign(grid.begin(), grid.end());
  s.ratios.resize(grid.size());
  s.spread_bound = bound;
  parallel_for(grid.size(), threads, [&](std::size_t i) { s.ratios[i] = ratio_at(grid[i]); });
  return s;
}

}  // namespace

KernelValue green_radial(const ExponentSpec& spec, double r, const QuadratureConfig& q) {
  check_radius("green_radial", r);
  q.validate();
  const double rate = 0.5 * spec.dimension() - spec.small_lambda_index();
  const auto res = subordination_integral(spec.dimension(), r, [&](double t) { return potential_density(spec, t); },
                                          rate, q);
  return finish("green_radial", r, res, q);
}

KernelValue jump_density(const ExponentSpec& spec, double r, const QuadratureConfig& q) {
  check_radius("jump_density", r);
  q.validate();
  const double rate = 0.5 * spec.dimension() + 0.5 * smallest_jump_index(spec);
  const auto res = subordination_integral(spec.dimension(), r, [&](double t) { return levy_density(spec, t); }, rate, q);
  return finish("jump_density", r, res, q);
}

double renewal_surrogate(const ExponentSpec& spec, double t) {
  if (!(t > 0.0)) throw DomainError("renewal_surrogate: t must be positive");
  return 1.0 / std::sqrt(phi(spec, 1.0 / (t * t)));
}

KernelValue green_ball_mass(const ExponentSpec& spec, double t, const QuadratureConfig& q) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("green_ball_mass: t must be positive");
  q.validate();
  const double half_d = 0.5 * spec.dimension();
  const double tau0 = 0.25 * t * t;
  // Mass of B(0,t) under the Gaussian kernel at time tau is P(d/2, t^2/(4 tau)).
  auto g = [&](double s) {
    const double tau = tau0 * std::exp(s);
    return potential_density(spec, tau) * tau * boost::math::gamma_p(half_d, std::exp(-s));
  };
  const double rate_lo = 0.5 * spec.alpha_index();
  const double rate_hi = half_d - spec.small_lambda_index();
  const double m = q.tail_cutoff_multiplier;
  const auto res = integrate_with_exponential_tails(g, 0.0, 40.0 * m / rate_lo, rate_lo, 40.0 * m / rate_hi, rate_hi,
                                                    q.rel_tol, q.max_refinements);
  return finish("green_ball_mass", t, res, q);
}

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double stable_green_closed_form(double alpha, int d, double r) {
  check_radius("stable_green_closed_form", r);
  return std::tgamma(0.5 * (d - alpha)) / (std::pow(2.0, alpha) * std::pow(kPi, 0.5 * d) * std::tgamma(0.5 * alpha)) *
         std::pow(r, alpha - d);
}

double stable_jump_closed_form(double alpha, int d, double r) {
  check_radius("stable_jump_closed_form", r);
  return alpha * std::pow(2.0, alpha - 1.0) * std::pow(kPi, -0.5 * d) * std::tgamma(0.5 * (d + alpha)) /
         std::tgamma(1.0 - 0.5 * alpha) * std::pow(r, -d - alpha);
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log_grid: need 0 < lo < hi");
  if (per_decade < 1) throw DomainError("log_grid: per_decade must be >= 1");
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  const int n = std::max(1, static_cast<int>(std::lround(std::log10(hi / lo) * per_decade)));
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = std::exp(llo + (lhi - llo) * k / n);
  out.front() = lo;
  out.back() = hi;
  return out;
}

RadialKernelTable tabulate_kernels(const ExponentSpec& spec, std::span<const double> r_grid, const QuadratureConfig& q,
                                   int threads) {
  check_grid(r_grid, "tabulate_kernels");
  const std::size_t n = r_grid.size();
  RadialKernelTable t;
  t.r_grid.assign(r_grid.begin(), r_grid.end());
  t.g_values.resize(n);
  t.g_errors.resize(n);
  t.j_values.resize(n);
  t.j_errors.resize(n);
  t.v_values.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto g = green_radial(spec, r_grid[i], q);
    const auto j = jump_density(spec, r_grid[i], q);
    t.g_values[i] = g.value;
    t.g_errors[i] = g.error;
    t.j_values[i] = j.value;
    t.j_errors[i] = j.error;
    t.v_values[i] = renewal_surrogate(spec, r_grid[i]);
  });
  return t;
}

void write_kernel_table_csv(std::ostream& os, const RadialKernelTable& t) {
  csv::row(os, {"r", "g", "g_err", "j", "j_err", "v"});
  for (std::size_t i = 0; i < t.r_grid.size(); ++i) {
    csv::row(os, {csv::number(t.r_grid[i]), csv::number(t.g_values[i]), csv::number(t.g_errors[i]),
                  csv::number(t.j_values[i]), csv::number(t.j_errors[i]), csv::number(t.v_values[i])});
  }
}

RatioSweep verify_green_asymptotics(const ExponentSpec& spec, std::span<const double> r_grid,
                                    const QuadratureConfig& q, double spread_bound, int threads) {
  check_grid(r_grid, "verify_green_asymptotics");
  const int d = spec.dimension();
  RatioSweep s = sweep("green", r_grid, spread_bound, threads, [&](double r) {
    return green_radial(spec, r, q).value * std::pow(r, d) * phi(spec, 1.0 / (r * r));
  });
  if (spec.alpha_index() == 2.0) {
    const double r = r_grid.front();
    const double g = s.ratios.front() / (std::pow(r, d) * phi(spec, 1.0 / (r * r)));
    s.brownian_refinement = g * 4.0 * spec.drift() * std::pow(kPi, 0.5 * d) * std::pow(r, d - 2) / std::tgamma(0.5 * d - 1.0);
    s.brownian_refinement_checked = true;
    s.brownian_refinement_passed = std::abs(s.brownian_refinement - 1.0) <= 0.05;
  }
  summarize(s);
  s.passed = s.passed && s.brownian_refinement_passed;
  return s;
}

RatioSweep verify_j_asymptotics(const ExponentSpec& spec, std::span<const double> r_grid, const QuadratureConfig& q,
                                double spread_bound, int threads) {
  check_grid(r_grid, "verify_j_asymptotics");
  const int d = spec.dimension();
  RatioSweep s;
  s.name = "jump";
  s.grid.assign(r_grid.begin(), r_grid.end());
  s.spread_bound = spread_bound;
  s.ratios.resize(r_grid.size());
  s.doubling_ratios.resize(r_grid.size());
  // j(r) decays like r^{-d-beta} while phi(r^{-2}) r^{-d} grows like r^{-d-2}
  // when alpha = 2, so only the doubling property is meaningful there.
  s.applicable = spec.alpha_index() < 2.0;
  parallel_for(r_grid.size(), threads, [&](std::size_t i) {
    const double r = r_grid[i];
    const double j = jump_density(spec, r, q).value;
    s.ratios[i] = j * std::pow(r, d) / phi(spec, 1.0 / (r * r));
    s.doubling_ratios[i] = j / jump_density(spec, 2.0 * r, q).value;
  });
  s.doubling_constant = *std::max_element(s.doubling_ratios.begin(), s.doubling_ratios.end());
  summarize(s);
  return s;
}

RatioSweep verify_green_mass_ratio(const ExponentSpec& spec, std::span<const double> t_grid,
                                   const QuadratureConfig& q, double spread_bound, int threads) {
  check_grid(t_grid, "verify_green_mass_ratio");
  RatioSweep s = sweep("green_mass", t_grid, spread_bound, threads, [&](double t) {
    return green_ball_mass(spec, t, q).value * phi(spec, 1.0 / (t * t));
  });
  summarize(s);
  return s;
}

RatioSweep green_renewal_ratio(const ExponentSpec& spec, std::span<const double> r_grid, const QuadratureConfig& q,
                               double spread_bound, int threads) {
  check_grid(r_grid, "green_renewal_ratio");
  const int d = spec.dimension();
  RatioSweep s = sweep("green_renewal", r_grid, spread_bound, threads, [&](double r) {
    const double v = renewal_surrogate(spec, r);
    return green_radial(spec, r, q).value * std::pow(r, d) / (v * v);
  });
  summarize(s);
  return s;
}

void write_ratio_sweeps_csv(std::ostream& os, std::span<const RatioSweep> sweeps) {
  csv::row(os, {"sweep", "x", "ratio", "spread", "spread_bound", "passed"});
  for (const auto& s : sweeps) {
    const std::string spread = csv::number(s.spread);
    const std::string bound = csv::number(s.spread_bound);
    const char* passed = !s.applicable ? "n/a" : (s.passed ? "true" : "false");
    for (std::size_t i = 0; i < s.grid.size(); ++i)
      csv::row(os, {s.name, csv::number(s.grid[i]), csv::number(s.ratios[i]), spread, bound, passed});
    if (!s.doubling_ratios.empty()) {
      const std::string name = s.name + "_doubling";
      const std::string c = csv::number(s.doubling_constant);
      for (std::size_t i = 0; i < s.grid.size(); ++i)
        csv::row(os, {name, csv::number(s.grid[i]), csv::number(s.doubling_ratios[i]), c, "", "true"});
    }
    if (s.brownian_refinement_checked) {
      csv::row(os, {s.name + "_newtonian", csv::number(s.grid.front()), csv::number(s.brownian_refinement), "", "0.05",
                    s.brownian_refinement_passed ? "true" : "false"});
    }
  }
}

}  // namespace hst
