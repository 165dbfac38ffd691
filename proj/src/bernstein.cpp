// SPDX-License-Identifier: Apache-2.0
#include "hst/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/laplace.hpp"
#include "hst/quadrature.hpp"

namespace hst {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using cplx = std::complex<double>;

// Taylor branches keep (1+z)^a - 1 accurate when |z| is tiny, which is where
// the Talbot contour sits for large t.
cplx log1p_c(cplx z) {
  if (std::abs(z) < 1e-3) return z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * 0.25)));
  return std::log(1.0 + z);
}

cplx expm1_c(cplx y) {
  if (std::abs(y) < 1e-3) return y * (1.0 + y * (0.5 + y * (1.0 / 6.0 + y / 24.0)));
  return std::exp(y) - 1.0;
}

double stable_levy_density(double half_alpha, double t) {
  return half_alpha / std::tgamma(1.0 - half_alpha) * std::pow(t, -1.0 - half_alpha);
}

bool in_open(double v, double lo, double hi) { return v > lo && v < hi; }

long double phi_ld(const ExponentSpec& spec, long double lambda) {
  return std::visit(
      overloaded{
          [&](const Stable& s) { return std::pow(lambda, static_cast<long double>(s.alpha) / 2); },
          [&](const RelativisticStable& s) {
            const long double mass = std::pow(static_cast<long double>(s.m), 2.0L / s.alpha);
            return s.m * std::expm1(static_cast<long double>(s.alpha) / 2 * std::log1p(lambda / mass));
          },
          [&](const StableMix& s) {
            return std::pow(lambda, static_cast<long double>(s.alpha) / 2) +
                   std::pow(lambda, static_cast<long double>(s.beta) / 2);
          },
          [&](const BrownianPlusStable& s) {
            return s.a * lambda + std::pow(static_cast<long double>(s.b), static_cast<long double>(s.beta)) *
                                      std::pow(lambda, static_cast<long double>(s.beta) / 2);
          }},
      spec.kind());
}

// Largest and smallest stable index carried by the Levy density; these set the
// decay rates of the reconstruction integrand on the log-time axis.
std::pair<double, double> jump_indices(const ExponentSpec& spec) {
  return std::visit(overloaded{[](const Stable& s) { return std::pair{s.alpha, s.alpha}; },
                               [](const RelativisticStable& s) { return std::pair{s.alpha, 2.0}; },
                               [](const StableMix& s) { return std::pair{s.alpha, s.beta}; },
                               [](const BrownianPlusStable& s) { return std::pair{s.beta, s.beta}; }},
                    spec.kind());
}

}  // namespace

ExponentSpec::ExponentSpec(ExponentKind kind, int dimension) : kind_(kind), dimension_(dimension) {
  if (dimension < 2) throw DomainError("dimension must be >= 2");
  std::visit(overloaded{
                 [&](const Stable& s) {
                   if (!in_open(s.alpha, 0.0, 2.0)) throw DomainError("process.alpha out of range (0,2)");
                   alpha_index_ = s.alpha;
                   drift_ = 0.0;
                   small_index_ = s.alpha / 2;
                 },
                 [&](const RelativisticStable& s) {
                   if (!in_open(s.alpha, 0.0, 2.0)) throw DomainError("process.alpha out of range (0,2)");
                   if (!(s.m > 0.0) || !std::isfinite(s.m)) throw DomainError("process.m must be positive");
                   // phi is linear at the origin, so the process is recurrent in the plane.
                   if (dimension < 3) throw DomainError("relativistic stable process requires dimension >= 3");
                   alpha_index_ = s.alpha;
                   drift_ = 0.0;
                   small_index_ = 1.0;
                 },
                 [&](const StableMix& s) {
                   if (!in_open(s.alpha, 0.0, 2.0)) throw DomainError("process.alpha out of range (0,2)");
                   if (!in_open(s.beta, 0.0, s.alpha))
                     throw DomainError("process.beta out of range (0,alpha)");
                   alpha_index_ = s.alpha;
                   drift_ = 0.0;
                   small_index_ = s.beta / 2;
                 },
                 [&](const BrownianPlusStable& s) {
                   if (!(s.a > 0.0) || !std::isfinite(s.a)) throw DomainError("process.a must be positive");
                   if (!(s.b > 0.0) || !std::isfinite(s.b)) throw DomainError("process.b must be positive");
                   if (!in_open(s.beta, 0.0, 2.0)) throw DomainError("process.beta out of range (0,2)");
                   if (dimension < 3) throw DomainError("Brownian plus stable process requires dimension >= 3");
                   alpha_index_ = 2.0;
                   drift_ = s.a;
                   small_index_ = s.beta / 2;
                 }},
             kind_);
}

std::string ExponentSpec::name() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const Stable& s) { os << "Stable{alpha=" << s.alpha << "}"; },
                        [&](const RelativisticStable& s) {
                          os << "RelativisticStable{alpha=" << s.alpha << ",m=" << s.m << "}";
                        },
                        [&](const StableMix& s) { os << "StableMix{alpha=" << s.alpha << ",beta=" << s.beta << "}"; },
                        [&](const BrownianPlusStable& s) {
                          os << "BrownianPlusStable{a=" << s.a << ",b=" << s.b << ",beta=" << s.beta << "}";
                        }},
             kind_);
  os << " d=" << dimension_;
  return os.str();
}

std::vector<ExponentSpec> default_catalog(int dimension) {
  return {ExponentSpec(Stable{1.0}, dimension), ExponentSpec(RelativisticStable{1.0, 1.0}, dimension),
          ExponentSpec(StableMix{1.5, 0.5}, dimension), ExponentSpec(BrownianPlusStable{1.0, 1.0, 1.0}, dimension)};
}

double phi(const ExponentSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("phi: lambda must be positive");
  return std::visit(overloaded{[&](const Stable& s) { return std::pow(lambda, s.alpha / 2); },
                               [&](const RelativisticStable& s) {
                                 const double mass = std::pow(s.m, 2.0 / s.alpha);
                                 return s.m * std::expm1(s.alpha / 2 * std::log1p(lambda / mass));
                               },
                               [&](const StableMix& s) {
                                 return std::pow(lambda, s.alpha / 2) + std::pow(lambda, s.beta / 2);
                               },
                               [&](const BrownianPlusStable& s) {
                                 return s.a * lambda + std::pow(s.b, s.beta) * std::pow(lambda, s.beta / 2);
                               }},
                    spec.kind());
}

std::complex<double> phi(const ExponentSpec& spec, std::complex<double> s) {
  return std::visit(overloaded{[&](const Stable& p) { return std::pow(s, p.alpha / 2); },
                               [&](const RelativisticStable& p) {
                                 const double mass = std::pow(p.m, 2.0 / p.alpha);
                                 return p.m * expm1_c(p.alpha / 2 * log1p_c(s / mass));
                               },
                               [&](const StableMix& p) { return std::pow(s, p.alpha / 2) + std::pow(s, p.beta / 2); },
                               [&](const BrownianPlusStable& p) {
                                 return p.a * s + std::pow(p.b, p.beta) * std::pow(s, p.beta / 2);
                               }},
                    spec.kind());
}

double levy_density(const ExponentSpec& spec, double t) {
  if (!(t > 0.0)) throw DomainError("levy_density: t must be positive");
  return std::visit(
      overloaded{[&](const Stable& s) { return stable_levy_density(s.alpha / 2, t); },
                 [&](const RelativisticStable& s) {
                   const double mass = std::pow(s.m, 2.0 / s.alpha);
                   return stable_levy_density(s.alpha / 2, t) * std::exp(-mass * t);
                 },
                 [&](const StableMix& s) {
                   return stable_levy_density(s.alpha / 2, t) + stable_levy_density(s.beta / 2, t);
                 },
                 [&](const BrownianPlusStable& s) { return std::pow(s.b, s.beta) * stable_levy_density(s.beta / 2, t); }},
      spec.kind());
}

double potential_density(const ExponentSpec& spec, double t, const InversionOptions& opt) {
  if (!(t > 0.0)) throw DomainError("potential_density: t must be positive");
  if (const auto* s = std::get_if<Stable>(&spec.kind())) {
    const double a = s->alpha / 2;
    return std::pow(t, a - 1.0) / std::tgamma(a);
  }
  const laplace::Transform transform = [&spec](std::complex<double> z) { return 1.0 / phi(spec, z); };
  const double main = laplace::talbot(transform, t, opt.talbot_nodes);
  const double check = laplace::talbot(transform, t, opt.check_nodes);
  const double residual = std::abs(main - check) / std::max(std::abs(main), std::numeric_limits<double>::min());
  if (residual <= opt.tolerance && main > 0.0) return main;

  const laplace::RealTransform real_transform = [&spec](long double lambda) { return 1.0L / phi_ld(spec, lambda); };
  const double fallback = laplace::stehfest(real_transform, t, opt.stehfest_terms);
  const double scale = std::max(std::abs(fallback), std::numeric_limits<double>::min());
  const double fb_residual = std::min(std::abs(fallback - main), std::abs(fallback - check)) / scale;
  if (fb_residual <= opt.fallback_tolerance && fallback > 0.0) return fallback;
  std::ostringstream os;
  os << "potential_density: Laplace inversion failed at t=" << t << " (residual " << fb_residual << ")";
  throw InversionError(os.str(), fb_residual);
}


LevyKhintchineReport verify_levy_khintchine(const ExponentSpec& spec, std::span<const double> lambda_grid,
                                            double tol) {
  if (lambda_grid.empty()) throw PreconditionError("verify_levy_khintchine: empty lambda grid");
  const auto [largest, smallest] = jump_indices(spec);
  const double rate_lo = 1.0 - largest / 2;
  const double rate_hi = smallest / 2;
  LevyKhintchineReport report;
  report.passed = true;
  for (double lambda : lambda_grid) {
    if (!(lambda > 0.0)) throw DomainError("verify_levy_khintchine: lambda must be positive");
    auto g = [&](double s) {
      const double t = std::exp(s);
      return -std::expm1(-lambda * t) * levy_density(spec, t) * t;
    };
    const double s0 = -std::log(lambda);
    const QuadResult q = integrate_with_exponential_tails(g, s0, 40.0 / rate_lo, rate_lo, 40.0 / rate_hi, rate_hi, 1e-11);
    LevyKhintchineRow row;
    row.lambda = lambda;
    row.reconstructed = spec.drift() * lambda + q.value;
    row.phi = phi(spec, lambda);
    row.rel_deviation = std::abs(row.reconstructed - row.phi) / row.phi;
    row.converged = q.converged;
    report.max_rel_deviation = std::max(report.max_rel_deviation, row.rel_deviation);
    if (!row.converged || !(row.rel_deviation <= tol)) report.passed = false;
    report.rows.push_back(row);
  }
  return report;
}

TransformRow potential_transform(const ExponentSpec& spec, double lambda, double u_scale) {
  if (!(lambda > 0.0)) throw DomainError("potential_transform: lambda must be positive");
  const double rate_lo = spec.alpha_index() / 2;
  auto g = [&](double s) {
    const double t = std::exp(s);
    const double decay = std::exp(-lambda * t);
    if (decay == 0.0) return 0.0;
    return u_scale * decay * potential_density(spec, t) * t;
  };
  const double s0 = -std::log(lambda);
  const QuadResult q = integrate_with_exponential_tails(g, s0, 40.0 / rate_lo, rate_lo, std::log(60.0), 0.0, 1e-10);
  TransformRow row;
  row.lambda = lambda;
  row.transform = q.value;
  row.residual = std::abs(phi(spec, lambda) * q.value - 1.0);
  row.converged = q.converged;
  return row;
}

}  // namespace hst
