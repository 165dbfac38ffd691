// SPDX-License-Identifier: Apache-2.0
#include "hst/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hst/errors.hpp"
#include "hst/kernels.hpp"

namespace hst {

namespace {

constexpr double kWindow = 1.0;

void check_point(const HPoint& x, int d, const char* what) {
  if (x.dimension() != d) throw PreconditionError(std::string(what) + ": point dimension does not match");
  if (!(x.x_d > 0.0) || !std::isfinite(x.x_d)) throw DomainError(std::string(what) + ": point must lie in H (x_d > 0)");
}

void check_constant(double c) {
  if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("comparability constant must be >= 1");
}

KernelBounds widen(double center, double c) {
  KernelBounds b;
  b.center = center;
  b.lower = center / c;
  b.upper = center * c;
  b.comparability_constant = c;
  return b;
}

}  // namespace

double distance(const HPoint& x, const HPoint& y) {
  if (x.x_tilde.size() != y.x_tilde.size()) throw PreconditionError("distance: dimension mismatch");
  double s = (x.x_d - y.x_d) * (x.x_d - y.x_d);
  for (std::size_t i = 0; i < x.x_tilde.size(); ++i) s += (x.x_tilde[i] - y.x_tilde[i]) * (x.x_tilde[i] - y.x_tilde[i]);
  return std::sqrt(s);
}

double distance(const HPoint& x, const BoundaryPoint& z) {
  if (x.x_tilde.size() != z.z_tilde.size()) throw PreconditionError("distance: dimension mismatch");
  double s = x.x_d * x.x_d;
  for (std::size_t i = 0; i < x.x_tilde.size(); ++i) s += (x.x_tilde[i] - z.z_tilde[i]) * (x.x_tilde[i] - z.z_tilde[i]);
  return std::sqrt(s);
}

double norm(const BoundaryPoint& z) {
  double s = 0.0;
  for (double v : z.z_tilde) s += v * v;
  return std::sqrt(s);
}

double norm(const HPoint& x) {
  double s = x.x_d * x.x_d;
  for (double v : x.x_tilde) s += v * v;
  return std::sqrt(s);
}

KernelBounds green_halfspace_bounds(const ExponentSpec& spec, const HPoint& x, const HPoint& y, double c,
                                    const QuadratureConfig& q) {
  const int d = spec.dimension();
  check_point(x, d, "green_halfspace_bounds");
  check_point(y, d, "green_halfspace_bounds");
  check_constant(c);
  const double r = distance(x, y);
  if (!(r > 0.0)) throw DomainError("green_halfspace_bounds: x and y must differ");
  const double vr = renewal_surrogate(spec, r);
  const double fx = std::min(1.0, renewal_surrogate(spec, x.x_d) / vr);
  const double fy = std::min(1.0, renewal_surrogate(spec, y.x_d) / vr);
  // Multiply the smaller factor first so swapping x and y is bit-identical.
  const double center = std::min(fx, fy) * std::max(fx, fy) * green_radial(spec, r, q).value;
  KernelBounds b = widen(center, c);
  b.range_warning = !(r < kWindow) || !(std::min(x.x_d, y.x_d) < kWindow);
  return b;
}

KernelBounds martin_kernel_bounds(const ExponentSpec& spec, const HPoint& x, const BoundaryPoint& z, double c) {
  const int d = spec.dimension();
  check_point(x, d, "martin_kernel_bounds");
  if (static_cast<int>(z.z_tilde.size()) != d - 1) throw PreconditionError("martin_kernel_bounds: dimension mismatch");
  check_constant(c);
  const double r = distance(x, z);
  const double zn = norm(z);
  const double center = renewal_surrogate(spec, x.x_d) * std::pow(r, -d) * std::pow(1.0 + zn * zn, 0.5 * d);
  if (!std::isfinite(center)) throw DomainError("martin_kernel_bounds: x too close to z");
  KernelBounds b = widen(center, c);
  b.range_warning = !(zn < kWindow) || !(r < 0.5 * kWindow);
  return b;
}

double stable_martin_kernel(double alpha, const HPoint& x, const BoundaryPoint& z) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("stable_martin_kernel: alpha out of range (0,2]");
  if (x.x_tilde.size() != z.z_tilde.size()) throw PreconditionError("stable_martin_kernel: dimension mismatch");
  if (!(x.x_d > 0.0)) throw DomainError("stable_martin_kernel: x must lie in H (x_d > 0)");
  const int d = x.dimension();
  const double zn = norm(z);
  return std::pow(x.x_d, 0.5 * alpha) * std::pow(distance(x, z), -d) * std::pow(1.0 + zn * zn, 0.5 * d);
}

double stable_martin_kernel_infinity(double alpha, const HPoint& x) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("stable_martin_kernel: alpha out of range (0,2]");
  if (!(x.x_d > 0.0)) throw DomainError("stable_martin_kernel: x must lie in H (x_d > 0)");
  return std::pow(x.x_d, 0.5 * alpha);
}

BhpReport bhp_ratio_check(const ExponentSpec& spec, std::span<const std::pair<HPoint, double>> samples, double c) {
  BhpReport rep;
  rep.bound = c;
  rep.n_samples = samples.size();
  if (samples.empty()) return rep;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& [x, h] : samples) {
    check_point(x, spec.dimension(), "bhp_ratio_check");
    const double v = h / renewal_surrogate(spec, x.x_d);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // The maximum over ordered pairs of a_i / a_j is max / min.
  rep.max_ratio = hi / lo;
  rep.passed = rep.max_ratio <= c;
  return rep;
}

}  // namespace hst
