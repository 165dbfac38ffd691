// SPDX-License-Identifier: Apache-2.0
#pragma once

// Geometry of the half-space H = {x_d > 0} and two-sided kernel bounds for the
// killed process. The comparability constants are parameters: only their
// existence is known.

#include <span>
#include <utility>
#include <vector>

#include "hst/bernstein.hpp"
#include "hst/quadrature.hpp"

namespace hst {

/// A point (x_tilde, x_d) of H; x_tilde has d-1 entries.
struct HPoint {
  std::vector<double> x_tilde;
  double x_d = 0.0;

  int dimension() const noexcept { return static_cast<int>(x_tilde.size()) + 1; }
  /// Distance to the boundary.
  double delta() const noexcept { return x_d; }
};

/// The boundary point (z_tilde, 0).
struct BoundaryPoint {
  std::vector<double> z_tilde;
};

struct KernelBounds {
  double center = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double comparability_constant = 1.0;
  /// Set when the arguments lie outside the window where the estimate is
  /// known to hold (R = 1); the numbers are still returned.
  bool range_warning = false;
};

double distance(const HPoint& x, const HPoint& y);
double distance(const HPoint& x, const BoundaryPoint& z);
double norm(const BoundaryPoint& z);
/// |x| for x in H.
double norm(const HPoint& x);

/// Center (1 ^ V(x_d)/V(|x-y|)) (1 ^ V(y_d)/V(|x-y|)) G(|x-y|) with bounds center/c, center*c.
KernelBounds green_halfspace_bounds(const ExponentSpec& spec, const HPoint& x, const HPoint& y, double c,
                                    const QuadratureConfig& q = {});

/// Center V(x_d) |x-z|^{-d} (1+|z|^2)^{d/2} with bounds center/c, center*c.
KernelBounds martin_kernel_bounds(const ExponentSpec& spec, const HPoint& x, const BoundaryPoint& z, double c);

/// Martin kernel of the killed isotropic alpha-stable process normalised at
/// x0 = (0, 1); alpha = 2 gives the killed Brownian motion.
double stable_martin_kernel(double alpha, const HPoint& x, const BoundaryPoint& z);
/// The kernel at the point at infinity, x_d^{alpha/2}.
double stable_martin_kernel_infinity(double alpha, const HPoint& x);

struct BhpReport {
  double max_ratio = 1.0;  // max over pairs of [h(x)/V(x_d)] / [h(y)/V(y_d)]
  double bound = 0.0;
  bool passed = true;
  std::size_t n_samples = 0;
};

/// Boundary Harnack ratio over samples (x_i, h(x_i)).
BhpReport bhp_ratio_check(const ExponentSpec& spec, std::span<const std::pair<HPoint, double>> samples, double c);

}  // namespace hst
