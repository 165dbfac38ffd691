// SPDX-License-Identifier: Apache-2.0
#pragma once

// Radial free-space kernels of the subordinate Brownian motion X_t = Y_{S_t}:
// Green function G(r), jump density j(r) and the renewal surrogate V(t), with
// sweeps that tabulate the two-sided asymptotics they are known to satisfy.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hst/bernstein.hpp"
#include "hst/quadrature.hpp"

namespace hst {

struct KernelValue {
  double value;
  double error;
};

/// G(r) = int_0^inf (4 pi t)^{-d/2} exp(-r^2/(4t)) u(t) dt.
/// Throws ConvergenceError (carrying the partial value) if the tolerance is
/// not met.
KernelValue green_radial(const ExponentSpec& spec, double r, const QuadratureConfig& q = {});

/// j(r) = int_0^inf (4 pi t)^{-d/2} exp(-r^2/(4t)) eta(t) dt.
KernelValue jump_density(const ExponentSpec& spec, double r, const QuadratureConfig& q = {});

/// V(t) := phi(t^{-2})^{-1/2}, used in place of the ladder-height renewal function.
double renewal_surrogate(const ExponentSpec& spec, double t);

/// int_{B(0,t)} G(0,x) dx, evaluated as int_0^inf u(s) P(d/2, t^2/(4s)) ds.
KernelValue green_ball_mass(const ExponentSpec& spec, double t, const QuadratureConfig& q = {});

/// Surface area of the unit sphere in R^n.
double unit_sphere_area(int n);

/// Closed forms for the Stable member (Riesz kernels); used by tests and the
/// verify suite as a second route next to quadrature.
double stable_green_closed_form(double alpha, int d, double r);
double stable_jump_closed_form(double alpha, int d, double r);

/// Log-spaced grid on [lo, hi] with `per_decade` points per decade (both ends included).
std::vector<double> log_grid(double lo, double hi, int per_decade);

struct RadialKernelTable {
  std::vector<double> r_grid;
  std::vector<double> g_values, g_errors;
  std::vector<double> j_values, j_errors;
  std::vector<double> v_values;
};

/// Evaluates G, j and V on a strictly increasing grid; `threads` > 1 splits
/// the grid across workers, results are identical for any thread count.
RadialKernelTable tabulate_kernels(const ExponentSpec& spec, std::span<const double> r_grid,
                                   const QuadratureConfig& q = {}, int threads = 1);

/// CSV with header `r,g,g_err,j,j_err,v`.
void write_kernel_table_csv(std::ostream& os, const RadialKernelTable& table);

struct RatioSweep {
  std::string name;
  std::vector<double> grid;
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max/min
  double spread_bound = 0.0;
  bool passed = false;
  /// False when the compared asymptotics do not hold for this member (the
  /// jump sweep for alpha = 2); such a sweep never fails.
  bool applicable = true;
  // Only meaningful for particular sweeps.
  std::vector<double> doubling_ratios;  // j(r)/j(2r) per grid point, jump sweep
  double doubling_constant = 0.0;       // max of doubling_ratios
  double brownian_refinement = 0.0;  // G(r) 4 a pi^{d/2} r^{d-2} / Gamma(d/2-1) at the smallest r
  bool brownian_refinement_checked = false;
  bool brownian_refinement_passed = true;
};

/// rho(r) = G(r) r^d phi(r^{-2}); for the alpha = 2 member additionally checks
/// the Newtonian refinement within 5% at the smallest grid point.
RatioSweep verify_green_asymptotics(const ExponentSpec& spec, std::span<const double> r_grid,
                                    const QuadratureConfig& q = {}, double spread_bound = 20.0, int threads = 1);

/// j(r) r^d / phi(r^{-2}) and the empirical doubling constant on the grid.
RatioSweep verify_j_asymptotics(const ExponentSpec& spec, std::span<const double> r_grid,
                                const QuadratureConfig& q = {}, double spread_bound = 20.0, int threads = 1);

/// m(t) / V(t)^2 with m(t) the Green mass of the ball B(0, t).
RatioSweep verify_green_mass_ratio(const ExponentSpec& spec, std::span<const double> t_grid,
                                   const QuadratureConfig& q = {}, double spread_bound = 20.0, int threads = 1);

/// G(r) r^d / V(r)^2, the pointwise comparison behind the mass ratio.
RatioSweep green_renewal_ratio(const ExponentSpec& spec, std::span<const double> r_grid,
                               const QuadratureConfig& q = {}, double spread_bound = 20.0, int threads = 1);

/// CSV with header `sweep,x,ratio,spread,spread_bound,passed`, one row per grid
/// point. The jump sweep adds `<name>_doubling` rows (ratio j(x)/j(2x), spread
/// column holding the doubling constant) and a checked Newtonian refinement
/// adds one `<name>_newtonian` row with spread_bound 0.05.
void write_ratio_sweeps_csv(std::ostream& os, std::span<const RatioSweep> sweeps);

}  // namespace hst
