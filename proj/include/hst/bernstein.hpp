// SPDX-License-Identifier: Apache-2.0
#pragma once

// Catalog of complete Bernstein Laplace exponents phi of subordinators whose
// subordinate Brownian motions are transient, rotationally invariant and have
// phi(lambda) comparable to lambda^{alpha/2} l(lambda) at infinity.

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hst {

/// phi(lambda) = lambda^{alpha/2}
struct Stable {
  double alpha;
};
/// phi(lambda) = (lambda + m^{2/alpha})^{alpha/2} - m
struct RelativisticStable {
  double alpha;
  double m;
};
/// phi(lambda) = lambda^{alpha/2} + lambda^{beta/2}, 0 < beta < alpha < 2
struct StableMix {
  double alpha;
  double beta;
};
/// phi(lambda) = a lambda + b^beta lambda^{beta/2}
struct BrownianPlusStable {
  double a;
  double b;
  double beta;
};

using ExponentKind = std::variant<Stable, RelativisticStable, StableMix, BrownianPlusStable>;

/// A validated catalog entry together with the ambient dimension d.
class ExponentSpec {
public:
  /// Throws DomainError if the parameters fall outside the admissible class
  /// (including d >= 3 for the alpha = 2 member and for the relativistic one).
  ExponentSpec(ExponentKind kind, int dimension);

  const ExponentKind& kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  /// The alpha of phi(lambda) ~ lambda^{alpha/2} l(lambda) at infinity.
  double alpha_index() const noexcept { return alpha_index_; }
  /// Drift a >= 0 of the Levy-Khintchine representation.
  double drift() const noexcept { return drift_; }
  /// Exponent g with phi(lambda) ~ c lambda^g as lambda -> 0.
  double small_lambda_index() const noexcept { return small_index_; }
  std::string name() const;

private:
  ExponentKind kind_;
  int dimension_;
  double alpha_index_;
  double drift_;
  double small_index_;
};

/// The four catalog members used throughout the tests and the verify suite.
std::vector<ExponentSpec> default_catalog(int dimension = 3);

double phi(const ExponentSpec& spec, double lambda);
/// Principal-branch continuation of phi to the cut plane C \ (-inf, 0].
std::complex<double> phi(const ExponentSpec& spec, std::complex<double> s);

/// Density eta(t) of the Levy measure of the subordinator.
double levy_density(const ExponentSpec& spec, double t);

struct InversionOptions {
  int talbot_nodes = 32;
  int check_nodes = 24;
  /// Relative disagreement tolerated between the two Talbot runs.
  double tolerance = 1e-8;
  int stehfest_terms = 14;
  /// Relative disagreement tolerated between Stehfest and Talbot on fallback.
  double fallback_tolerance = 1e-5;
};

/// Potential density u(t), characterised by int_0^inf e^{-lambda t} u(t) dt
/// = 1/phi(lambda). Closed form for Stable, numerical inversion otherwise.
/// Throws InversionError carrying the achieved residual on failure.
double potential_density(const ExponentSpec& spec, double t, const InversionOptions& opt = {});

struct LevyKhintchineRow {
  double lambda;
  double reconstructed;
  double phi;
  double rel_deviation;
  bool converged;
};

struct LevyKhintchineReport {
  std::vector<LevyKhintchineRow> rows;
  double max_rel_deviation = 0.0;
  bool passed = false;
};

/// Rebuilds phi from a*lambda + int (1 - e^{-lambda t}) eta(t) dt and reports
/// the worst relative deviation on the grid.
LevyKhintchineReport verify_levy_khintchine(const ExponentSpec& spec, std::span<const double> lambda_grid,
                                            double tol);

struct TransformRow {
  double lambda;
  double transform;  // int e^{-lambda t} u(t) dt
  double residual;   // |phi(lambda) * transform - 1|
  bool converged;
};

/// Laplace transform of the potential density by quadrature; `u_scale`
/// multiplies u before integration (fault injection for the verify suite).
TransformRow potential_transform(const ExponentSpec& spec, double lambda, double u_scale = 1.0);

}  // namespace hst
