// SPDX-License-Identifier: Apache-2.0
#pragma once

// Candidate sets A in H near the boundary point 0 and the integral criteria
// for (minimal) thinness, evaluated shell by shell on dyadic annuli with a
// certified verdict.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hst/bernstein.hpp"
#include "hst/halfspace.hpp"

namespace hst {

/// f(r) = c r^beta
struct PowerLaw {
  double c;
  double beta;
};
/// f(r) = c r^beta log(e/r)^{-p} for r < 1, f(r) = c for r >= 1
struct PowerLog {
  double c;
  double beta;
  double p;
};
/// Log-log interpolation of positive samples; power-law extrapolation below
/// the first point, constant above the last.
struct TabulatedRadial {
  std::vector<double> r;
  std::vector<double> values;
  double lipschitz;
};

using ProfileKind = std::variant<PowerLaw, PowerLog, TabulatedRadial>;

class ProfileSpec {
public:
  /// Throws DomainError on invalid parameters.
  explicit ProfileSpec(ProfileKind kind);

  const ProfileKind& kind() const noexcept { return kind_; }
  double operator()(double r) const;
  /// Largest difference quotient |f(r)-f(s)|/|r-s| observed on a fine grid of (0, 1].
  double observed_lipschitz() const;
  std::string name() const;

private:
  ProfileKind kind_;
  double tab_slope_ = 0.0;  // log-log slope used below the first sample
};

/// A = {0 < x_d <= f(|x_tilde|)}
struct LipschitzGraph {
  ProfileSpec profile;
  double lipschitz_a;
};
/// A = {|x_tilde| < f(x_d)}
struct Thorn {
  ProfileSpec profile;
};
/// Axis-aligned box [lo, hi] in R^d (last coordinate is x_d >= 0).
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};
struct BoxUnion {
  std::vector<Box> boxes;
};

using SetKind = std::variant<LipschitzGraph, Thorn, BoxUnion>;

class SetSpec {
public:
  /// Validates the set invariants (Lipschitz domination, thorn monotonicity,
  /// box shapes); throws DomainError.
  SetSpec(SetKind kind, int dimension);

  const SetKind& kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  bool contains(const HPoint& x) const;
  /// Pairwise disjoint boxes covering the same union (BoxUnion only).
  const std::vector<Box>& disjoint_boxes() const noexcept { return disjoint_; }
  std::string name() const;

private:
  SetKind kind_;
  int dimension_;
  std::vector<Box> disjoint_;
};

enum class IntegralStatus { Converges, Diverges, Inconclusive };
const char* to_string(IntegralStatus s);

struct IntegralVerdict {
  IntegralStatus status = IntegralStatus::Inconclusive;
  double value = 0.0;        // partial sum plus remainder estimate when Converges
  double error_bound = 0.0;  // bounds the remainder estimate and quadrature error
  std::vector<std::pair<int, double>> shell_evidence;  // (j, s_j) for every evaluated shell
  int shells_used = 0;
  /// Which rule decided: geometric, algebraic, finite, ratio, unbounded or none.
  std::string certificate = "none";
  /// Exponent q of the fitted model s_j ~ C (j + j0)^{-q}; infinity for
  /// faster than algebraic decay.
  double fitted_exponent = 0.0;
};

struct ShellOptions {
  int max_shells = 60;
  double rel_tol = 1e-10;
};

/// int_{A cap B(0,1)} |x|^{-d} dx over dyadic shells {2^{-j-1} < |x| <= 2^{-j}}.
IntegralVerdict beurling_dahlberg_integral(const SetSpec& set, const ShellOptions& opt = {});

/// sigma_{d-2} int_0^1 f(r) r^{-2} dr (sigma_0 = 2).
IntegralVerdict burdzy_integral(const ProfileSpec& profile, int d, const ShellOptions& opt = {});

/// d >= 4: int_0^1 (f(r)/r)^{d-3} dr/r; d = 3: int |log(f(r)/r)|^{-1} dr/r,
/// the latter on (0, 1/2] since the integrand is singular wherever f(r) = r.
IntegralVerdict thorn_criterion_brownian(const ProfileSpec& profile, int d, const ShellOptions& opt = {});

/// int_0^1 (f(r)/r)^{d-alpha-1} dr/r
IntegralVerdict thorn_criterion_stable(const ProfileSpec& profile, int d, double alpha, const ShellOptions& opt = {});

/// Certification of a shell sequence s_j, j = first_index, first_index + 1, ...;
/// `zero_tail` states that every later shell is exactly zero. Exposed for tests.
IntegralVerdict certify_shells(const std::vector<double>& shells, const std::vector<double>& errors, int first_index,
                               bool zero_tail = false);

enum class SetStatus { MinimallyThin, NotMinimallyThin, Thin, NotThin, Unknown };
const char* to_string(SetStatus s);

struct CriterionRow {
  std::string criterion;
  IntegralVerdict verdict;
};

struct ThinnessRecord {
  SetStatus status = SetStatus::Unknown;
  /// The verdict is the same for every process satisfying the hypotheses.
  bool process_independent = false;
  /// True for thorn reports, which concern ordinary (not minimal) thinness.
  bool ordinary_thinness = false;
  std::string label;
  std::vector<CriterionRow> criteria;
  /// No verdict could be given (status Unknown).
  bool inconclusive = false;
};

ThinnessRecord minimal_thinness_verdict(const SetSpec& set, const ExponentSpec& spec, const ShellOptions& opt = {});

}  // namespace hst
