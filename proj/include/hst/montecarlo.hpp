// SPDX-License-Identifier: Apache-2.0
#pragma once

// Skeleton simulation of X = Y_S killed on leaving H and the estimator of
// P_A h(x) / h(x) with h(x) = V(x_d) |x|^{-d}, the surrogate of the Martin
// kernel at the boundary point 0.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hst/bernstein.hpp"
#include "hst/halfspace.hpp"
#include "hst/rng.hpp"
#include "hst/thinness.hpp"

namespace hst {

struct McConfig {
  std::uint64_t seed = 42;
  std::int64_t n_paths = 10000;
  double dt = 1e-3;
  double max_time = 50.0;
  HPoint start;
  bool refine_near_boundary = true;
  /// Worker threads; the results do not depend on it.
  int threads = 1;

  void validate(int dimension) const;
};

struct SamplerDiagnostics {
  std::int64_t rejections = 0;
  std::int64_t halvings = 0;  // rejection cap hit, increment split in two
};

/// One increment of the subordinator over a time step dt.
double sample_subordinator_increment(const ExponentSpec& spec, double dt, StreamRng& rng,
                                     SamplerDiagnostics* diag = nullptr);

struct PathSkeleton {
  std::vector<double> times;
  std::vector<HPoint> positions;  // positions[k] at times[k] while in H
  std::vector<double> subordinator_values;
  /// Index into times at which the path first left H, if it did.
  std::optional<std::size_t> exit_index;
  bool censored = false;
};

/// Full skeleton of one killed path, up to exit or max_time.
PathSkeleton simulate_killed_path(const ExponentSpec& spec, const McConfig& cfg, StreamRng& rng);

struct HittingReport {
  double height = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t n_hit = 0;
  std::int64_t n_exited_without_hit = 0;
  std::int64_t n_censored = 0;
  std::uint64_t seed = 0;
  /// More than 5% of the paths reached max_time.
  bool censored_flag = false;
  /// Estimate above 1.5: the surrogate or the discretisation is at fault.
  bool range_violation = false;
  /// The start point already lies in A.
  bool start_in_set = false;
};

/// Mean over all paths of h(X_{T_A}) 1{T_A < tau_H} / h(start); censored
/// paths contribute zero. Path i uses stream i of cfg.seed. Throws
/// SimulationError when every path is censored.
HittingReport estimate_hitting_functional(const ExponentSpec& spec, const SetSpec& set, const McConfig& cfg);

struct DichotomyReport {
  std::vector<double> heights;
  std::vector<HittingReport> thin;
  std::vector<HittingReport> nonthin;
  /// Kendall-type statistic in [-1, 1]; +1 when the estimates never decrease
  /// as the height decreases.
  double thin_trend = 0.0;
  double nonthin_trend = 0.0;
};

/// Both arms use the same seed, so identical sets give identical sequences.
DichotomyReport dichotomy_experiment(const ExponentSpec& spec, const SetSpec& thin_set, const SetSpec& nonthin_set,
                                     std::span<const double> heights, const McConfig& cfg);

/// Trend of `values` as the matching `heights` decrease.
double descending_trend(std::span<const double> heights, std::span<const double> values);

/// CSV with header `height,estimate,std_error,n_hit,n_exit,n_censored,seed`
/// plus a trailing `censored_flag` column when `with_flag` is set.
void write_hitting_csv(std::ostream& os, std::span<const HittingReport> rows, bool with_flag);

}  // namespace hst
