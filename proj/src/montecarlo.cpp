// SPDX-License-Identifier: Apache-2.0
#include "hst/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "hst/csv.hpp"
#include "hst/errors.hpp"
#include "hst/kernels.hpp"
#include "hst/parallel.hpp"

namespace hst {

namespace {

constexpr int kRejectionCap = 64;
constexpr int kMaxHalvings = 30;
constexpr double kHuge = 1e300;

// Positive a-stable variable with E exp(-lambda S) = exp(-dt lambda^a),
// 0 < a < 1 (Kanter's representation).
double positive_stable(double a, double dt, StreamRng& rng) {
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  const double log_s = std::log(std::sin(a * u)) - std::log(std::sin(u)) / a +
                       (1.0 - a) / a * (std::log(std::sin((1.0 - a) * u)) - std::log(e)) + std::log(dt) / a;
  return std::min(std::exp(log_s), kHuge);
}

// Tempered stable by rejection: keep S with probability exp(-mass S).
double tempered_stable(double a, double mass, double dt, StreamRng& rng, SamplerDiagnostics* diag, int depth) {
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    const double s = positive_stable(a, dt, rng);
    if (rng.uniform() <= std::exp(-mass * s)) return s;
    if (diag) ++diag->rejections;
  }
  if (depth >= kMaxHalvings) throw SimulationError("relativistic sampler: rejection cap exceeded at every step size");
  if (diag) ++diag->halvings;
  return tempered_stable(a, mass, 0.5 * dt, rng, diag, depth + 1) +
         tempered_stable(a, mass, 0.5 * dt, rng, diag, depth + 1);
}

double h_surrogate(const ExponentSpec& spec, const HPoint& x) {
  return renewal_surrogate(spec, x.x_d) * std::pow(norm(x), -spec.dimension());
}

enum class Outcome { Hit, Exit, Censored };

struct PathResult {
  Outcome outcome = Outcome::Censored;
  double weight = 0.0;  // h(X_{T_A}) / h(start) on a hit
};

// Advances one step of X; returns the step actually used.
double step(const ExponentSpec& spec, const McConfig& cfg, double base_dt, HPoint& x, double& sub, StreamRng& rng) {
  double dt = base_dt;
  if (cfg.refine_near_boundary) {
    const double inv_index = 1.0 / spec.alpha_index();
    for (int k = 0; k < kMaxHalvings && x.x_d < 10.0 * std::pow(dt, inv_index); ++k) dt *= 0.5;
  }
  const double ds = sample_subordinator_increment(spec, dt, rng);
  sub += ds;
  const double sd = std::sqrt(2.0 * ds);
  for (double& c : x.x_tilde) c += sd * rng.normal();
  x.x_d += sd * rng.normal();
  return dt;
}

PathResult run_path(const ExponentSpec& spec, const SetSpec& set, const McConfig& cfg, std::uint64_t index,
                    double h_start) {
  StreamRng rng(cfg.seed, index);
  HPoint x = cfg.start;
  double t = 0.0;
  double sub = 0.0;
  if (set.contains(x)) return {Outcome::Hit, 1.0};
  while (t < cfg.max_time) {
    t += step(spec, cfg, cfg.dt, x, sub, rng);
    if (!(x.x_d > 0.0)) return {Outcome::Exit, 0.0};
    if (set.contains(x)) return {Outcome::Hit, h_surrogate(spec, x) / h_start};
  }
  return {Outcome::Censored, 0.0};
}

}  // namespace

void McConfig::validate(int dimension) const {
  if (n_paths < 1) throw DomainError("mc.n_paths must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("mc.dt must be positive");
  if (!(max_time > 0.0)) throw DomainError("mc.max_time must be positive");
  if (start.dimension() != dimension) throw PreconditionError("mc start point has the wrong dimension");
  if (!(start.x_d > 0.0)) throw DomainError("mc start point must lie in H");
}

double sample_subordinator_increment(const ExponentSpec& spec, double dt, StreamRng& rng, SamplerDiagnostics* diag) {
  if (!(dt > 0.0)) throw DomainError("sample_subordinator_increment: dt must be positive");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Stable>) {
          return positive_stable(0.5 * k.alpha, dt, rng);
        } else if constexpr (std::is_same_v<T, RelativisticStable>) {
          return tempered_stable(0.5 * k.alpha, std::pow(k.m, 2.0 / k.alpha), dt, rng, diag, 0);
        } else if constexpr (std::is_same_v<T, StableMix>) {
          const double first = positive_stable(0.5 * k.alpha, dt, rng);
          return first + positive_stable(0.5 * k.beta, dt, rng);
        } else {
          return k.a * dt + k.b * k.b * positive_stable(0.5 * k.beta, dt, rng);
        }
      },
      spec.kind());
}

PathSkeleton simulate_killed_path(const ExponentSpec& spec, const McConfig& cfg, StreamRng& rng) {
  cfg.validate(spec.dimension());
  PathSkeleton p;
  HPoint x = cfg.start;
  double t = 0.0;
  double sub = 0.0;
  p.times.push_back(t);
  p.positions.push_back(x);
  p.subordinator_values.push_back(sub);
  while (t < cfg.max_time) {
    t += step(spec, cfg, cfg.dt, x, sub, rng);
    p.times.push_back(t);
    p.subordinator_values.push_back(sub);
    if (!(x.x_d > 0.0)) {
      p.exit_index = p.times.size() - 1;
      return p;
    }
    p.positions.push_back(x);
  }
  p.censored = true;
  return p;
}

HittingReport estimate_hitting_functional(const ExponentSpec& spec, const SetSpec& set, const McConfig& cfg) {
  if (set.dimension() != spec.dimension()) throw PreconditionError("set and process dimensions differ");
  cfg.validate(spec.dimension());
  const double h_start = h_surrogate(spec, cfg.start);
  const auto n = static_cast<std::size_t>(cfg.n_paths);
  std::vector<PathResult> results(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) { results[i] = run_path(spec, set, cfg, i, h_start); });

  HittingReport rep;
  rep.height = cfg.start.x_d;
  rep.seed = cfg.seed;
  rep.start_in_set = set.contains(cfg.start);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& r : results) {
    switch (r.outcome) {
      case Outcome::Hit: ++rep.n_hit; break;
      case Outcome::Exit: ++rep.n_exited_without_hit; break;
      case Outcome::Censored: ++rep.n_censored; break;
    }
    sum += r.weight;
    sum_sq += r.weight * r.weight;
  }
  if (rep.n_censored == cfg.n_paths) throw SimulationError("every path was censored at mc.max_time");
  const double nn = static_cast<double>(n);
  rep.estimate = sum / nn;
  const double var = n > 1 ? std::max(0.0, (sum_sq - nn * rep.estimate * rep.estimate) / (nn - 1.0)) : 0.0;
  rep.std_error = std::sqrt(var / nn);
  rep.censored_flag = static_cast<double>(rep.n_censored) > 0.05 * nn;
  rep.range_violation = rep.estimate > 1.5;
  return rep;
}

double descending_trend(std::span<const double> heights, std::span<const double> values) {
  if (heights.size() != values.size()) throw PreconditionError("descending_trend: size mismatch");
  double score = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    for (std::size_t j = i + 1; j < heights.size(); ++j) {
      if (heights[i] == heights[j]) continue;
      // Orient each pair so that `lower` has the smaller height.
      const bool i_lower = heights[i] < heights[j];
      const double lower = i_lower ? values[i] : values[j];
      const double upper = i_lower ? values[j] : values[i];
      score += lower > upper ? 1.0 : (lower < upper ? -1.0 : 0.0);
      ++pairs;
    }
  }
  return pairs > 0 ? score / pairs : 0.0;
}

DichotomyReport dichotomy_experiment(const ExponentSpec& spec, const SetSpec& thin_set, const SetSpec& nonthin_set,
                                     std::span<const double> heights, const McConfig& cfg) {
  if (heights.empty()) throw PreconditionError("dichotomy_experiment: heights must not be empty");
  DichotomyReport rep;
  rep.heights.assign(heights.begin(), heights.end());
  std::vector<double> thin_est;
  std::vector<double> nonthin_est;
  for (double h : heights) {
    McConfig c = cfg;
    c.start = HPoint{std::vector<double>(spec.dimension() - 1, 0.0), h};
    rep.thin.push_back(estimate_hitting_functional(spec, thin_set, c));
    rep.nonthin.push_back(estimate_hitting_functional(spec, nonthin_set, c));
    thin_est.push_back(rep.thin.back().estimate);
    nonthin_est.push_back(rep.nonthin.back().estimate);
  }
  rep.thin_trend = descending_trend(heights, thin_est);
  rep.nonthin_trend = descending_trend(heights, nonthin_est);
  return rep;
}

void write_hitting_csv(std::ostream& os, std::span<const HittingReport> rows, bool with_flag) {
  if (with_flag) {
    csv::row(os, {"height", "estimate", "std_error", "n_hit", "n_exit", "n_censored", "seed", "censored_flag"});
  } else {
    csv::row(os, {"height", "estimate", "std_error", "n_hit", "n_exit", "n_censored", "seed"});
  }
  for (const auto& r : rows) {
    const std::string hit = std::to_string(r.n_hit);
    const std::string exit = std::to_string(r.n_exited_without_hit);
    const std::string cens = std::to_string(r.n_censored);
    const std::string seed = std::to_string(r.seed);
    if (with_flag) {
      csv::row(os, {csv::number(r.height), csv::number(r.estimate), csv::number(r.std_error), hit, exit, cens, seed,
                    r.censored_flag ? "true" : "false"});
    } else {
      csv::row(os, {csv::number(r.height), csv::number(r.estimate), csv::number(r.std_error), hit, exit, cens, seed});
    }
  }
}

}  // namespace hst
