// SPDX-License-Identifier: Apache-2.0
#pragma once

// Globally adaptive Gauss-Kronrod (10/21) integration on finite intervals.
// The error estimate follows the QUADPACK qk21 heuristic, which is
// pessimistic for smooth integrands.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hst {

struct QuadratureConfig {
  double abs_tol = 1e-300;
  double rel_tol = 1e-10;
  int max_refinements = 4000;
  /// Scales the truncation range of semi-infinite integrals (in log-units).
  double tail_cutoff_multiplier = 1.0;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int intervals = 0;
};

namespace detail {

inline constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452358, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  double fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double s = fv1[j] + fv2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

}  // namespace detail

/// Integrates f over [a, b] until the summed error estimate is below
/// max(abs_tol, rel_tol * |value|) or max_intervals panels are in use.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_intervals) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk21(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  int n = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && n < max_intervals) {
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    const detail::Panel left = detail::gk21(f, worst.a, mid);
    const detail::Panel right = detail::gk21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n;
  }
  // Re-sum to shed the drift of incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.intervals = n;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return out;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureConfig& q) {
  return integrate(std::forward<F>(f), a, b, q.abs_tol, q.rel_tol, q.max_refinements);
}

/// Integrates g over the real line, split at s0. g must decay like
/// exp(rate_lo (s - s0)) as s -> -inf and exp(-rate_hi (s - s0)) as s -> +inf;
/// the parts beyond [s0 - span_lo, s0 + span_hi] are added analytically from
/// those rates (a zero rate means the tail is dropped).
template <class F>
QuadResult integrate_with_exponential_tails(F&& g, double s0, double span_lo, double rate_lo, double span_hi,
                                            double rate_hi, double rel_tol, int max_intervals = 4000) {
  const double lo = s0 - span_lo;
  const double hi = s0 + span_hi;
  const QuadResult left = integrate(g, lo, s0, 0.0, rel_tol, max_intervals);
  const QuadResult right = integrate(g, s0, hi, 0.0, rel_tol, max_intervals);
  const double tail_lo = rate_lo > 0 ? g(lo) / rate_lo : 0.0;
  const double tail_hi = rate_hi > 0 ? g(hi) / rate_hi : 0.0;
  QuadResult out;
  out.value = left.value + right.value + tail_lo + tail_hi;
  out.error = left.error + right.error + 0.1 * (std::abs(tail_lo) + std::abs(tail_hi));
  out.converged = left.converged && right.converged;
  out.intervals = left.intervals + right.intervals;
  return out;
}

}  // namespace hst
