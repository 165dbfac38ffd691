// SPDX-License-Identifier: Apache-2.0
#include "hst/laplace.hpp"

#include <cmath>
#include <numbers>

#include "hst/errors.hpp"

namespace hst::laplace {

double talbot(const Transform& transform, double t, int nodes) {
  if (!(t > 0.0)) throw DomainError("talbot: t must be positive");
  if (nodes < 2) throw PreconditionError("talbot: need at least 2 nodes");
  const double pi = std::numbers::pi;
  const double r = 2.0 * nodes / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * transform({r, 0.0}).real();
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * pi / nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    const std::complex<double> term = std::exp(t * s) * transform(s) * std::complex<double>(1.0, sigma);
    sum += term.real();
  }
  return r / nodes * sum;
}

std::vector<long double> stehfest_coefficients(int n) {
  if (n < 2 || n % 2 != 0) throw PreconditionError("stehfest: n must be even and >= 2");
  const int half = n / 2;
  auto fact = [](int k) {
    long double f = 1.0L;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  std::vector<long double> v(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    long double acc = 0.0L;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      acc += std::pow(static_cast<long double>(j), half) * fact(2 * j) /
             (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    v[static_cast<std::size_t>(k - 1)] = ((k + half) % 2 == 0 ? 1.0L : -1.0L) * acc;
  }
  return v;
}

double stehfest(const RealTransform& transform, double t, int n) {
  if (!(t > 0.0)) throw DomainError("stehfest: t must be positive");
  const auto v = stehfest_coefficients(n);
  const long double ln2_t = std::numbers::ln2_v<long double> / static_cast<long double>(t);
  long double acc = 0.0L;
  for (int k = 1; k <= n; ++k) acc += v[static_cast<std::size_t>(k - 1)] * transform(k * ln2_t);
  return static_cast<double>(ln2_t * acc);
}

}  // namespace hst::laplace
