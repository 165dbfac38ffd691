// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hst::laplace {

using Transform = std::function<std::complex<double>(std::complex<double>)>;
using RealTransform = std::function<long double(long double)>;

/// Fixed-Talbot inversion (Abate-Valko contour) of a transform that is
/// analytic off the closed negative real axis and the origin.
double talbot(const Transform& transform, double t, int nodes);

/// Gaver-Stehfest coefficients V_k, k = 1..n (n even), in extended precision.
std::vector<long double> stehfest_coefficients(int n);

/// Gaver-Stehfest inversion from real samples of the transform, accumulated
/// in long double.
double stehfest(const RealTransform& transform, double t, int n);

}  // namespace hst::laplace
