// SPDX-License-Identifier: Apache-2.0
#pragma once

// Self-check suite: transform identities, exact scalings, closed-form cross
// checks, kernel-bound containment, boundary Harnack ratios and the
// structural properties of the thinness verdicts.

#include <string>
#include <vector>

#include "hst/bernstein.hpp"

namespace hst {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Multiplies the potential density inside the transform identity check.
  double u_scale = 1.0;
  int threads = 1;
};

std::vector<PropertyResult> run_property_suite(const std::vector<ExponentSpec>& catalog, const VerifyOptions& opt = {});

}  // namespace hst
