// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace hst {

/// One independent random stream per (seed, stream index). Variates are built
/// from raw 64-bit draws with fixed formulas so results do not depend on the
/// standard library's distribution implementations.
class StreamRng {
public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  double exponential();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hst
