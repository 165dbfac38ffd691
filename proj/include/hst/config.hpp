// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON run configuration. Nested objects are addressed by dotted keys
// (`process.alpha`); arrays are leaf values. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hst/bernstein.hpp"
#include "hst/montecarlo.hpp"
#include "hst/quadrature.hpp"
#include "hst/thinness.hpp"

namespace hst {

class Config {
public:
  /// Throws ConfigError on malformed JSON or unknown keys.
  static Config from_string(const std::string& json_text);
  /// Throws ConfigError if the file cannot be read or parsed.
  static Config from_file(const std::filesystem::path& path);

  /// Applies `key=value`; the value is read as JSON when it parses, as a
  /// plain string otherwise.
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& json_or_text);

  bool has(const std::string& key) const;
  /// Canonical dump of the flattened key/value pairs, one `key=value` per line.
  std::string dump() const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

private:
  std::map<std::string, std::string> entries_;  // key -> JSON text of the value
};

/// All keys the configuration may contain.
const std::vector<std::string>& known_config_keys();

struct KernelSweepOptions {
  double r_min = 1e-3;
  double r_max = 1.0;
  int points_per_decade = 40;
  double spread_bound = 20.0;
  QuadratureConfig quadrature;
};

struct SimulationOptions {
  McConfig mc;  // start is set per height
  std::vector<double> heights{0.4, 0.2, 0.1};
};

/// Typed view of a Config. Every accessor validates on use and reports the
/// offending key in its ConfigError / DomainError message.
class RunConfig {
public:
  explicit RunConfig(Config cfg);

  int dimension() const;
  bool has_process() const;
  ExponentSpec process() const;
  /// The configured process, or the default catalog when none is given.
  std::vector<ExponentSpec> processes() const;
  bool has_set() const;
  SetSpec set() const;
  KernelSweepOptions kernel_options() const;
  ShellOptions shell_options() const;
  SimulationOptions simulation_options() const;
  /// `threads` key, defaulting to the hardware concurrency.
  int threads() const;

  const Config& raw() const noexcept { return cfg_; }

private:
  Config cfg_;
};

}  // namespace hst
