// SPDX-License-Identifier: Apache-2.0
#include "hst/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "hst/errors.hpp"

namespace hst {

using nlohmann::json;

namespace {

void flatten(const json& node, const std::string& prefix, std::map<std::string, std::string>& out) {
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (prefix.empty()) throw ConfigError("configuration must be a JSON object");
  out[prefix] = node.dump();
}

void check_key(const std::string& key) {
  const auto& keys = known_config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown configuration key: " + key);
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "dimension",           "threads",
      "process.kind",        "process.alpha",
      "process.beta",        "process.m",
      "process.a",           "process.b",
      "set.kind",            "set.lipschitz_a",
      "set.boxes",           "set.profile.kind",
      "set.profile.c",       "set.profile.beta",
      "set.profile.p",       "set.profile.r",
      "set.profile.values",  "set.profile.lipschitz",
      "thinness.max_shells", "thinness.rel_tol",
      "kernels.r_min",       "kernels.r_max",
      "kernels.points_per_decade", "kernels.spread_bound",
      "kernels.rel_tol",     "mc.seed",
      "mc.n_paths",          "mc.dt",
      "mc.max_time",         "mc.heights",
      "mc.refine_near_boundary", "mc.x_tilde"};
  return keys;
}

Config Config::from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  Config cfg;
  flatten(doc, "", cfg.entries_);
  for (const auto& [k, v] : cfg.entries_) check_key(k);
  return cfg;
}

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read configuration file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void Config::set(const std::string& key, const std::string& json_or_text) {
  check_key(key);
  json value = json::parse(json_or_text, nullptr, false);
  if (value.is_discarded()) value = json_or_text;
  entries_[key] = value.dump();
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::dump() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

namespace {

class Reader {
public:
  explicit Reader(const Config& c) : c_(c) {}

  bool has(const std::string& key) const { return c_.has(key); }

  json value(const std::string& key) const {
    const auto it = c_.entries().find(key);
    if (it == c_.entries().end()) throw ConfigError("missing configuration key: " + key);
    return json::parse(it->second);
  }

  double number(const std::string& key) const {
    const json v = value(key);
    if (!v.is_number()) throw ConfigError(key + ": expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const json v = value(key);
    if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json v = value(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(key + ": expected a non-negative integer");
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json v = value(key);
    if (!v.is_boolean()) throw ConfigError(key + ": expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key) const {
    const json v = value(key);
    if (!v.is_string()) throw ConfigError(key + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json v = value(key);
    if (!v.is_array()) throw ConfigError(key + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(key + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

private:
  const Config& c_;
};

ProfileSpec read_profile(const Reader& r) {
  const std::string kind = r.has("set.profile.kind") ? r.text("set.profile.kind") : "PowerLaw";
  if (kind == "PowerLaw") return ProfileSpec(PowerLaw{r.number("set.profile.c", 1.0), r.number("set.profile.beta", 1.0)});
  if (kind == "PowerLog")
    return ProfileSpec(PowerLog{r.number("set.profile.c", 1.0), r.number("set.profile.beta", 1.0), r.number("set.profile.p", 1.0)});
  if (kind == "TabulatedRadial")
    return ProfileSpec(TabulatedRadial{r.numbers("set.profile.r"), r.numbers("set.profile.values"),
                                       r.number("set.profile.lipschitz")});
  throw ConfigError("set.profile.kind: unknown profile kind '" + kind + "'");
}

Box read_box(const json& b, std::size_t index) {
  const std::string where = "set.boxes[" + std::to_string(index) + "]";
  if (!b.is_object() || !b.contains("lo") || !b.contains("hi"))
    throw ConfigError(where + ": expected an object with lo and hi arrays");
  Box box;
  for (const char* side : {"lo", "hi"}) {
    const json& a = b.at(side);
    if (!a.is_array()) throw ConfigError(where + "." + side + ": expected an array of numbers");
    auto& dst = std::string(side) == "lo" ? box.lo : box.hi;
    for (const auto& e : a) {
      if (!e.is_number()) throw ConfigError(where + "." + side + ": expected an array of numbers");
      dst.push_back(e.get<double>());
    }
  }
  for (const auto& [k, v] : b.items())
    if (k != "lo" && k != "hi") throw ConfigError("unknown configuration key: " + where + "." + k);
  return box;
}

}  // namespace

RunConfig::RunConfig(Config cfg) : cfg_(std::move(cfg)) {}

int RunConfig::dimension() const {
  const auto d = Reader(cfg_).integer("dimension", 3);
  if (d < 2 || d > 64) throw DomainError("dimension must be between 2 and 64");
  return static_cast<int>(d);
}

bool RunConfig::has_process() const { return cfg_.has("process.kind"); }

ExponentSpec RunConfig::process() const {
  const Reader r(cfg_);
  const std::string kind = r.text("process.kind");
  const int d = dimension();
  if (kind == "Stable") return ExponentSpec(Stable{r.number("process.alpha")}, d);
  if (kind == "RelativisticStable")
    return ExponentSpec(RelativisticStable{r.number("process.alpha"), r.number("process.m")}, d);
  if (kind == "StableMix") return ExponentSpec(StableMix{r.number("process.alpha"), r.number("process.beta")}, d);
  if (kind == "BrownianPlusStable")
    return ExponentSpec(BrownianPlusStable{r.number("process.a"), r.number("process.b"), r.number("process.beta")}, d);
  throw ConfigError("process.kind: unknown process kind '" + kind + "'");
}

std::vector<ExponentSpec> RunConfig::processes() const {
  if (has_process()) return {process()};
  return default_catalog(std::max(3, dimension()));
}

bool RunConfig::has_set() const { return cfg_.has("set.kind"); }

SetSpec RunConfig::set() const {
  const Reader r(cfg_);
  const std::string kind = r.text("set.kind");
  const int d = dimension();
  if (kind == "LipschitzGraph") {
    ProfileSpec f = read_profile(r);
    const double a = r.has("set.lipschitz_a") ? r.number("set.lipschitz_a") : f.observed_lipschitz();
    return SetSpec(LipschitzGraph{std::move(f), a}, d);
  }
  if (kind == "Thorn") return SetSpec(Thorn{read_profile(r)}, d);
  if (kind == "BoxUnion") {
    BoxUnion u;
    if (r.has("set.boxes")) {
      const json boxes = r.value("set.boxes");
      if (!boxes.is_array()) throw ConfigError("set.boxes: expected an array of boxes");
      for (std::size_t i = 0; i < boxes.size(); ++i) u.boxes.push_back(read_box(boxes[i], i));
    }
    return SetSpec(std::move(u), d);
  }
  throw ConfigError("set.kind: unknown set kind '" + kind + "'");
}

KernelSweepOptions RunConfig::kernel_options() const {
  const Reader r(cfg_);
  KernelSweepOptions o;
  o.r_min = r.number("kernels.r_min", o.r_min);
  o.r_max = r.number("kernels.r_max", o.r_max);
  o.points_per_decade = static_cast<int>(r.integer("kernels.points_per_decade", o.points_per_decade));
  o.spread_bound = r.number("kernels.spread_bound", o.spread_bound);
  o.quadrature.rel_tol = r.number("kernels.rel_tol", o.quadrature.rel_tol);
  if (!(o.r_min > 0.0) || !(o.r_max > o.r_min)) throw DomainError("kernels.r_min/kernels.r_max must satisfy 0 < r_min < r_max");
  if (o.points_per_decade < 1) throw DomainError("kernels.points_per_decade must be >= 1");
  if (!(o.spread_bound >= 1.0)) throw DomainError("kernels.spread_bound must be >= 1");
  o.quadrature.validate();
  return o;
}

ShellOptions RunConfig::shell_options() const {
  const Reader r(cfg_);
  ShellOptions o;
  o.max_shells = static_cast<int>(r.integer("thinness.max_shells", o.max_shells));
  o.rel_tol = r.number("thinness.rel_tol", o.rel_tol);
  if (o.max_shells < 1 || o.max_shells > 1000) throw DomainError("thinness.max_shells must be between 1 and 1000");
  if (!(o.rel_tol > 0.0)) throw DomainError("thinness.rel_tol must be positive");
  return o;
}

SimulationOptions RunConfig::simulation_options() const {
  const Reader r(cfg_);
  SimulationOptions o;
  o.mc.seed = r.unsigned_integer("mc.seed", o.mc.seed);
  o.mc.n_paths = r.integer("mc.n_paths", o.mc.n_paths);
  o.mc.dt = r.number("mc.dt", o.mc.dt);
  o.mc.max_time = r.number("mc.max_time", o.mc.max_time);
  o.mc.refine_near_boundary = r.boolean("mc.refine_near_boundary", o.mc.refine_near_boundary);
  o.mc.threads = threads();
  if (r.has("mc.heights")) o.heights = r.numbers("mc.heights");
  const int d = dimension();
  o.mc.start.x_tilde.assign(d - 1, 0.0);
  if (r.has("mc.x_tilde")) {
    o.mc.start.x_tilde = r.numbers("mc.x_tilde");
    if (static_cast<int>(o.mc.start.x_tilde.size()) != d - 1)
      throw ConfigError("mc.x_tilde: expected " + std::to_string(d - 1) + " coordinates");
  }
  if (o.mc.n_paths < 1) throw DomainError("mc.n_paths must be >= 1");
  if (!(o.mc.dt > 0.0)) throw DomainError("mc.dt must be positive");
  if (!(o.mc.max_time > 0.0)) throw DomainError("mc.max_time must be positive");
  if (o.heights.empty()) throw DomainError("mc.heights must not be empty");
  for (double h : o.heights)
    if (!(h > 0.0)) throw DomainError("mc.heights must be positive");
  o.mc.start.x_d = o.heights.front();
  return o;
}

int RunConfig::threads() const {
  const auto hw = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
  const auto t = Reader(cfg_).integer("threads", hw);
  if (t < 1 || t > 1024) throw DomainError("threads must be between 1 and 1024");
  return static_cast<int>(t);
}

}  // namespace hst
