// SPDX-License-Identifier: Apache-2.0
#include "hst/hst.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "hst/commands.hpp"
#include "hst/config.hpp"
#include "hst/errors.hpp"
#include "hst/kernels.hpp"
#include "hst/montecarlo.hpp"
#include "hst/thinness.hpp"

struct hst_process {
  hst::ExponentSpec spec;
};

struct hst_config {
  hst::Config cfg;
};

struct hst_report {
  int outcome;
  std::string summary;
};

namespace {

thread_local std::string last_error;

template <class F>
hst_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return HST_OK;
  } catch (const hst::DomainError& e) {
    last_error = e.what();
    return HST_ERR_DOMAIN;
  } catch (const hst::PreconditionError& e) {
    last_error = e.what();
    return HST_ERR_PRECONDITION;
  } catch (const hst::ConvergenceError& e) {
    last_error = e.what();
    return HST_ERR_CONVERGENCE;
  } catch (const hst::InversionError& e) {
    last_error = e.what();
    return HST_ERR_INVERSION;
  } catch (const hst::ConfigError& e) {
    last_error = e.what();
    return HST_ERR_CONFIG;
  } catch (const hst::IoError& e) {
    last_error = e.what();
    return HST_ERR_IO;
  } catch (const hst::SimulationError& e) {
    last_error = e.what();
    return HST_ERR_SIMULATION;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HST_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return HST_ERR_INTERNAL;
  }
}

hst_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return HST_ERR_NULL_ARGUMENT;
}

hst_status make_process(hst::ExponentKind kind, int d, hst_process** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new hst_process{hst::ExponentSpec(std::move(kind), d)}; });
}

template <class F>
hst_status eval(const hst_process* p, double* out, F&& f) {
  if (!p) return null_argument("process");
  if (!out) return null_argument("out");
  return guarded([&] { *out = f(p->spec); });
}

hst::ProfileSpec profile(double c, double beta, double p) {
  if (p == 0.0) return hst::ProfileSpec(hst::PowerLaw{c, beta});
  return hst::ProfileSpec(hst::PowerLog{c, beta, p});
}

hst::ShellOptions shells(int max_shells) {
  hst::ShellOptions o;
  if (max_shells > 0) o.max_shells = max_shells;
  return o;
}

void fill(const hst::IntegralVerdict& v, hst_integral* out) {
  switch (v.status) {
    case hst::IntegralStatus::Converges: out->status = HST_CONVERGES; break;
    case hst::IntegralStatus::Diverges: out->status = HST_DIVERGES; break;
    default: out->status = HST_INCONCLUSIVE; break;
  }
  out->value = v.value;
  out->error_bound = v.error_bound;
  out->shells_used = v.shells_used;
}

// Test hook: a positive HST_INJECT_U_SCALE multiplies u inside the verify suite.
double injected_u_scale() {
  const char* s = std::getenv("HST_INJECT_U_SCALE");
  if (!s || !*s) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  return (end && *end == '\0' && v > 0.0) ? v : 1.0;
}

}  // namespace

extern "C" {

const char* hst_version(void) { return "0.1.0"; }

const char* hst_last_error(void) { return last_error.c_str(); }

const char* hst_status_name(hst_status status) {
  switch (status) {
    case HST_OK: return "ok";
    case HST_ERR_DOMAIN: return "domain error";
    case HST_ERR_PRECONDITION: return "precondition violated";
    case HST_ERR_CONVERGENCE: return "convergence failure";
    case HST_ERR_INVERSION: return "inversion failure";
    case HST_ERR_CONFIG: return "configuration error";
    case HST_ERR_IO: return "i/o error";
    case HST_ERR_SIMULATION: return "simulation error";
    case HST_ERR_NULL_ARGUMENT: return "null argument";
    case HST_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

hst_status hst_process_stable(int d, double alpha, hst_process** out) {
  return make_process(hst::Stable{alpha}, d, out);
}
hst_status hst_process_relativistic(int d, double alpha, double m, hst_process** out) {
  return make_process(hst::RelativisticStable{alpha, m}, d, out);
}
hst_status hst_process_stable_mix(int d, double alpha, double beta, hst_process** out) {
  return make_process(hst::StableMix{alpha, beta}, d, out);
}
hst_status hst_process_brownian_plus_stable(int d, double a, double b, double beta, hst_process** out) {
  return make_process(hst::BrownianPlusStable{a, b, beta}, d, out);
}
void hst_process_free(hst_process* p) { delete p; }

hst_status hst_process_name(const hst_process* p, char* buffer, int size) {
  if (!p) return null_argument("process");
  if (!buffer || size <= 0) return null_argument("buffer");
  const std::string name = p->spec.name();
  const std::size_t n = std::min(name.size(), static_cast<std::size_t>(size - 1));
  std::memcpy(buffer, name.data(), n);
  buffer[n] = '\0';
  return HST_OK;
}

hst_status hst_phi(const hst_process* p, double lambda, double* out) {
  return eval(p, out, [&](const hst::ExponentSpec& s) {
    if (!(lambda >= 0.0)) throw hst::DomainError("phi: lambda must be >= 0");
    return hst::phi(s, lambda);
  });
}
hst_status hst_levy_density(const hst_process* p, double t, double* out) {
  return eval(p, out, [&](const hst::ExponentSpec& s) { return hst::levy_density(s, t); });
}
hst_status hst_potential_density(const hst_process* p, double t, double* out) {
  return eval(p, out, [&](const hst::ExponentSpec& s) { return hst::potential_density(s, t); });
}
hst_status hst_green(const hst_process* p, double r, double* out) {
  return eval(p, out, [&](const hst::ExponentSpec& s) { return hst::green_radial(s, r).value; });
}
hst_status hst_jump(const hst_process* p, double r, double* out) {
  return eval(p, out, [&](const hst::ExponentSpec& s) { return hst::jump_density(s, r).value; });
}
hst_status hst_renewal(const hst_process* p, double t, double* out) {
  return eval(p, out, [&](const hst::ExponentSpec& s) { return hst::renewal_surrogate(s, t); });
}

hst_status hst_burdzy(int d, double c, double beta, double p, int max_shells, hst_integral* out) {
  if (!out) return null_argument("out");
  return guarded([&] { fill(hst::burdzy_integral(profile(c, beta, p), d, shells(max_shells)), out); });
}
hst_status hst_thorn_brownian(int d, double c, double beta, double p, int max_shells, hst_integral* out) {
  if (!out) return null_argument("out");
  return guarded([&] { fill(hst::thorn_criterion_brownian(profile(c, beta, p), d, shells(max_shells)), out); });
}
hst_status hst_thorn_stable(int d, double alpha, double c, double beta, double p, int max_shells, hst_integral* out) {
  if (!out) return null_argument("out");
  return guarded([&] { fill(hst::thorn_criterion_stable(profile(c, beta, p), d, alpha, shells(max_shells)), out); });
}

hst_status hst_hitting_estimate(const hst_process* p, double c, double beta, double height, unsigned long long seed,
                                long long n_paths, int threads, double* estimate, double* std_error) {
  if (!p) return null_argument("process");
  if (!estimate || !std_error) return null_argument("out");
  return guarded([&] {
    const int d = p->spec.dimension();
    const hst::ProfileSpec f(hst::PowerLaw{c, beta});
    const hst::SetSpec set(hst::LipschitzGraph{f, f.observed_lipschitz()}, d);
    hst::McConfig mc;
    mc.seed = seed;
    mc.n_paths = n_paths;
    mc.threads = threads < 1 ? 1 : threads;
    mc.start = hst::HPoint{std::vector<double>(d - 1, 0.0), height};
    const auto rep = hst::estimate_hitting_functional(p->spec, set, mc);
    *estimate = rep.estimate;
    *std_error = rep.std_error;
  });
}

hst_status hst_config_from_file(const char* path, hst_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new hst_config{hst::Config::from_file(path)}; });
}
hst_status hst_config_from_string(const char* json, hst_config** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new hst_config{hst::Config::from_string(json)}; });
}
hst_status hst_config_override(hst_config* cfg, const char* assignment) {
  if (!cfg) return null_argument("config");
  if (!assignment) return null_argument("assignment");
  return guarded([&] { cfg->cfg.apply_override(assignment); });
}
void hst_config_free(hst_config* cfg) { delete cfg; }

hst_status hst_run(hst_verb verb, const hst_config* cfg, const char* out_dir, int force, hst_report** out) {
  if (!cfg) return null_argument("config");
  if (!out_dir) return null_argument("out_dir");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const hst::RunConfig rc(cfg->cfg);
    const bool f = force != 0;
    hst::CommandResult res;
    switch (verb) {
      case HST_VERB_KERNELS: res = hst::run_kernels(rc, out_dir, f); break;
      case HST_VERB_THINNESS: res = hst::run_thinness(rc, out_dir, f); break;
      case HST_VERB_SIMULATE: res = hst::run_simulate(rc, out_dir, f); break;
      case HST_VERB_VERIFY: res = hst::run_verify(rc, out_dir, f, injected_u_scale()); break;
      default: throw hst::PreconditionError("unknown verb");
    }
    *out = new hst_report{static_cast<int>(res.outcome), std::move(res.summary)};
  });
}

int hst_report_outcome(const hst_report* r) { return r ? r->outcome : -1; }
const char* hst_report_summary(const hst_report* r) { return r ? r->summary.c_str() : ""; }
void hst_report_free(hst_report* r) { delete r; }

}  // extern "C"
