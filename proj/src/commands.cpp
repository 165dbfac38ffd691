// SPDX-License-Identifier: Apache-2.0
#include "hst/commands.hpp"

#include <fstream>
#include <sstream>

#include "hst/csv.hpp"
#include "hst/errors.hpp"
#include "hst/kernels.hpp"
#include "hst/montecarlo.hpp"
#include "hst/thinness.hpp"
#include "hst/verify.hpp"

namespace hst {

namespace fs = std::filesystem;

namespace {

// Creates the directory and refuses to clobber existing outputs unless forced.
std::vector<fs::path> prepare_outputs(const fs::path& dir, std::initializer_list<const char*> names, bool force) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory: " + dir.string());
  std::vector<fs::path> paths;
  for (const char* n : names) {
    fs::path p = dir / n;
    if (fs::exists(p) && !force) throw IoError("refusing to overwrite " + p.string() + " (pass --force)");
    paths.push_back(std::move(p));
  }
  return paths;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string g(double v) { return csv::number(v); }

}  // namespace

CommandResult run_kernels(const RunConfig& cfg, const fs::path& out_dir, bool force) {
  const ExponentSpec spec = cfg.process();
  const KernelSweepOptions o = cfg.kernel_options();
  const int threads = cfg.threads();
  const auto paths = prepare_outputs(out_dir, {"kernels.csv", "ratios.csv"}, force);
  const auto grid = log_grid(o.r_min, o.r_max, o.points_per_decade);

  const auto table = tabulate_kernels(spec, grid, o.quadrature, threads);
  std::vector<RatioSweep> sweeps;
  sweeps.push_back(verify_green_asymptotics(spec, grid, o.quadrature, o.spread_bound, threads));
  sweeps.push_back(verify_j_asymptotics(spec, grid, o.quadrature, o.spread_bound, threads));
  sweeps.push_back(verify_green_mass_ratio(spec, grid, o.quadrature, o.spread_bound, threads));
  sweeps.push_back(green_renewal_ratio(spec, grid, o.quadrature, o.spread_bound, threads));

  std::ostringstream kernels_csv;
  write_kernel_table_csv(kernels_csv, table);
  std::ostringstream ratios_csv;
  write_ratio_sweeps_csv(ratios_csv, sweeps);
  write_file(paths[0], kernels_csv.str());
  write_file(paths[1], ratios_csv.str());

  CommandResult res;
  res.files = paths;
  std::ostringstream s;
  s << "process " << spec.name() << ", " << grid.size() << " grid points on [" << o.r_min << ", " << o.r_max << "]\n";
  for (const auto& sw : sweeps) {
    s << "  " << sw.name << ": spread " << sw.spread << " (bound " << sw.spread_bound << ") "
      << (!sw.applicable ? "not applicable" : (sw.passed ? "pass" : "FAIL")) << "\n";
    if (!sw.doubling_ratios.empty()) s << "    doubling constant " << sw.doubling_constant << "\n";
    if (sw.brownian_refinement_checked)
      s << "    Newtonian refinement at r=" << grid.front() << ": " << sw.brownian_refinement << " "
        << (sw.brownian_refinement_passed ? "pass" : "FAIL") << "\n";
    if (sw.applicable && !sw.passed) res.outcome = Outcome::CheckFailed;
  }
  res.summary = s.str();
  return res;
}

CommandResult run_thinness(const RunConfig& cfg, const fs::path& out_dir, bool force) {
  const SetSpec set = cfg.set();
  const ExponentSpec spec = cfg.process();
  const ShellOptions opt = cfg.shell_options();
  const auto rec = minimal_thinness_verdict(set, spec, opt);
  const auto paths = prepare_outputs(out_dir, {"verdict.csv"}, force);

  const char* independent = rec.process_independent ? "true" : "false";
  std::ostringstream out;
  csv::row(out, {"criterion", "status", "value", "error_bound", "shells_used", "process_independent"});
  std::ostringstream s;
  s << "set " << set.name() << ", process " << spec.name() << "\n";
  for (const auto& c : rec.criteria) {
    const auto& v = c.verdict;
    const bool converged = v.status == IntegralStatus::Converges;
    csv::row(out, {c.criterion, to_string(v.status), converged ? g(v.value) : "", converged ? g(v.error_bound) : "",
                   std::to_string(v.shells_used), independent});
    s << "  " << c.criterion << ": " << to_string(v.status);
    if (converged) s << " value " << g(v.value) << " +- " << v.error_bound;
    s << " (" << v.shells_used << " shells, " << v.certificate << ")\n";
  }
  csv::row(out, {"verdict", to_string(rec.status), "", "", "", independent});
  write_file(paths[0], out.str());
  s << "verdict: " << to_string(rec.status) << " [" << rec.label << "]";
  if (rec.process_independent) s << ", process independent";
  s << "\n";

  CommandResult res;
  res.files = paths;
  res.summary = s.str();
  res.outcome = rec.inconclusive ? Outcome::Inconclusive : Outcome::Pass;
  return res;
}

CommandResult run_simulate(const RunConfig& cfg, const fs::path& out_dir, bool force) {
  const ExponentSpec spec = cfg.process();
  const SetSpec set = cfg.set();
  const SimulationOptions o = cfg.simulation_options();
  const auto paths = prepare_outputs(out_dir, {"hitting.csv"}, force);

  std::vector<HittingReport> rows;
  for (double h : o.heights) {
    McConfig mc = o.mc;
    mc.start.x_d = h;
    rows.push_back(estimate_hitting_functional(spec, set, mc));
  }
  std::ostringstream out;
  write_hitting_csv(out, rows, true);
  write_file(paths[0], out.str());

  CommandResult res;
  res.files = paths;
  std::ostringstream s;
  s << "seed " << o.mc.seed << ", " << o.mc.n_paths << " paths per height, process " << spec.name() << ", set "
    << set.name() << "\n";
  for (const auto& r : rows) {
    s << "  h=" << r.height << ": estimate " << r.estimate << " +- " << r.std_error << " (hit " << r.n_hit << ", exit "
      << r.n_exited_without_hit << ", censored " << r.n_censored << ")";
    if (r.censored_flag) s << " [censoring above 5%]";
    if (r.start_in_set) s << " [start lies in A]";
    if (r.range_violation) {
      s << " [estimate above 1.5]";
      res.outcome = Outcome::CheckFailed;
    }
    s << "\n";
  }
  res.summary = s.str();
  return res;
}

CommandResult run_verify(const RunConfig& cfg, const fs::path& out_dir, bool force, double u_scale) {
  VerifyOptions vo;
  vo.u_scale = u_scale;
  vo.threads = cfg.threads();
  const auto catalog = cfg.processes();
  const auto paths = prepare_outputs(out_dir, {"verify.csv"}, force);
  const auto results = run_property_suite(catalog, vo);

  std::ostringstream out;
  csv::row(out, {"property", "passed", "detail"});
  std::ostringstream s;
  CommandResult res;
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    csv::row(out, {r.name, r.passed ? "true" : "false", detail});
    s << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  " << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  write_file(paths[0], out.str());
  s << results.size() - failed << "/" << results.size() << " properties passed\n";
  res.files = paths;
  res.summary = s.str();
  res.outcome = failed == 0 ? Outcome::Pass : Outcome::CheckFailed;
  return res;
}

}  // namespace hst
