// SPDX-License-Identifier: Apache-2.0
// halfspace-thinness <verb> --config <path> --out <dir> [--set k=v]... [--force] [--threads N]
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hst/hst.h"

namespace {

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thinness criteria and kernel sweeps for subordinate Brownian motion in the half-space"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool force = false;
  int threads = 0;

  const std::pair<const char*, hst_verb> verbs[] = {{"kernels", HST_VERB_KERNELS},
                                                    {"thinness", HST_VERB_THINNESS},
                                                    {"simulate", HST_VERB_SIMULATE},
                                                    {"verify", HST_VERB_VERIFY}};
  const char* help[] = {"tabulate G, j, V and run the asymptotic ratio sweeps",
                        "evaluate the integral criteria and the minimal thinness verdict",
                        "estimate the hitting functional by Monte Carlo", "run the property suite"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(verbs[i].first, help[i]);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--set", overrides, "override a configuration key (key=value)");
    sub->add_flag("--force", force, "overwrite existing output files");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  hst_verb verb = HST_VERB_KERNELS;
  for (int i = 0; i < 4; ++i)
    if (subs[i]->parsed()) verb = verbs[i].second;

  hst_config* cfg = nullptr;
  if (hst_config_from_file(config_path.c_str(), &cfg) != HST_OK) return fail(hst_last_error());
  auto apply = [&](const std::string& a) { return hst_config_override(cfg, a.c_str()) == HST_OK; };
  bool ok = true;
  for (const auto& o : overrides) ok = ok && apply(o);
  if (ok && threads > 0) ok = apply("threads=" + std::to_string(threads));
  if (const char* seed = std::getenv("HST_SEED"); ok && seed && *seed) ok = apply(std::string("mc.seed=") + seed);
  if (!ok) {
    const std::string msg = hst_last_error();
    hst_config_free(cfg);
    return fail(msg);
  }

  hst_report* rep = nullptr;
  const hst_status st = hst_run(verb, cfg, out_dir.c_str(), force ? 1 : 0, &rep);
  hst_config_free(cfg);
  if (st != HST_OK) return fail(hst_last_error());
  std::cout << hst_report_summary(rep);
  const int code = hst_report_outcome(rep);
  hst_report_free(rep);
  return code;
}
