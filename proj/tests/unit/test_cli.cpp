// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string output;
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" HST_CLI_PATH "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Workspace {
  fs::path root;
  explicit Workspace(const std::string& name) : root(fs::temp_directory_path() / ("hst_cli_" + name)) {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }
  std::string config(const std::string& json) const {
    const fs::path p = root / "config.json";
    std::ofstream(p) << json;
    return p.string();
  }
  std::string out(const std::string& name) const { return (root / name).string(); }
};

const char* kStable = R"({"dimension": 3, "process": {"kind": "Stable", "alpha": 1.0},
  "set": {"kind": "LipschitzGraph", "profile": {"kind": "PowerLaw", "c": 1.0, "beta": 1.5}},
  "kernels": {"points_per_decade": 10}})";

const char* kSimulate = R"({"dimension": 2, "process": {"kind": "Stable", "alpha": 1.0},
  "set": {"kind": "LipschitzGraph", "profile": {"kind": "PowerLaw", "c": 1.0, "beta": 1.0}},
  "mc": {"seed": 42, "n_paths": 300, "heights": [0.4, 0.2]}})";

}  // namespace

TEST_CASE("kernels verb") {
  Workspace w("kernels");
  const auto cfg = w.config(kStable);
  const auto ok = cli("kernels --config " + cfg + " --out " + w.out("k"));
  CHECK(ok.code == 0);
  CHECK(fs::exists(w.out("k") + "/kernels.csv"));
  CHECK(fs::exists(w.out("k") + "/ratios.csv"));
  const auto bad = cli("kernels --config " + cfg + " --out " + w.out("k2") + " --set process.alpha=3");
  CHECK(bad.code == 1);
  CHECK(bad.output.find("process.alpha out of range (0,2)") != std::string::npos);
  const auto tight = cli("kernels --config " + cfg + " --out " + w.out("k3") +
                         " --set process.kind=StableMix --set process.alpha=1.5 --set process.beta=0.5"
                         " --set kernels.spread_bound=1.0");
  CHECK(tight.code == 2);
  const auto again = cli("kernels --config " + cfg + " --out " + w.out("k"));
  CHECK(again.code == 1);
  CHECK(cli("kernels --config " + cfg + " --out " + w.out("k") + " --force").code == 0);
}

TEST_CASE("thinness verb") {
  Workspace w("thinness");
  const auto cfg = w.config(kStable);
  CHECK(cli("thinness --config " + cfg + " --out " + w.out("a")).code == 0);
  const auto csv = slurp(w.out("a") + "/verdict.csv");
  CHECK(csv.find("criterion,status,value,error_bound,shells_used,process_independent\nburdzy,Converges,12.566370") == 0);
  CHECK(cli("thinness --config " + cfg + " --out " + w.out("b") + " --set set.profile.beta=1").code == 0);
  CHECK(slurp(w.out("b") + "/verdict.csv").find("\nburdzy,Diverges,,,") != std::string::npos);
  const auto thorn = cli("thinness --config " + cfg + " --out " + w.out("c") + " --set dimension=2 --set set.kind=Thorn");
  CHECK(thorn.code == 1);
  CHECK(thorn.output.find("thorn criteria require d>=3") != std::string::npos);
  const auto boxes = cli("thinness --config " + cfg + " --out " + w.out("d") +
                         " --set set.kind=BoxUnion --set 'set.boxes=[{\"lo\":[0.5,0.5,0.5],\"hi\":[0.6,0.6,0.6]}]'");
  CHECK(boxes.code == 3);
  CHECK(cli("thinness --config " + cfg + " --out " + w.out("e") + " --set nonsense=1").code == 1);
}

TEST_CASE("simulate verb") {
  Workspace w("simulate");
  const auto cfg = w.config(kSimulate);
  const auto a = cli("simulate --config " + cfg + " --out " + w.out("a") + " --threads 1");
  CHECK(a.code == 0);
  CHECK(a.output.find("seed 42") != std::string::npos);
  CHECK(cli("simulate --config " + cfg + " --out " + w.out("b") + " --threads 4").code == 0);
  const auto csv = slurp(w.out("a") + "/hitting.csv");
  CHECK(csv == slurp(w.out("b") + "/hitting.csv"));
  CHECK(csv.rfind("height,estimate,std_error,n_hit,n_exit,n_censored,seed,censored_flag\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);

  const auto seeded = cli("simulate --config " + cfg + " --out " + w.out("c"), "HST_SEED=7");
  CHECK(seeded.output.find("seed 7") != std::string::npos);
  CHECK(slurp(w.out("c") + "/hitting.csv").find(",7,false\n") != std::string::npos);

  CHECK(cli("simulate --config " + cfg + " --out " + w.out("d") + " --set mc.n_paths=0").code == 1);
  CHECK(cli("simulate --config " + cfg + " --out " + w.out("e") + " --set mc.max_time=0.01").code == 0);
  CHECK(slurp(w.out("e") + "/hitting.csv").find(",true\n") != std::string::npos);
}

TEST_CASE("verify verb") {
  Workspace w("verify");
  const auto cfg = w.config(R"({"dimension": 3, "process": {"kind": "Stable", "alpha": 1.0}})");
  const auto ok = cli("verify --config " + cfg + " --out " + w.out("a"));
  CHECK(ok.code == 0);
  CHECK(ok.output.find("PASS  transform_identity") != std::string::npos);
  const auto faulty = cli("verify --config " + cfg + " --out " + w.out("b"), "HST_INJECT_U_SCALE=1.01");
  CHECK(faulty.code == 2);
  CHECK(faulty.output.find("FAIL  transform_identity") != std::string::npos);
  CHECK(cli("verify --config " + w.out("missing.json") + " --out " + w.out("c")).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(cli("").code == 1);
  CHECK(cli("frobnicate --config x --out y").code == 1);
  CHECK(cli("kernels --out y").code == 1);
  CHECK(cli("--help").code == 0);
}
