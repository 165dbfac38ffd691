// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>

#include "hst/hst.h"

namespace fs = std::filesystem;

TEST_CASE("process handles") {
  hst_process* p = nullptr;
  REQUIRE(hst_process_stable(3, 1.0, &p) == HST_OK);
  double v = 0.0;
  CHECK(hst_phi(p, 4.0, &v) == HST_OK);
  CHECK(v == doctest::Approx(2.0));
  CHECK(hst_green(p, 1.0, &v) == HST_OK);
  CHECK(v == doctest::Approx(1.0 / (2 * std::numbers::pi * std::numbers::pi)).epsilon(1e-9));
  CHECK(hst_renewal(p, 0.25, &v) == HST_OK);
  CHECK(v == doctest::Approx(0.5));
  CHECK(hst_potential_density(p, 1.0, &v) == HST_OK);
  CHECK(hst_levy_density(p, 1.0, &v) == HST_OK);
  CHECK(hst_jump(p, 1.0, &v) == HST_OK);
  CHECK(hst_green(p, -1.0, &v) == HST_ERR_DOMAIN);
  CHECK(std::string(hst_last_error()).size() > 0);
  CHECK(hst_green(p, 1.0, nullptr) == HST_ERR_NULL_ARGUMENT);
  char name[64];
  CHECK(hst_process_name(p, name, sizeof name) == HST_OK);
  CHECK(std::string(name) == "Stable{alpha=1} d=3");
  hst_process_free(p);

  hst_process* bad = nullptr;
  CHECK(hst_process_stable(3, 3.0, &bad) == HST_ERR_DOMAIN);
  CHECK(bad == nullptr);
  CHECK(std::string(hst_last_error()) == "process.alpha out of range (0,2)");
  CHECK(hst_process_brownian_plus_stable(2, 1, 1, 1, &bad) == HST_ERR_DOMAIN);
  CHECK(hst_process_relativistic(3, 1, 1, &bad) == HST_OK);
  hst_process_free(bad);
  CHECK(hst_process_stable_mix(3, 1.5, 0.5, &bad) == HST_OK);
  hst_process_free(bad);
  CHECK(std::string(hst_status_name(HST_ERR_CONFIG)) == "configuration error");
}

TEST_CASE("criteria") {
  hst_integral r{};
  CHECK(hst_burdzy(3, 1.0, 1.5, 0.0, 0, &r) == HST_OK);
  CHECK(r.status == HST_CONVERGES);
  CHECK(r.value == doctest::Approx(4 * std::numbers::pi).epsilon(1e-6));
  CHECK(hst_burdzy(3, 1.0, 1.0, 0.0, 0, &r) == HST_OK);
  CHECK(r.status == HST_DIVERGES);
  CHECK(hst_thorn_brownian(4, 1.0, 1.5, 0.0, 0, &r) == HST_OK);
  CHECK(r.value == doctest::Approx(2.0).epsilon(5e-3));
  CHECK(hst_thorn_stable(3, 1.0, 1.0, 1.0, 2.0, 0, &r) == HST_OK);
  CHECK(r.value == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(hst_thorn_brownian(2, 1.0, 1.5, 0.0, 0, &r) == HST_ERR_DOMAIN);
  CHECK(std::string(hst_last_error()) == "thorn criteria require d>=3");
}

TEST_CASE("hitting estimate") {
  hst_process* p = nullptr;
  REQUIRE(hst_process_stable(2, 1.0, &p) == HST_OK);
  double e1 = 0, s1 = 0, e2 = 0, s2 = 0;
  CHECK(hst_hitting_estimate(p, 1.0, 1.0, 0.2, 42, 300, 1, &e1, &s1) == HST_OK);
  CHECK(hst_hitting_estimate(p, 1.0, 1.0, 0.2, 42, 300, 3, &e2, &s2) == HST_OK);
  CHECK(e1 == e2);
  CHECK(s1 == s2);
  CHECK(hst_hitting_estimate(p, 1.0, 1.0, 0.2, 42, 0, 1, &e1, &s1) == HST_ERR_DOMAIN);
  hst_process_free(p);
}

TEST_CASE("config and run") {
  hst_config* c = nullptr;
  CHECK(hst_config_from_string("{\"process\": {\"kind\": \"Stable\"}, \"oops\": 1}", &c) == HST_ERR_CONFIG);
  CHECK(std::string(hst_last_error()) == "unknown configuration key: oops");
  CHECK(hst_config_from_file("/nonexistent.json", &c) == HST_ERR_CONFIG);
  REQUIRE(hst_config_from_string(R"({"dimension": 3, "process": {"kind": "Stable", "alpha": 1.0},
    "set": {"kind": "LipschitzGraph", "profile": {"kind": "PowerLaw", "c": 1.0, "beta": 1.0}}})",
                                 &c) == HST_OK);
  CHECK(hst_config_override(c, "bogus=1") == HST_ERR_CONFIG);
  const fs::path dir = fs::temp_directory_path() / "hst_capi_run";
  fs::remove_all(dir);
  hst_report* r = nullptr;
  REQUIRE(hst_run(HST_VERB_THINNESS, c, dir.c_str(), 0, &r) == HST_OK);
  CHECK(hst_report_outcome(r) == HST_OUTCOME_PASS);
  CHECK(std::string(hst_report_summary(r)).find("NotMinimallyThin") != std::string::npos);
  hst_report_free(r);
  CHECK(hst_run(HST_VERB_THINNESS, c, dir.c_str(), 0, &r) == HST_ERR_IO);
  CHECK(hst_config_override(c, "set.kind=BoxUnion") == HST_OK);
  REQUIRE(hst_run(HST_VERB_THINNESS, c, dir.c_str(), 1, &r) == HST_OK);
  CHECK(hst_report_outcome(r) == HST_OUTCOME_INCONCLUSIVE);
  hst_report_free(r);
  hst_config_free(c);
  fs::remove_all(dir);
}

TEST_CASE("verify with and without the fault hook") {
  hst_config* c = nullptr;
  REQUIRE(hst_config_from_string(R"({"dimension": 3, "process": {"kind": "StableMix", "alpha": 1.5, "beta": 0.5}})", &c) ==
          HST_OK);
  const fs::path dir = fs::temp_directory_path() / "hst_capi_verify";
  fs::remove_all(dir);
  hst_report* r = nullptr;
  REQUIRE(hst_run(HST_VERB_VERIFY, c, dir.c_str(), 0, &r) == HST_OK);
  CHECK(hst_report_outcome(r) == HST_OUTCOME_PASS);
  hst_report_free(r);
  setenv("HST_INJECT_U_SCALE", "1.01", 1);
  REQUIRE(hst_run(HST_VERB_VERIFY, c, dir.c_str(), 1, &r) == HST_OK);
  unsetenv("HST_INJECT_U_SCALE");
  CHECK(hst_report_outcome(r) == HST_OUTCOME_CHECK_FAILED);
  CHECK(std::string(hst_report_summary(r)).find("FAIL  transform_identity") != std::string::npos);
  hst_report_free(r);
  hst_config_free(c);
  fs::remove_all(dir);
}
