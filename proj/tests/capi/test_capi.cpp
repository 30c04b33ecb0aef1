#include <doctest.h>

#include <henondim/henondim.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  hd_string_free(s);
  return out;
}

const char* kHenon = R"(
map:
  factors:
    - coeffs: [-6, 0, 1]
      a: 0.2
n_max: 8
t_grid: {min: 0, max: 1, step: 0.25}
)";

const char* kSymmetric = R"(
linear_model:
  branch_logs: [1.3862943611198906, 1.3862943611198906]
n_max: 6
)";

}  // namespace

TEST_CASE("status tags and version") {
  CHECK(std::string(hd_version()) == "0.1.0");
  CHECK(std::string(hd_status_tag(HD_OK)) == "ok");
  CHECK(std::string(hd_status_tag(HD_ERR_INCOMPLETE_LIBRARY)) == "incomplete-library");
  CHECK(std::string(hd_status_tag(HD_ERR_CORRUPT_CACHE)) == "corrupt-cache");
  CHECK(hd_status_is_config(HD_ERR_CONFIG));
  CHECK_FALSE(hd_status_is_config(HD_ERR_NEWTON_DIVERGED));
}

TEST_CASE("configuration errors carry a message") {
  hd_config* cfg = nullptr;
  CHECK(hd_config_load_string("map: {factors: [{coeffs: [1, 2], a: 0.2}]}\n", "bad.yaml", &cfg) == HD_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(hd_last_error_message()).find("bad.yaml:1:") != std::string::npos);
  CHECK(hd_config_load_string(kSymmetric, "x", nullptr) == HD_ERR_INVALID_ARGUMENT);
  CHECK(hd_config_load_file("/nonexistent/run.yaml", &cfg) != HD_OK);
}

TEST_CASE("setters round-trip and defer validation") {
  hd_config* cfg = nullptr;
  REQUIRE(hd_config_load_string(kHenon, "run.yaml", &cfg) == HD_OK);
  CHECK(hd_config_n_max(cfg) == 8);
  CHECK(hd_config_set_n_max(cfg, 2) == HD_OK);
  CHECK(hd_config_validate(cfg) == HD_ERR_CONFIG);
  CHECK(std::string(hd_last_error_message()).find("n_max") != std::string::npos);
  CHECK(hd_config_set_n_max(cfg, 8) == HD_OK);
  CHECK(hd_config_set_tol(cfg, 1e-11) == HD_OK);
  CHECK(hd_config_tol(cfg) == 1e-11);
  CHECK(hd_config_set_jobs(cfg, 2) == HD_OK);
  CHECK(hd_config_jobs(cfg) == 2);
  CHECK(hd_config_set_cache_dir(cfg, "/tmp/x") == HD_OK);
  CHECK(std::string(hd_config_cache_dir(cfg)) == "/tmp/x");
  CHECK(hd_config_set_cache_dir(cfg, "") == HD_OK);
  CHECK(hd_config_validate(cfg) == HD_OK);
  CHECK(hd_config_set_t_step(cfg, 0.0) == HD_OK);
  CHECK(hd_config_validate(cfg) == HD_ERR_CONFIG);
  CHECK(hd_config_set_t_step(cfg, 0.25) == HD_OK);
  CHECK(hd_config_set_t_min(cfg, 2.0) == HD_OK);
  CHECK(hd_config_validate(cfg) == HD_ERR_CONFIG);
  CHECK(hd_config_set_t_min(cfg, 0.0) == HD_OK);
  CHECK(hd_config_validate(cfg) == HD_OK);
  CHECK(hd_config_fingerprint(cfg) != 0);
  hd_config_free(cfg);
}

TEST_CASE("library, pressure and report through handles") {
  hd_config* cfg = nullptr;
  REQUIRE(hd_config_load_string(kHenon, "run.yaml", &cfg) == HD_OK);
  hd_library* lib = nullptr;
  REQUIRE(hd_library_obtain(cfg, 0, &lib) == HD_OK);
  CHECK(hd_library_n_max(lib) == 8);
  std::uint64_t prim = 0, fixed = 0;
  int complete = 0;
  REQUIRE(hd_library_period(lib, 6, &prim, &fixed, &complete) == HD_OK);
  CHECK(prim == 9);
  CHECK(fixed == 64);
  CHECK(complete == 1);
  CHECK(hd_library_period(lib, 9, &prim, &fixed, &complete) == HD_ERR_INVALID_ARGUMENT);

  const auto summary = take([&] { char* s = nullptr; hd_library_summary_csv(lib, &s); return s; }());
  CHECK(summary.rfind("period,primitive_orbits,fixed_points,expected,complete,max_residual\n", 0) == 0);

  char* curve = nullptr;
  REQUIRE(hd_pressure_curve_csv(cfg, lib, &curve) == HD_OK);
  const std::string curve_text = take(curve);
  CHECK(curve_text.find("\n0,0.69314718055994") != std::string::npos);

  hd_report* report = nullptr;
  REQUIRE(hd_report_compute(cfg, lib, &report) == HD_OK);
  hd_report_summary sum{};
  REQUIRE(hd_report_summary_get(report, &sum) == HD_OK);
  CHECK(sum.t_s < sum.t_u);
  CHECK(sum.n_max == 8);
  CHECK(sum.maximizer_count == 1);
  CHECK(std::string(sum.verdict) == "no-full-dimension");
  char* text = nullptr;
  REQUIRE(hd_report_text(report, &text) == HD_OK);
  CHECK(take(text).find("verdict=no-full-dimension") != std::string::npos);
  char* csv = nullptr;
  REQUIRE(hd_report_csv(report, 1, &csv) == HD_OK);
  CHECK(take(csv).rfind("t_u,t_s,dim_J,d_g,gap,formula_residual,n_max,verdict\n", 0) == 0);

  const auto path = (std::filesystem::temp_directory_path() / "henondim_capi_lib.csv").string();
  REQUIRE(hd_library_store(lib, path.c_str()) == HD_OK);
  hd_library* loaded = nullptr;
  REQUIRE(hd_library_load(path.c_str(), hd_config_fingerprint(cfg), &loaded) == HD_OK);
  CHECK(hd_library_n_max(loaded) == 8);
  CHECK(hd_library_load(path.c_str(), hd_config_fingerprint(cfg) ^ 1u, &loaded) == HD_ERR_FINGERPRINT_MISMATCH);
  CHECK(std::string(hd_last_error_message()).size() > 0);
  std::remove(path.c_str());

  hd_report_free(report);
  hd_library_free(loaded);
  hd_library_free(lib);
  hd_config_free(cfg);
}

TEST_CASE("numerical failures surface their tag") {
  hd_config* cfg = nullptr;
  REQUIRE(hd_config_load_string("map: {factors: [{coeffs: [-1, 0, 1], a: 0.2}]}\nn_max: 4\n", "c1.yaml", &cfg) ==
          HD_OK);
  hd_library* lib = nullptr;
  REQUIRE(hd_library_obtain(cfg, 0, &lib) == HD_OK);
  hd_report* report = nullptr;
  const hd_status st = hd_report_compute(cfg, lib, &report);
  CHECK(st == HD_ERR_INCOMPLETE_LIBRARY);
  CHECK_FALSE(hd_status_is_config(st));
  CHECK(report == nullptr);
  hd_library_free(lib);
  hd_config_free(cfg);
}

TEST_CASE("closed-form report and self-test") {
  hd_config* cfg = nullptr;
  REQUIRE(hd_config_load_string(kSymmetric, "sym.yaml", &cfg) == HD_OK);
  hd_library* lib = nullptr;
  REQUIRE(hd_library_obtain(cfg, 0, &lib) == HD_OK);
  hd_report* report = nullptr;
  REQUIRE(hd_report_compute(cfg, lib, &report) == HD_OK);
  hd_report_summary sum{};
  hd_report_summary_get(report, &sum);
  CHECK(std::abs(sum.t_u - 0.5) <= 1e-12);
  CHECK(std::abs(sum.d_g - 1.0) <= 1e-12);
  CHECK(std::string(sum.verdict) == "full-dimension-affine");
  hd_report_free(report);
  hd_library_free(lib);
  hd_config_free(cfg);

  char* out = nullptr;
  int failures = -1;
  REQUIRE(hd_oracle_selftest(&out, &failures) == HD_OK);
  CHECK(failures == 0);
  CHECK(take(out).find("all-oracle-checks-passed") != std::string::npos);
}

TEST_CASE("sweep through the C interface") {
  hd_config* cfg = nullptr;
  REQUIRE(hd_config_load_string(R"(
linear_model:
  branch_logs: [0.7, 2.0]
  log_a: -1
n_max: 8
family:
  slot: {branch: 1}
  segment: {from: 1.5, to: 2.5, count: 3}
)",
                                "fam.yaml", &cfg) == HD_OK);
  char* csv = nullptr;
  double continuity = -1.0;
  int has = 0;
  REQUIRE(hd_sweep_csv(cfg, &csv, &continuity, &has) == HD_OK);
  CHECK(has == 1);
  CHECK(continuity > 0.0);
  CHECK(take(csv).find(",8,ok\n") != std::string::npos);
  char* text = nullptr;
  int violation = -1;
  CHECK(hd_submean_text(cfg, &text, &violation) == HD_ERR_CONFIG);
  hd_config_free(cfg);
}
