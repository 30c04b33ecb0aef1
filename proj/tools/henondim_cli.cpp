#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "henondim/henondim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string config;
  std::optional<int> n_max;
  std::optional<double> t_min, t_max, t_step, tol;
  std::optional<std::string> cache_dir;
  std::optional<int> jobs;
  std::string out;
  bool refresh = false;
  bool stats = false;
};

class Failure {
 public:
  explicit Failure(hd_status status) : status_(status) {}
  hd_status status() const { return status_; }

 private:
  hd_status status_;
};

void check(hd_status status) {
  if (status != HD_OK) throw Failure(status);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { hd_string_free(ptr); }
};

void emit(const Flags& flags, const char* text) {
  if (flags.out.empty()) {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream file(flags.out, std::ios::binary);
  file << text;
  if (!file) {
    std::fprintf(stderr, "io: cannot write %s\n", flags.out.c_str());
    throw Failure(HD_ERR_IO);
  }
}

// Precedence for every field: command-line flag, then (cache_dir only) the
// HENONDIM_CACHE_DIR environment variable, then the configuration file.
hd_config* load(const Flags& flags) {
  hd_config* cfg = nullptr;
  check(hd_config_load_file(flags.config.c_str(), &cfg));
  hd_status st = HD_OK;
  auto apply = [&](hd_status s) {
    if (st == HD_OK) st = s;
  };
  if (flags.n_max) apply(hd_config_set_n_max(cfg, *flags.n_max));
  if (flags.t_min) apply(hd_config_set_t_min(cfg, *flags.t_min));
  if (flags.t_max) apply(hd_config_set_t_max(cfg, *flags.t_max));
  if (flags.t_step) apply(hd_config_set_t_step(cfg, *flags.t_step));
  if (flags.tol) apply(hd_config_set_tol(cfg, *flags.tol));
  if (flags.jobs) apply(hd_config_set_jobs(cfg, *flags.jobs));
  if (flags.cache_dir) {
    apply(hd_config_set_cache_dir(cfg, flags.cache_dir->c_str()));
  } else if (const char* env = std::getenv("HENONDIM_CACHE_DIR")) {
    apply(hd_config_set_cache_dir(cfg, env));
  }
  if (st == HD_OK) st = hd_config_validate(cfg);
  if (st != HD_OK) {
    hd_config_free(cfg);
    throw Failure(st);
  }
  return cfg;
}

struct Session {
  hd_config* cfg = nullptr;
  hd_library* lib = nullptr;
  ~Session() {
    hd_library_free(lib);
    hd_config_free(cfg);
  }
};

void open_library(Session& s, const Flags& flags) {
  s.cfg = load(flags);
  std::fprintf(stderr, "henondim: orbit library up to period %d\n", hd_config_n_max(s.cfg));
  check(hd_library_obtain(s.cfg, flags.refresh ? 1 : 0, &s.lib));
}

void run_orbits(const Flags& flags) {
  Session s;
  open_library(s, flags);
  OwnedString text;
  check(hd_library_summary_csv(s.lib, &text.ptr));
  emit(flags, text.ptr);
}

void run_pressure(const Flags& flags) {
  Session s;
  open_library(s, flags);
  OwnedString text;
  check(hd_pressure_curve_csv(s.cfg, s.lib, &text.ptr));
  emit(flags, text.ptr);
}

void run_report(const Flags& flags, bool maxdim) {
  Session s;
  open_library(s, flags);
  hd_report* report = nullptr;
  check(hd_report_compute(s.cfg, s.lib, &report));
  OwnedString text;
  const hd_status st = maxdim ? hd_report_maxdim_text(report, &text.ptr) : hd_report_text(report, &text.ptr);
  hd_report_free(report);
  check(st);
  emit(flags, text.ptr);
}

void run_selftest(const Flags& flags) {
  OwnedString text;
  int failures = 0;
  check(hd_oracle_selftest(&text.ptr, &failures));
  emit(flags, text.ptr);
  if (failures != 0) {
    std::fprintf(stderr, "oracle-selftest: %d check(s) failed\n", failures);
    throw Failure(HD_ERR_INTERNAL);
  }
}

void run_sweep(const Flags& flags) {
  Session s;
  s.cfg = load(flags);
  OwnedString text;
  double continuity = 0.0;
  int has_continuity = 0;
  check(hd_sweep_csv(s.cfg, &text.ptr, &continuity, &has_continuity));
  emit(flags, text.ptr);
  if (flags.stats && has_continuity) std::fprintf(stderr, "continuity=%.17g\n", continuity);
}

void run_submean(const Flags& flags) {
  Session s;
  s.cfg = load(flags);
  OwnedString text;
  int violation = 0;
  check(hd_submean_text(s.cfg, &text.ptr, &violation));
  emit(flags, text.ptr);
  if (violation) std::fprintf(stderr, "submean: VIOLATION\n");
}

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("-c,--config", flags.config, "YAML configuration file")->required();
  cmd->add_option("--n-max", flags.n_max, "largest period");
  cmd->add_option("--t-min", flags.t_min, "pressure grid start");
  cmd->add_option("--t-max", flags.t_max, "pressure grid end");
  cmd->add_option("--t-step", flags.t_step, "pressure grid step");
  cmd->add_option("--tol", flags.tol, "root-finding tolerance");
  cmd->add_option("--cache-dir", flags.cache_dir, "orbit cache directory (overrides HENONDIM_CACHE_DIR)");
  cmd->add_option("--jobs", flags.jobs, "parallel width, 0 = all cores");
  cmd->add_option("-o,--out", flags.out, "output file (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pressure and dimension toolkit for hyperbolic generalized Hénon maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hd_version());
  Flags flags;

  auto* orbits = app.add_subcommand("orbits", "build or refresh the periodic-orbit cache");
  add_common(orbits, flags);
  orbits->add_flag("--refresh", flags.refresh, "rebuild even when a cached library exists");
  auto* pressure = app.add_subcommand("pressure", "emit the pressure curve CSV");
  add_common(pressure, flags);
  auto* dims = app.add_subcommand("dims", "emit the dimension report");
  add_common(dims, flags);
  auto* maxdim = app.add_subcommand("maxdim", "emit maximizers and the formula residual");
  add_common(maxdim, flags);
  auto* selftest = app.add_subcommand("oracle-selftest", "run the closed-form equivalence suite");
  selftest->add_option("-o,--out", flags.out, "output file (default: standard output)");
  auto* sweep_cmd = app.add_subcommand("sweep", "emit the parameter-family atlas CSV");
  add_common(sweep_cmd, flags);
  sweep_cmd->add_flag("--stats", flags.stats, "print the continuity statistic on standard error");
  auto* submean = app.add_subcommand("submean", "emit the sub-mean-value report on a circle family");
  add_common(submean, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (orbits->parsed()) run_orbits(flags);
    else if (pressure->parsed()) run_pressure(flags);
    else if (dims->parsed()) run_report(flags, false);
    else if (maxdim->parsed()) run_report(flags, true);
    else if (selftest->parsed()) run_selftest(flags);
    else if (sweep_cmd->parsed()) run_sweep(flags);
    else if (submean->parsed()) run_submean(flags);
  } catch (const Failure& f) {
    if (*hd_last_error_message() != '\0') std::fprintf(stderr, "%s\n", hd_last_error_message());
    return hd_status_is_config(f.status()) ? kExitConfig : kExitNumerical;
  }
  return kExitOk;
}
