#include "henondim/henondim.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "orbit_cache.hpp"
#include "pipeline.hpp"
#include "sweep.hpp"
#include "text_format.hpp"

using namespace henondim;

struct hd_config {
  RunConfig cfg;
};

struct hd_library {
  OrbitLibrary lib;
};

struct hd_report {
  DimensionReport report;
};

namespace {

thread_local std::string last_error;

hd_status status_of(ErrorTag tag) { return static_cast<hd_status>(static_cast<int>(tag) + 1); }

template <class F>
hd_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return HD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.tag());
  } catch (const std::bad_alloc&) {
    last_error = "internal: out of memory";
    return HD_ERR_INTERNAL;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = std::string("io: ") + e.what();
    return HD_ERR_IO;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return HD_ERR_INTERNAL;
  }
}

hd_status null_argument(const char* what) {
  last_error = std::string("invalid-argument: ") + what + " is null";
  return HD_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

OrbitOptions orbit_options(const RunConfig& cfg) {
  OrbitOptions opts;
  opts.jobs = cfg.jobs;
  return opts;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions opts;
  opts.n_max = cfg.n_max;
  opts.tol = cfg.tol;
  opts.dimension = dimension_options(cfg);
  opts.jobs = cfg.jobs;
  return opts;
}

const FamilySpec& require_family(const RunConfig& cfg) {
  if (!cfg.family) throw Error(ErrorTag::config, "configuration has no 'family' section");
  return *cfg.family;
}

}  // namespace

extern "C" {

const char* hd_version(void) { return "0.1.0"; }

const char* hd_status_tag(hd_status status) {
  static const std::string tags[] = {
      "ok",
      std::string(tag_name(ErrorTag::config)),
      std::string(tag_name(ErrorTag::escaped)),
      std::string(tag_name(ErrorTag::orientation)),
      std::string(tag_name(ErrorTag::seeding_diverged)),
      std::string(tag_name(ErrorTag::newton_diverged)),
      std::string(tag_name(ErrorTag::non_hyperbolic)),
      std::string(tag_name(ErrorTag::incomplete_library)),
      std::string(tag_name(ErrorTag::degenerate_lambda)),
      std::string(tag_name(ErrorTag::no_bracket)),
      std::string(tag_name(ErrorTag::no_interior_max)),
      std::string(tag_name(ErrorTag::fingerprint_mismatch)),
      std::string(tag_name(ErrorTag::corrupt_cache)),
      std::string(tag_name(ErrorTag::budget_exceeded)),
      std::string(tag_name(ErrorTag::io)),
      std::string(tag_name(ErrorTag::invalid_argument)),
      "internal",
  };
  const int k = static_cast<int>(status);
  if (k < 0 || k > static_cast<int>(HD_ERR_INTERNAL)) return "unknown";
  return tags[k].c_str();
}

int hd_status_is_config(hd_status status) {
  return status == HD_ERR_CONFIG || status == HD_ERR_INVALID_ARGUMENT || status == HD_ERR_ORIENTATION;
}

const char* hd_last_error_message(void) { return last_error.c_str(); }

void hd_string_free(char* s) { std::free(s); }

hd_status hd_config_load_file(const char* path, hd_config** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new hd_config{load_config(path)}; });
}

hd_status hd_config_load_string(const char* yaml, const char* source, hd_config** out) {
  if (yaml == nullptr) return null_argument("yaml");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new hd_config{parse_config(yaml, source ? source : "<config>")}; });
}

void hd_config_free(hd_config* cfg) { delete cfg; }

hd_status hd_config_validate(const hd_config* cfg) {
  if (cfg == nullptr) return null_argument("cfg");
  return guarded([&] {
    validate_config(cfg->cfg);
    if (const auto* g = std::get_if<HenonMap>(&*cfg->cfg.system)) characterize(*g);
  });
}

hd_status hd_config_set_n_max(hd_config* cfg, int n_max) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.n_max = n_max;
  return HD_OK;
}

hd_status hd_config_set_t_min(hd_config* cfg, double t_min) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.t_grid.min = t_min;
  return HD_OK;
}

hd_status hd_config_set_t_max(hd_config* cfg, double t_max) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.t_grid.max = t_max;
  return HD_OK;
}

hd_status hd_config_set_t_step(hd_config* cfg, double t_step) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.t_grid.step = t_step;
  return HD_OK;
}

hd_status hd_config_set_tol(hd_config* cfg, double tol) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.tol = tol;
  return HD_OK;
}

hd_status hd_config_set_cache_dir(hd_config* cfg, const char* dir) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.cache_dir = dir ? dir : "";
  return HD_OK;
}

hd_status hd_config_set_jobs(hd_config* cfg, int jobs) {
  if (cfg == nullptr) return null_argument("cfg");
  cfg->cfg.jobs = jobs;
  return HD_OK;
}

int hd_config_n_max(const hd_config* cfg) { return cfg ? cfg->cfg.n_max : 0; }
double hd_config_tol(const hd_config* cfg) { return cfg ? cfg->cfg.tol : 0.0; }
int hd_config_jobs(const hd_config* cfg) { return cfg ? cfg->cfg.jobs : 0; }
const char* hd_config_cache_dir(const hd_config* cfg) { return cfg ? cfg->cfg.cache_dir.c_str() : ""; }

uint64_t hd_config_fingerprint(const hd_config* cfg) {
  return cfg && cfg->cfg.system ? system_fingerprint(*cfg->cfg.system) : 0;
}

hd_status hd_library_obtain(const hd_config* cfg, int refresh, hd_library** out) {
  if (cfg == nullptr) return null_argument("cfg");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    validate_config(cfg->cfg);
    const auto& c = cfg->cfg;
    *out = new hd_library{obtain_library(*c.system, c.n_max, c.cache_dir, refresh != 0, orbit_options(c))};
  });
}

hd_status hd_library_load(const char* path, uint64_t fingerprint, hd_library** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new hd_library{cache_load(path, fingerprint)}; });
}

hd_status hd_library_store(const hd_library* lib, const char* path) {
  if (lib == nullptr) return null_argument("lib");
  if (path == nullptr) return null_argument("path");
  return guarded([&] { cache_store(lib->lib, path); });
}

void hd_library_free(hd_library* lib) { delete lib; }

int hd_library_n_max(const hd_library* lib) { return lib ? lib->lib.n_max : 0; }

hd_status hd_library_period(const hd_library* lib, int period, uint64_t* primitive_orbits,
                            uint64_t* fixed_points, int* complete) {
  if (lib == nullptr) return null_argument("lib");
  return guarded([&] {
    if (period < 1 || period > lib->lib.n_max) {
      throw Error(ErrorTag::invalid_argument, "period " + std::to_string(period) + " outside the library");
    }
    const auto it = lib->lib.orbits.find(period);
    if (primitive_orbits) *primitive_orbits = it == lib->lib.orbits.end() ? 0 : it->second.size();
    if (fixed_points) *fixed_points = lib->lib.fixed_point_count(period);
    if (complete) *complete = lib->lib.complete_at(period) ? 1 : 0;
  });
}

hd_status hd_library_summary_csv(const hd_library* lib, char** out) {
  if (lib == nullptr) return null_argument("lib");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto& l = lib->lib;
    std::string text = "period,primitive_orbits,fixed_points,expected,complete,max_residual\n";
    for (int n = 1; n <= l.n_max; ++n) {
      const auto it = l.orbits.find(n);
      double worst = 0.0;
      std::size_t count = 0;
      if (it != l.orbits.end()) {
        count = it->second.size();
        for (const auto& o : it->second) worst = std::max(worst, o.residual);
      }
      text += std::to_string(n) + ',' + std::to_string(count) + ',' + std::to_string(l.fixed_point_count(n)) +
              ',' + std::to_string(l.expected_count(n)) + ',' + (l.complete_at(n) ? "1" : "0") + ',' +
              fmt17(worst) + '\n';
    }
    *out = dup_string(text);
  });
}

hd_status hd_pressure_curve_csv(const hd_config* cfg, const hd_library* lib, char** out) {
  if (cfg == nullptr) return null_argument("cfg");
  if (lib == nullptr) return null_argument("lib");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto& c = cfg->cfg;
    validate_config(c);
    const PressureModel model(lib->lib, c.n_max);
    const auto grid = make_grid(c.t_grid.min, c.t_grid.max, c.t_grid.step);
    *out = dup_string(curve_csv(build_curve(model, grid, c.t_cap, c.jobs)));
  });
}

hd_status hd_report_compute(const hd_config* cfg, const hd_library* lib, hd_report** out) {
  if (cfg == nullptr) return null_argument("cfg");
  if (lib == nullptr) return null_argument("lib");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    validate_config(cfg->cfg);
    *out = new hd_report{system_report(lib->lib, cfg->cfg)};
  });
}

void hd_report_free(hd_report* report) { delete report; }

hd_status hd_report_summary_get(const hd_report* report, hd_report_summary* out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  const auto& r = report->report;
  out->t_u = r.t_u;
  out->t_s = r.t_s;
  out->dim_J = r.dim_J;
  out->d_g = r.d_g;
  out->gap = r.gap;
  out->formula_residual = r.formula_residual;
  out->err_est = r.err_est;
  out->n_max = r.n_max;
  out->maximizer_count = static_cast<int>(r.maximizers.size());
  out->verdict = verdict_name(r.diagnostics.verdict).data();
  return HD_OK;
}

hd_status hd_report_text(const hd_report* report, char** out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = dup_string(report_text(report->report)); });
}

hd_status hd_report_maxdim_text(const hd_report* report, char** out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = dup_string(maxdim_text(report->report)); });
}

hd_status hd_report_csv(const hd_report* report, int with_header, char** out) {
  if (report == nullptr) return null_argument("report");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    std::string text = with_header ? report_csv_header() + '\n' : std::string();
    *out = dup_string(text + report_csv_row(report->report) + '\n');
  });
}

hd_status hd_sweep_csv(const hd_config* cfg, char** out, double* continuity, int* has_continuity) {
  if (cfg == nullptr) return null_argument("cfg");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto& c = cfg->cfg;
    validate_config(c);
    const auto result = sweep(*c.system, require_family(c), sweep_options(c));
    if (continuity) *continuity = result.continuity.value_or(0.0);
    if (has_continuity) *has_continuity = result.continuity ? 1 : 0;
    *out = dup_string(sweep_csv(result));
  });
}

hd_status hd_submean_text(const hd_config* cfg, char** out, int* violation) {
  if (cfg == nullptr) return null_argument("cfg");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto& c = cfg->cfg;
    validate_config(c);
    const auto result = submean_check(*c.system, require_family(c), sweep_options(c));
    if (violation) *violation = result.violation ? 1 : 0;
    *out = dup_string(submean_text(result));
  });
}

hd_status hd_oracle_selftest(char** out, int* failures) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    std::ostringstream text;
    const int failed = oracle_selftest(text);
    if (failures) *failures = failed;
    *out = dup_string(text.str());
  });
}

}  // extern "C"
