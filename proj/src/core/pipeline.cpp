#include "pipeline.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "orbit_cache.hpp"
#include "oracle.hpp"
#include "text_format.hpp"

namespace henondim {

OrbitLibrary build_library(const System& sys, int n_max, const OrbitOptions& opts) {
  if (const auto* model = std::get_if<LinearModel>(&sys)) return synthetic_library(*model, n_max);
  return enumerate_orbits(std::get<HenonMap>(sys), n_max, opts);
}

std::filesystem::path cache_path(const std::filesystem::path& cache_dir, std::uint64_t fingerprint) {
  return cache_dir / ("orbits-" + hex64(fingerprint) + ".csv");
}

OrbitLibrary obtain_library(const System& sys, int n_max, const std::filesystem::path& cache_dir,
                            bool refresh, const OrbitOptions& opts) {
  if (cache_dir.empty()) return build_library(sys, n_max, opts);
  const auto fp = system_fingerprint(sys);
  const auto path = cache_path(cache_dir, fp);
  if (!refresh && std::filesystem::exists(path)) {
    auto cached = cache_load(path, fp);
    if (cached.n_max >= n_max) return cached;
  }
  auto lib = build_library(sys, n_max, opts);
  std::filesystem::create_directories(cache_dir);
  cache_store(lib, path);
  return lib;
}

DimensionOptions dimension_options(const RunConfig& cfg) {
  DimensionOptions opts;
  opts.t_cap = cfg.t_cap;
  opts.diagnostics = cfg.diagnostics;
  return opts;
}

DimensionReport system_report(const OrbitLibrary& lib, const RunConfig& cfg) {
  return dimension_report(lib, cfg.n_max, cfg.tol, dimension_options(cfg));
}

std::string maxdim_text(const DimensionReport& r) {
  std::ostringstream out;
  out << "t_s=" << fmt17(r.t_s) << '\n';
  out << "t_u=" << fmt17(r.t_u) << '\n';
  out << "maximizers=" << r.maximizers.size() << '\n';
  for (std::size_t k = 0; k < r.maximizers.size(); ++k) {
    out << "t_star_" << k << '=' << fmt17(r.maximizers[k].t_star) << '\n';
    out << "Delta_star_" << k << '=' << fmt17(r.maximizers[k].Delta_star) << '\n';
  }
  out << "d_g=" << fmt17(r.d_g) << '\n';
  out << "formula_residual=" << fmt17(r.formula_residual) << '\n';
  out << "err_est=" << fmt17(r.err_est) << '\n';
  out << "verdict=" << verdict_name(r.diagnostics.verdict) << '\n';
  return out.str();
}

namespace {

struct SelfTest {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, double got, double want, double tol) {
    const double err = std::abs(got - want);
    const bool ok = err <= tol;
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << name << " got=" << fmt17(got) << " want=" << fmt17(want)
        << " err=" << fmt17(err) << '\n';
  }

  void check_true(const std::string& name, bool cond) {
    if (!cond) ++failures;
    out << (cond ? "ok   " : "FAIL ") << name << '\n';
  }
};

void compare_models(SelfTest& st, const std::string& label, const LinearModel& model, int n_max) {
  const auto want = exact_report(model);
  const auto lib = synthetic_library(model, n_max);
  const auto got = dimension_report(lib, n_max, 1e-12);
  st.check(label + " t_u", got.t_u, want.t_u, 1e-8);
  st.check(label + " t_s", got.t_s, want.t_s, 1e-8);
  st.check(label + " dim_J", got.dim_J, want.dim_J, 1e-8);
  st.check(label + " d_g", got.d_g, want.d_g, 1e-8);
  st.check(label + " gap", got.gap, want.gap, 1e-8);
  st.check_true(label + " verdict", got.diagnostics.verdict == want.diagnostics.verdict);
}

}  // namespace

int oracle_selftest(std::ostream& out) {
  SelfTest st{out};
  const int n_max = 10;

  const LinearModel symmetric{{std::log(4.0), std::log(4.0)}, 0.0};
  const auto sym = exact_report(symmetric);
  st.check("symmetric closed-form t_u", sym.t_u, 0.5, 1e-12);
  st.check("symmetric closed-form d_g", sym.d_g, 1.0, 1e-12);
  compare_models(st, "symmetric", symmetric, n_max);

  const LinearModel conformal{{std::log(2.0), std::log(8.0)}, 0.0};
  const auto conf = exact_report(conformal);
  st.check("(2,8) |a|=1 closed-form t_u", conf.t_u, 0.55146308974559554712, 1e-12);
  compare_models(st, "(2,8) |a|=1", conformal, n_max);

  const LinearModel dissipative{{std::log(2.0), std::log(8.0)}, std::log(0.25)};
  const auto diss = exact_report(dissipative);
  st.check("(2,8) |a|=1/4 closed-form t_s", diss.t_s, 0.25563259255652518497, 1e-12);
  st.check("(2,8) |a|=1/4 closed-form d_g", diss.d_g, 0.80192726642898299715, 1e-10);
  st.check_true("(2,8) |a|=1/4 gap > 1e-3", diss.gap > 1e-3);
  compare_models(st, "(2,8) |a|=1/4", dissipative, n_max);

  const double eps = 1e-4;
  for (double t : {0.25, 0.5, 1.0}) {
    const auto s = exact_sample(dissipative, t);
    const double dP = (exact_sample(dissipative, t + eps).P_u - exact_sample(dissipative, t - eps).P_u) / (2 * eps);
    const double dD = (exact_sample(dissipative, t + eps).Delta - exact_sample(dissipative, t - eps).Delta) / (2 * eps);
    st.check("dP_u/dt = -Lambda at t=" + fmt17(t), dP, -s.Lambda, 1e-6);
    st.check("dDelta/dt closed form at t=" + fmt17(t), dD, s.dDelta, 1e-6);
  }

  if (st.failures == 0) {
    out << "all-oracle-checks-passed\n";
  } else {
    out << "oracle-checks-failed=" << st.failures << '\n';
  }
  return st.failures;
}

}  // namespace henondim
