#include "dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "text_format.hpp"

namespace henondim {

namespace {

double side_value(const PressureSample& s, Side side) { return side == Side::unstable ? s.P_u : s.P_s; }

// Bisection on the sign of dDelta inside [a, b] where dDelta(a) > 0 >= dDelta(b).
double polish_critical_point(const PressureEvaluator& eval, double a, double b, double tol) {
  for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
    const double mid = 0.5 * (a + b);
    if (eval(mid).dDelta > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::full_dimension_volume_preserving: return "full-dimension-volume-preserving";
    case Verdict::full_dimension_affine: return "full-dimension-affine";
    case Verdict::no_full_dimension: return "no-full-dimension";
  }
  return "unknown";
}

std::string_view connectivity_name(Connectivity c) {
  return c == Connectivity::connected_candidate ? "connected-candidate" : "cantor-candidate";
}

double solve_bowen(const PressureEvaluator& eval, Side side, double tol, double t_cap) {
  auto f = [&](double t) { return side_value(eval(t), side); };
  double lo = 0.0, flo = f(lo);
  double hi = t_cap, fhi = f(hi);
  if (!(flo > 0.0)) {
    throw Error(ErrorTag::no_bracket, "pressure at t = 0 is " + fmt17(flo) + ", expected log d > 0");
  }
  if (fhi > 0.0) {
    throw Error(ErrorTag::no_bracket,
                "pressure is still positive (" + fmt17(fhi) + ") at t_cap = " + fmt17(t_cap));
  }
  if (fhi == 0.0) return hi;

  bool bisect_next = false;
  for (int iter = 0; iter < 200; ++iter) {
    const double width = hi - lo;
    double x = lo - flo * width / (fhi - flo);
    if (bisect_next || !(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if (fx > 0.0) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;
    bisect_next = hi - lo > 0.5 * width;
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

double corollary_dimension(double t, double P_u, double Lambda, double log_a) {
  return 2.0 * t + P_u * log_a / (Lambda * Lambda);
}

MaximizeResult maximize_delta(const PressureEvaluator& eval, double t_s, double t_u, double tol,
                              double log_a, int scan_points, double tie_tol) {
  MaximizeResult result;
  auto residual_at = [&](double t, double Delta) {
    const auto s = eval(t);
    return std::abs(Delta - corollary_dimension(t, s.P_u, s.Lambda, log_a));
  };

  if (t_u - t_s <= tol) {
    const auto s = eval(t_u);
    result.maximizers.push_back({t_u, s.Delta});
    result.formula_residual = residual_at(t_u, s.Delta);
    return result;
  }

  const int cells = std::max(2, scan_points);
  std::vector<double> ts(cells + 1), dD(cells + 1);
  for (int k = 0; k <= cells; ++k) {
    ts[k] = k == cells ? t_u : t_s + (t_u - t_s) * static_cast<double>(k) / cells;
    dD[k] = eval(ts[k]).dDelta;
  }
  std::vector<Maximizer> found;
  for (int k = 0; k < cells; ++k) {
    if (dD[k] > 0.0 && dD[k + 1] <= 0.0) {
      const double t = polish_critical_point(eval, ts[k], ts[k + 1], tol);
      found.push_back({t, eval(t).Delta});
    }
  }
  if (found.empty()) {
    throw Error(ErrorTag::no_interior_max, "dDelta has no sign change from + to - on [t_s, t_u]");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& m : found) best = std::max(best, m.Delta_star);
  for (const auto& m : found) {
    if (m.Delta_star >= best - tie_tol) {
      result.maximizers.push_back(m);
      result.formula_residual = std::max(result.formula_residual, residual_at(m.t_star, m.Delta_star));
    }
  }
  return result;
}

FullDimDiagnostics full_dimension_diagnostics(const PressureEvaluator& eval, double t_u,
                                              double jac_mod, int degree,
                                              std::span<const double> normalized_log_mults,
                                              const DiagnosticsOptions& opts) {
  FullDimDiagnostics d;
  d.volume_preserving = std::abs(jac_mod - 1.0) < 1e-12;

  const auto at0 = eval(0.0);
  const double P0 = at0.P_u;
  const double P1 = eval(t_u).P_u;
  const int points = std::max(2, opts.affinity_points);
  for (int k = 0; k < points; ++k) {
    const double t = t_u * static_cast<double>(k) / (points - 1);
    const double chord = P0 + (P1 - P0) * (t_u > 0.0 ? t / t_u : 0.0);
    d.affinity_deviation = std::max(d.affinity_deviation, std::abs(eval(t).P_u - chord));
  }
  for (double x : normalized_log_mults) {
    d.multiplier_rigidity = std::max(d.multiplier_rigidity, std::abs(x - at0.Lambda));
  }
  d.lambda0_vs_logd = at0.Lambda - std::log(static_cast<double>(degree));

  if (d.affinity_deviation <= opts.affine_tol && d.multiplier_rigidity <= opts.rigidity_tol) {
    d.verdict = Verdict::full_dimension_affine;
  } else if (d.volume_preserving) {
    d.verdict = Verdict::full_dimension_volume_preserving;
  } else {
    d.verdict = Verdict::no_full_dimension;
  }
  d.connectivity_hint = std::abs(d.lambda0_vs_logd) <= opts.connectivity_tol
                            ? Connectivity::connected_candidate
                            : Connectivity::cantor_candidate;
  return d;
}

DimensionReport assemble_report(const PressureEvaluator& eval, double jac_mod, int degree,
                                std::span<const double> normalized_log_mults, double tol,
                                const DimensionOptions& opts) {
  const double log_a = std::log(jac_mod);
  DimensionReport r;
  r.t_u = solve_bowen(eval, Side::unstable, tol, opts.t_cap);
  r.t_s = solve_bowen(eval, Side::stable, tol, opts.t_cap);
  r.dim_J = r.t_u + r.t_s;
  r.diagnostics =
      full_dimension_diagnostics(eval, r.t_u, jac_mod, degree, normalized_log_mults, opts.diagnostics);

  MaximizeResult found;
  try {
    found = maximize_delta(eval, r.t_s, r.t_u, tol, log_a, opts.scan_points, opts.tie_tol);
  } catch (const Error& e) {
    if (e.tag() != ErrorTag::no_interior_max || r.diagnostics.verdict == Verdict::no_full_dimension) throw;
    // Full-dimension case: Delta has no interior critical point and nu_{t_u}
    // attains the supremum.
    const auto s = eval(r.t_u);
    found.maximizers.push_back({r.t_u, s.Delta});
    found.formula_residual = std::abs(s.Delta - corollary_dimension(r.t_u, s.P_u, s.Lambda, log_a));
  }
  r.maximizers = std::move(found.maximizers);
  r.formula_residual = found.formula_residual;
  r.d_g = -std::numeric_limits<double>::infinity();
  for (const auto& m : r.maximizers) r.d_g = std::max(r.d_g, m.Delta_star);
  r.gap = r.dim_J - r.d_g;

  const auto s_u = eval(r.t_u);
  r.n_max = s_u.n_used;
  r.err_est = std::max(s_u.err_est, eval(r.t_s).err_est);
  for (const auto& m : r.maximizers) r.err_est = std::max(r.err_est, eval(m.t_star).err_est);
  return r;
}

std::vector<double> normalized_log_multipliers(const OrbitLibrary& lib) {
  std::vector<double> out;
  for (const auto& [n, orbits] : lib.orbits) {
    for (const auto& o : orbits) out.push_back(o.log_mult_u / static_cast<double>(n));
  }
  return out;
}

DimensionReport dimension_report(const OrbitLibrary& lib, int n_max, double tol,
                                 const DimensionOptions& opts) {
  const PressureModel model(lib, n_max);
  const auto logs = normalized_log_multipliers(lib);
  return assemble_report(model.evaluator(), lib.jac_mod, lib.degree, logs, tol, opts);
}

std::string report_text(const DimensionReport& r) {
  std::ostringstream out;
  out << "t_u=" << fmt17(r.t_u) << '\n';
  out << "t_s=" << fmt17(r.t_s) << '\n';
  out << "dim_J=" << fmt17(r.dim_J) << '\n';
  out << "d_g=" << fmt17(r.d_g) << '\n';
  out << "gap=" << fmt17(r.gap) << '\n';
  out << "formula_residual=" << fmt17(r.formula_residual) << '\n';
  out << "maximizers=" << r.maximizers.size() << '\n';
  for (std::size_t k = 0; k < r.maximizers.size(); ++k) {
    out << "t_star_" << k << '=' << fmt17(r.maximizers[k].t_star) << '\n';
    out << "Delta_star_" << k << '=' << fmt17(r.maximizers[k].Delta_star) << '\n';
  }
  out << "n_max=" << (r.n_max == kExactOrder ? std::string("inf") : std::to_string(r.n_max)) << '\n';
  out << "err_est=" << fmt17(r.err_est) << '\n';
  const auto& d = r.diagnostics;
  out << "volume_preserving=" << (d.volume_preserving ? 1 : 0) << '\n';
  out << "affinity_deviation=" << fmt17(d.affinity_deviation) << '\n';
  out << "multiplier_rigidity=" << fmt17(d.multiplier_rigidity) << '\n';
  out << "lambda0_vs_logd=" << fmt17(d.lambda0_vs_logd) << '\n';
  out << "verdict=" << verdict_name(d.verdict) << '\n';
  out << "connectivity_hint=" << connectivity_name(d.connectivity_hint) << '\n';
  return out.str();
}

std::string report_csv_header() { return "t_u,t_s,dim_J,d_g,gap,formula_residual,n_max,verdict"; }

std::string report_csv_row(const DimensionReport& r) {
  return fmt17(r.t_u) + ',' + fmt17(r.t_s) + ',' + fmt17(r.dim_J) + ',' + fmt17(r.d_g) + ',' +
         fmt17(r.gap) + ',' + fmt17(r.formula_residual) + ',' +
         (r.n_max == kExactOrder ? std::string("inf") : std::to_string(r.n_max)) + ',' +
         std::string(verdict_name(r.diagnostics.verdict));
}

}  // namespace henondim
