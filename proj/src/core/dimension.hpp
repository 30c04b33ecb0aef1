#pragma once

#include <span>
#include <string>
#include <vector>

#include "pressure.hpp"

namespace henondim {

enum class Side { unstable, stable };

enum class Verdict { full_dimension_volume_preserving, full_dimension_affine, no_full_dimension };
enum class Connectivity { connected_candidate, cantor_candidate };

std::string_view verdict_name(Verdict v);
std::string_view connectivity_name(Connectivity c);

struct FullDimDiagnostics {
  bool volume_preserving = false;
  double affinity_deviation = 0.0;   // max |P_u(t) - chord(t)| on [0, t_u]
  double multiplier_rigidity = 0.0;  // max |(1/n) log|lambda^u(p)| - Lambda(0)|
  double lambda0_vs_logd = 0.0;      // Lambda(0) - log d
  Verdict verdict = Verdict::no_full_dimension;
  Connectivity connectivity_hint = Connectivity::cantor_candidate;
};

struct DiagnosticsOptions {
  double affine_tol = 1e-6;
  double rigidity_tol = 1e-6;
  double connectivity_tol = 1e-6;
  int affinity_points = 201;
};

struct Maximizer {
  double t_star = 0.0;
  double Delta_star = 0.0;
};

struct MaximizeResult {
  std::vector<Maximizer> maximizers;
  double formula_residual = 0.0;
};

struct DimensionReport {
  double t_u = 0.0;
  double t_s = 0.0;
  double dim_J = 0.0;
  std::vector<Maximizer> maximizers;
  double d_g = 0.0;
  double gap = 0.0;
  double formula_residual = 0.0;
  FullDimDiagnostics diagnostics;
  int n_max = 0;         // kExactOrder for closed-form reports
  double err_est = 0.0;  // largest pressure error estimate among t_s, t_u, t_star
};

struct DimensionOptions {
  double t_cap = 4.0;
  int scan_points = 2000;
  double tie_tol = 1e-9;
  DiagnosticsOptions diagnostics;
};

// Root of P^u (or P^s) on [0, t_cap] by bisection with secant acceleration.
// Stops once |P| <= tol or the bracket collapses to rounding. Throws
// Error(no_bracket) when P(t_cap) > 0.
double solve_bowen(const PressureEvaluator& eval, Side side, double tol, double t_cap = 4.0);

// Local maxima of Delta on [t_s, t_u] from sign changes of dDelta over a
// uniform scan, each polished by bisection to `tol` in t. Returns every
// maximum within `tie_tol` of the best. When t_u - t_s <= tol the single
// point t_u is returned. Throws Error(no_interior_max) when dDelta never
// changes sign from + to -.
MaximizeResult maximize_delta(const PressureEvaluator& eval, double t_s, double t_u, double tol,
                              double log_a, int scan_points = 2000, double tie_tol = 1e-9);

// Corollary form of d(g) at a critical point of Delta.
double corollary_dimension(double t, double P_u, double Lambda, double log_a);

// normalized_log_mults: (1/n) log|lambda^u(p)| for every orbit considered.
FullDimDiagnostics full_dimension_diagnostics(const PressureEvaluator& eval, double t_u,
                                              double jac_mod, int degree,
                                              std::span<const double> normalized_log_mults,
                                              const DiagnosticsOptions& opts = {});

// Orchestrates both Bowen roots, the maximizer search and the diagnostics.
DimensionReport assemble_report(const PressureEvaluator& eval, double jac_mod, int degree,
                                std::span<const double> normalized_log_mults, double tol,
                                const DimensionOptions& opts = {});

DimensionReport dimension_report(const OrbitLibrary& lib, int n_max, double tol,
                                 const DimensionOptions& opts = {});

std::vector<double> normalized_log_multipliers(const OrbitLibrary& lib);

std::string report_text(const DimensionReport& r);
std::string report_csv_header();
std::string report_csv_row(const DimensionReport& r);

}  // namespace henondim
