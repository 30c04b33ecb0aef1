#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "text_format.hpp"

namespace henondim {

namespace {

double bisect_root(const auto& f) {
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e6) throw Error(ErrorTag::no_bracket, "closed-form pressure never crosses zero");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

double golden_max(const auto& f, double a, double b, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void LinearModel::validate() const {
  if (branch_logs.size() < 2) throw Error(ErrorTag::config, "linear model needs at least two branches");
  for (double l : branch_logs) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorTag::config, "branch log-multipliers must be positive and finite");
    }
  }
  if (!(log_a <= 0.0) || !std::isfinite(log_a)) {
    throw Error(ErrorTag::config, "log_a must be finite and <= 0");
  }
}

std::uint64_t fingerprint(const LinearModel& model) {
  std::string text = "linear";
  for (double l : model.branch_logs) text += ";" + fmt17(l);
  text += ";log_a=" + fmt17(model.log_a);
  return fnv1a(text);
}

PressureSample exact_sample(const LinearModel& model, double t) {
  double shift = -std::numeric_limits<double>::infinity();
  for (double l : model.branch_logs) shift = std::max(shift, -t * l);
  double z = 0.0, first = 0.0;
  for (double l : model.branch_logs) {
    const double w = std::exp(-t * l - shift);
    z += w;
    first += w * l;
  }
  const double mean = first / z;
  double var = 0.0;
  for (double l : model.branch_logs) var += std::exp(-t * l - shift) * (l - mean) * (l - mean);
  var /= z;

  PressureSample s;
  s.t = t;
  s.P_u = shift + std::log(z);
  s.P_avg = s.P_u;
  s.Lambda = mean;
  s.dLambda = -var;
  s.n_used = kExactOrder;
  s.err_est = 0.0;
  complete_sample(s, model.log_a);
  return s;
}

PressureEvaluator exact_evaluator(const LinearModel& model) {
  return [model](double t) { return exact_sample(model, t); };
}

DimensionReport exact_report(const LinearModel& model, const DiagnosticsOptions& opts) {
  model.validate();
  const double log_a = model.log_a;
  auto P = [&](double t) { return exact_sample(model, t).P_u; };
  auto Delta = [&](double t) { return exact_sample(model, t).Delta; };

  DimensionReport r;
  r.t_u = bisect_root(P);
  r.t_s = bisect_root([&](double t) { return P(t) + t * log_a; });
  r.dim_J = r.t_u + r.t_s;

  const auto [lo, hi] = std::minmax_element(model.branch_logs.begin(), model.branch_logs.end());
  const bool affine = *hi - *lo == 0.0;
  double t_star = r.t_u;
  if (!affine && r.t_u - r.t_s > 1e-14) {
    t_star = golden_max(Delta, r.t_s, r.t_u, 1e-9);
    // Polish on the sign of the closed-form derivative when it brackets.
    double a = std::max(r.t_s, t_star - 1e-7), b = std::min(r.t_u, t_star + 1e-7);
    if (exact_sample(model, a).dDelta > 0.0 && exact_sample(model, b).dDelta <= 0.0) {
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        (exact_sample(model, mid).dDelta > 0.0 ? a : b) = mid;
      }
      t_star = 0.5 * (a + b);
    }
  }
  const auto s_star = exact_sample(model, t_star);
  r.maximizers.push_back({t_star, s_star.Delta});
  r.d_g = s_star.Delta;
  r.gap = r.dim_J - r.d_g;
  r.formula_residual = std::abs(s_star.Delta - corollary_dimension(t_star, s_star.P_u, s_star.Lambda, log_a));
  r.n_max = kExactOrder;
  r.err_est = 0.0;
  r.diagnostics = full_dimension_diagnostics(exact_evaluator(model), r.t_u, std::exp(log_a), model.degree(),
                                             model.branch_logs, opts);
  return r;
}

OrbitLibrary synthetic_library(const LinearModel& model, int n_max) {
  model.validate();
  if (n_max < 1) throw Error(ErrorTag::invalid_argument, "n_max must be at least 1");
  const auto d = static_cast<std::uint64_t>(model.degree());
  std::uint64_t words = 0, power = 1;
  for (int n = 1; n <= n_max; ++n) {
    power *= d;
    words += power;
    if (words > kSyntheticWordBudget) {
      throw Error(ErrorTag::budget_exceeded,
                  "synthetic library up to period " + std::to_string(n_max) + " exceeds 2^22 words");
    }
  }

  OrbitLibrary lib;
  lib.fingerprint = fingerprint(model);
  lib.degree = model.degree();
  lib.jac_mod = std::exp(model.log_a);
  lib.n_max = n_max;
  lib.synthetic = true;
  for (int n = 1; n <= n_max; ++n) {
    auto& store = lib.orbits[n];
    for (const auto& word : canonical_words(model.degree(), n)) {
      if (!word.is_primitive()) continue;
      PeriodicOrbit o;
      o.period = n;
      o.itinerary = word;
      o.points.assign(static_cast<std::size_t>(n), Complex2{});
      // Sum in a fixed symbol order so equal words give bit-equal sums.
      for (auto s : word.word()) o.log_mult_u += model.branch_logs[s];
      store.push_back(std::move(o));
    }
    PeriodStatus st;
    st.complete = true;
    st.fixed_points = lib.expected_count(n);
    lib.status[n] = st;
  }
  return lib;
}

}  // namespace henondim
