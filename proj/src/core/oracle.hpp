#pragma once

// Exactly solvable linear shift models: the full shift on d symbols with a
// locally constant unstable log-multiplier l_i per symbol and a constant
// jacobian modulus e^{log_a}. Pressure is log sum_i e^{-t l_i} at every
// truncation order, so these models serve as closed-form references for the
// whole periodic-orbit pipeline.

#include <cstdint>
#include <vector>

#include "dimension.hpp"
#include "orbits.hpp"
#include "pressure.hpp"

namespace henondim {

struct LinearModel {
  std::vector<double> branch_logs;
  double log_a = 0.0;

  // Throws Error(config) unless d >= 2, every l_i > 0 and log_a <= 0.
  void validate() const;
  int degree() const { return static_cast<int>(branch_logs.size()); }

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

std::uint64_t fingerprint(const LinearModel& model);

PressureSample exact_sample(const LinearModel& model, double t);
PressureEvaluator exact_evaluator(const LinearModel& model);

// Closed-form report: Bowen roots by bisection to rounding, the maximizer by
// golden-section search on Delta with a derivative polish.
DimensionReport exact_report(const LinearModel& model, const DiagnosticsOptions& opts = {});

// Guard on the total number of words sum_n d^n.
inline constexpr std::uint64_t kSyntheticWordBudget = std::uint64_t{1} << 22;

// All primitive cycles up to n_max with log_mult_u = sum of branch logs along
// the word; points are zeros and the library is flagged synthetic.
OrbitLibrary synthetic_library(const LinearModel& model, int n_max);

}  // namespace henondim
