#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

namespace henondim {

struct SweepRecord {
  cplx param{};
  double t_u = 0.0, t_s = 0.0, dim_J = 0.0, d_g = 0.0, gap = 0.0;
  int n_max = 0;
  double err_est = 0.0;
  std::optional<ErrorTag> failure;  // empty: ok
  std::string message;

  bool ok() const { return !failure.has_value(); }
  std::string status() const;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  // max |d_g(k+1) - d_g(k)| over adjacent ok samples of a segment family.
  std::optional<double> continuity;
};

// Sample points: count equally spaced points from `from` to `to` inclusive
// (a single point sits at `from`), or count points center + r e^{2 pi i k / count}.
std::vector<cplx> family_params(const FamilySpec& family);

// The template with its slot set to `param`.
System instantiate(const System& tmpl, const ParamSlot& slot, cplx param);

// Throws Error(config) when the slot does not exist in the template, when
// the automatic guard does not apply to it, or when any sample violates the
// guard.
void check_family(const System& tmpl, const FamilySpec& family);

struct SweepOptions {
  int n_max = 10;
  double tol = 1e-9;
  DimensionOptions dimension;
  int jobs = 0;
};

SweepResult sweep(const System& tmpl, const FamilySpec& family, const SweepOptions& opts);
std::string sweep_csv(const SweepResult& result);

struct SubmeanResult {
  double center_value = 0.0;
  double circle_mean = 0.0;
  double margin = 0.0;      // circle_mean - center_value
  double err_budget = 0.0;  // 2 max err_est over the center and all samples
  bool violation = false;   // margin < -err_budget
  int samples = 0;
  int n_max = 0;
};

// Sub-mean-value check of d_g on a circle family with at least 8 samples.
// A failed sample aborts the check with that sample's error tag.
SubmeanResult submean_check(const System& tmpl, const FamilySpec& family, const SweepOptions& opts);
std::string submean_text(const SubmeanResult& r);

}  // namespace henondim
