#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "orbits.hpp"

namespace henondim {

// n_used value for samples that are exact (closed form, no truncation).
inline constexpr int kExactOrder = std::numeric_limits<int>::max();

struct PressureSample {
  double t = 0.0;
  double P_u = 0.0;
  double P_s = 0.0;
  double Lambda = 0.0;      // positive Lyapunov exponent of nu_t
  double lambda_neg = 0.0;  // -Lambda + log|a|
  double h = 0.0;           // entropy of nu_t
  double Delta = 0.0;       // dimension of nu_t
  double dDelta = 0.0;
  int n_used = 0;
  double err_est = 0.0;
  // Diagnostics, not part of the CSV contract.
  double dLambda = 0.0;  // derivative of Lambda in t at the estimator order
  double P_avg = 0.0;    // (1/n) log Z_n cross-check estimator
};

// Fills P_s, lambda_neg, h, Delta and dDelta from (t, P_u, Lambda, dLambda).
void complete_sample(PressureSample& s, double log_a);

// Dimension of nu_t in Young's form h/Lambda + h/(Lambda - log|a|).
double young_dimension(double h, double Lambda, double log_a);
// 2t + P/Lambda + (P + t log|a|)/(Lambda - log|a|).
double pressure_dimension(double t, double P_u, double Lambda, double log_a);
double dimension_derivative(double t, double P_u, double Lambda, double dLambda, double log_a);

struct PartitionSums {
  double log_Z = 0.0;     // log sum over Fix(g^n) of |lambda^u|^{-t}
  double mean = 0.0;      // Gibbs-weighted mean of (1/n) log|lambda^u|
  double variance = 0.0;  // Gibbs-weighted variance of (1/n) log|lambda^u|
};

// One fixed-point class of g^n: `count` points sharing log|lambda^u| = `log_mult`.
struct SpectrumEntry {
  double log_mult;
  double count;
};

// Ordered fixed-point spectrum of g^n built from the primitive orbits of all
// periods m | n (repetitions carry (n/m) times the primitive log-multiplier).
std::vector<SpectrumEntry> fixed_point_spectrum(const OrbitLibrary& lib, int n);

PartitionSums partition_sums(std::span<const SpectrumEntry> spectrum, int n, double t);
PartitionSums partition_sums(const OrbitLibrary& lib, int n, double t);

using PressureEvaluator = std::function<PressureSample(double)>;

// Periodic-orbit estimator over a fixed library: P_u from the ratio
// log Z_n - log Z_{n-1}, Lambda from the Gibbs mean at n = n_max.
class PressureModel {
 public:
  PressureModel(const OrbitLibrary& lib, int n_max);

  PressureSample sample(double t) const;
  PartitionSums sums(int n, double t) const;
  int n_max() const { return n_max_; }
  int degree() const { return degree_; }
  double log_jac_mod() const { return log_a_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  PressureEvaluator evaluator() const;

 private:
  int n_max_;
  int degree_;
  double log_a_;
  std::uint64_t fingerprint_;
  std::vector<std::vector<SpectrumEntry>> spectra_;  // periods n_max-2 .. n_max
};

PressureSample sample_at(const OrbitLibrary& lib, double t, int n_max);

struct PressureCurve {
  std::vector<double> grid;
  std::vector<PressureSample> samples;
  std::uint64_t fingerprint = 0;
  int n_max = 0;
  bool P_strictly_decreasing = false;
  bool Lambda_nonincreasing = false;  // within 2 err_est slack
};

// t values min + k*step up to max (inclusive within 1e-9 step).
std::vector<double> make_grid(double t_min, double t_max, double step);

PressureCurve build_curve(const PressureModel& model, const std::vector<double>& grid,
                          double t_cap = 4.0, int jobs = 1);

std::string curve_csv(const PressureCurve& curve);

}  // namespace henondim
