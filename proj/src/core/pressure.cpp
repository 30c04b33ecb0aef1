#include "pressure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "text_format.hpp"

namespace henondim {

namespace {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double young_dimension(double h, double Lambda, double log_a) {
  return h / Lambda + h / (Lambda - log_a);
}

double pressure_dimension(double t, double P_u, double Lambda, double log_a) {
  return 2.0 * t + P_u / Lambda + (P_u + t * log_a) / (Lambda - log_a);
}

double dimension_derivative(double t, double P_u, double Lambda, double dLambda, double log_a) {
  const double gap = Lambda - log_a;
  const double bracket = P_u * gap * gap + (P_u + t * log_a) * Lambda * Lambda;
  return -dLambda * bracket / (Lambda * Lambda * gap * gap);
}

void complete_sample(PressureSample& s, double log_a) {
  s.P_s = s.P_u + s.t * log_a;
  s.lambda_neg = -s.Lambda + log_a;
  s.h = s.P_u + s.t * s.Lambda;
  s.Delta = pressure_dimension(s.t, s.P_u, s.Lambda, log_a);
  s.dDelta = dimension_derivative(s.t, s.P_u, s.Lambda, s.dLambda, log_a);
}

std::vector<SpectrumEntry> fixed_point_spectrum(const OrbitLibrary& lib, int n) {
  lib.require_complete(n);
  std::vector<SpectrumEntry> out;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    const double reps = static_cast<double>(n / m);
    for (const auto& o : lib.orbits.at(m)) out.push_back({reps * o.log_mult_u, static_cast<double>(m)});
  }
  return out;
}

PartitionSums partition_sums(std::span<const SpectrumEntry> spectrum, int n, double t) {
  PartitionSums r;
  if (spectrum.empty()) return r;
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& e : spectrum) shift = std::max(shift, std::log(e.count) - t * e.log_mult);

  const double inv_n = 1.0 / static_cast<double>(n);
  CompensatedSum z, first;
  for (const auto& e : spectrum) {
    const double w = std::exp(std::log(e.count) - t * e.log_mult - shift);
    z.add(w);
    first.add(w * e.log_mult * inv_n);
  }
  const double Z = z.value();
  r.log_Z = shift + std::log(Z);
  r.mean = first.value() / Z;
  CompensatedSum second;
  for (const auto& e : spectrum) {
    const double w = std::exp(std::log(e.count) - t * e.log_mult - shift);
    const double dx = e.log_mult * inv_n - r.mean;
    second.add(w * dx * dx);
  }
  r.variance = second.value() / Z;
  return r;
}

PartitionSums partition_sums(const OrbitLibrary& lib, int n, double t) {
  const auto spectrum = fixed_point_spectrum(lib, n);
  return partition_sums(spectrum, n, t);
}

PressureModel::PressureModel(const OrbitLibrary& lib, int n_max)
    : n_max_(n_max), degree_(lib.degree), log_a_(lib.log_jac_mod()), fingerprint_(lib.fingerprint) {
  if (n_max < 3) throw Error(ErrorTag::invalid_argument, "pressure estimates need n_max >= 3");
  for (int n = n_max - 2; n <= n_max; ++n) spectra_.push_back(fixed_point_spectrum(lib, n));
}

PartitionSums PressureModel::sums(int n, double t) const {
  if (n < n_max_ - 2 || n > n_max_) throw Error(ErrorTag::invalid_argument, "period outside model window");
  return partition_sums(spectra_[static_cast<std::size_t>(n - (n_max_ - 2))], n, t);
}

PressureSample PressureModel::sample(double t) const {
  const auto s2 = sums(n_max_ - 2, t);
  const auto s1 = sums(n_max_ - 1, t);
  const auto s0 = sums(n_max_, t);

  PressureSample s;
  s.t = t;
  s.P_u = s0.log_Z - s1.log_Z;
  s.err_est = std::abs(s.P_u - (s1.log_Z - s2.log_Z));
  s.P_avg = s0.log_Z / static_cast<double>(n_max_);
  s.Lambda = s0.mean;
  s.dLambda = -static_cast<double>(n_max_) * s0.variance;
  s.n_used = n_max_;
  if (!(s.Lambda > 0.0)) {
    throw Error(ErrorTag::degenerate_lambda, "Lambda(" + fmt17(t) + ") = " + fmt17(s.Lambda) + " <= 0");
  }
  complete_sample(s, log_a_);
  return s;
}

PressureEvaluator PressureModel::evaluator() const {
  return [this](double t) { return sample(t); };
}

PressureSample sample_at(const OrbitLibrary& lib, double t, int n_max) {
  return PressureModel(lib, n_max).sample(t);
}

std::vector<double> make_grid(double t_min, double t_max, double step) {
  if (!(step > 0.0)) throw Error(ErrorTag::invalid_argument, "grid step must be positive");
  if (!(t_max >= t_min)) throw Error(ErrorTag::invalid_argument, "grid max below grid min");
  const auto count = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = t_min + static_cast<double>(k) * step;
  return grid;
}

PressureCurve build_curve(const PressureModel& model, const std::vector<double>& grid, double t_cap,
                          int jobs) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < 0.0 || grid[k] > t_cap + 1e-12 || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw Error(ErrorTag::invalid_argument, "grid must be ascending within [0, t_cap]");
    }
  }
  PressureCurve curve;
  curve.grid = grid;
  curve.fingerprint = model.fingerprint();
  curve.n_max = model.n_max();
  curve.samples.resize(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t k) { curve.samples[k] = model.sample(grid[k]); });

  curve.P_strictly_decreasing = true;
  curve.Lambda_nonincreasing = true;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const auto& a = curve.samples[k - 1];
    const auto& b = curve.samples[k];
    if (!(b.P_u < a.P_u)) curve.P_strictly_decreasing = false;
    if (b.Lambda > a.Lambda + 2.0 * std::max(a.err_est, b.err_est)) curve.Lambda_nonincreasing = false;
  }
  return curve;
}

std::string curve_csv(const PressureCurve& curve) {
  std::ostringstream out;
  out << "t,P_u,P_s,Lambda,h,Delta,dDelta,n_used,err_est\n";
  for (const auto& s : curve.samples) {
    out << fmt17(s.t) << ',' << fmt17(s.P_u) << ',' << fmt17(s.P_s) << ',' << fmt17(s.Lambda) << ','
        << fmt17(s.h) << ',' << fmt17(s.Delta) << ',' << fmt17(s.dDelta) << ','
        << (s.n_used == kExactOrder ? std::string("inf") : std::to_string(s.n_used)) << ','
        << fmt17(s.err_est) << '\n';
  }
  return out.str();
}

}  // namespace henondim
