#include "sweep.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "pipeline.hpp"
#include "text_format.hpp"

namespace henondim {

std::string SweepRecord::status() const {
  return failure ? std::string(tag_name(*failure)) : std::string("ok");
}

std::vector<cplx> family_params(const FamilySpec& family) {
  std::vector<cplx> out;
  const int m = family.count;
  out.reserve(static_cast<std::size_t>(std::max(m, 0)));
  for (int k = 0; k < m; ++k) {
    if (family.shape == FamilySpec::Shape::segment) {
      if (m == 1) {
        out.push_back(family.from);
      } else if (k == m - 1) {
        out.push_back(family.to);
      } else {
        const double s = static_cast<double>(k) / (m - 1);
        out.push_back(family.from + s * (family.to - family.from));
      }
    } else {
      const double theta = 2.0 * std::numbers::pi * k / m;
      out.push_back(family.center + family.radius * cplx(std::cos(theta), std::sin(theta)));
    }
  }
  return out;
}

System instantiate(const System& tmpl, const ParamSlot& slot, cplx param) {
  if (const auto* model = std::get_if<LinearModel>(&tmpl)) {
    if (slot.kind != ParamSlot::Kind::branch_log) {
      throw Error(ErrorTag::config, "a linear-model family must vary a branch log-multiplier");
    }
    if (slot.index < 0 || slot.index >= model->degree()) {
      throw Error(ErrorTag::config, "branch " + std::to_string(slot.index) + " does not exist");
    }
    LinearModel out = *model;
    out.branch_logs[static_cast<std::size_t>(slot.index)] = param.real();
    out.validate();
    return out;
  }
  const auto& g = std::get<HenonMap>(tmpl);
  if (slot.kind == ParamSlot::Kind::branch_log) {
    throw Error(ErrorTag::config, "a Hénon-map family must vary a coefficient or a jacobian parameter");
  }
  if (slot.factor < 0 || slot.factor >= static_cast<int>(g.factors().size())) {
    throw Error(ErrorTag::config, "factor " + std::to_string(slot.factor) + " does not exist");
  }
  auto factors = g.factors();
  auto& f = factors[static_cast<std::size_t>(slot.factor)];
  if (slot.kind == ParamSlot::Kind::jacobian) {
    if (param == cplx{}) throw Error(ErrorTag::config, "jacobian parameter a must be nonzero");
    f = f.with_a(param);
  } else {
    auto coeffs = f.coeffs();
    if (slot.index < 0 || slot.index >= static_cast<int>(coeffs.size())) {
      throw Error(ErrorTag::config, "coefficient " + std::to_string(slot.index) + " does not exist");
    }
    coeffs[static_cast<std::size_t>(slot.index)] = param;
    f = HenonFactor(std::move(coeffs), f.a());
  }
  return HenonMap(std::move(factors));
}

namespace {

// Default horseshoe guard for z^2 + c normal forms: |c| > 2 (1 + |a|)^2.
void check_quadratic_guard(const HenonMap& g, cplx param) {
  const auto& f = g.factors().front();
  const double c = std::abs(f.coeffs()[0]);
  const double bound = 2.0 * (1.0 + std::abs(f.a())) * (1.0 + std::abs(f.a()));
  if (!(c > bound)) {
    throw Error(ErrorTag::config, "sample " + fmt17(param.real()) + (param.imag() < 0 ? "" : "+") +
                                      fmt17(param.imag()) + "i violates the horseshoe guard |c| = " +
                                      fmt17(c) + " <= 2(1+|a|)^2 = " + fmt17(bound));
  }
}

bool quadratic_normal_form(const HenonMap& g) {
  if (g.factors().size() != 1) return false;
  const auto& c = g.factors().front().coeffs();
  return c.size() == 3 && c[2] == cplx(1.0) && c[1] == cplx{};
}

}  // namespace

void check_family(const System& tmpl, const FamilySpec& family) {
  if (family.count < 1) throw Error(ErrorTag::config, "family needs at least one sample");
  const auto params = family_params(family);
  for (const auto& p : params) {
    const auto inst = instantiate(tmpl, family.slot, p);
    if (family.guard == FamilySpec::Guard::none) continue;
    if (family.guard == FamilySpec::Guard::min_abs) {
      if (!(std::abs(p) >= family.guard_min_abs)) {
        throw Error(ErrorTag::config, "sample |param| = " + fmt17(std::abs(p)) + " is below the guard " +
                                          fmt17(family.guard_min_abs));
      }
      continue;
    }
    const auto* g = std::get_if<HenonMap>(&inst);
    if (g == nullptr) continue;
    if (!quadratic_normal_form(*g)) {
      throw Error(ErrorTag::config,
                  "the default horseshoe guard covers single-factor maps w^2 + c only; "
                  "set guard to 'none' or {min_abs: x}");
    }
    check_quadratic_guard(*g, p);
  }
}

namespace {

SweepRecord run_sample(const System& tmpl, const ParamSlot& slot, cplx param, const SweepOptions& opts) {
  SweepRecord rec;
  rec.param = param;
  rec.n_max = opts.n_max;
  try {
    const auto sys = instantiate(tmpl, slot, param);
    OrbitOptions orbit_opts;
    orbit_opts.jobs = 1;
    const auto lib = build_library(sys, opts.n_max, orbit_opts);
    const auto r = dimension_report(lib, opts.n_max, opts.tol, opts.dimension);
    rec.t_u = r.t_u;
    rec.t_s = r.t_s;
    rec.dim_J = r.dim_J;
    rec.d_g = r.d_g;
    rec.gap = r.gap;
    rec.err_est = r.err_est;
  } catch (const Error& e) {
    rec.failure = e.tag();
    rec.message = e.what();
  }
  return rec;
}

}  // namespace

SweepResult sweep(const System& tmpl, const FamilySpec& family, const SweepOptions& opts) {
  check_family(tmpl, family);
  const auto params = family_params(family);
  SweepResult result;
  result.records.resize(params.size());
  parallel_for(params.size(), opts.jobs, [&](std::size_t k) {
    result.records[k] = run_sample(tmpl, family.slot, params[k], opts);
  });
  if (family.shape == FamilySpec::Shape::segment) {
    double stat = 0.0;
    for (std::size_t k = 0; k + 1 < result.records.size(); ++k) {
      const auto& a = result.records[k];
      const auto& b = result.records[k + 1];
      if (a.ok() && b.ok()) stat = std::max(stat, std::abs(b.d_g - a.d_g));
    }
    result.continuity = stat;
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "param_re,param_im,t_u,t_s,dim_J,d_g,gap,n_max,status\n";
  for (const auto& r : result.records) {
    out += fmt17(r.param.real()) + ',' + fmt17(r.param.imag()) + ',';
    if (r.ok()) {
      out += fmt17(r.t_u) + ',' + fmt17(r.t_s) + ',' + fmt17(r.dim_J) + ',' + fmt17(r.d_g) + ',' +
             fmt17(r.gap) + ',';
    } else {
      out += "nan,nan,nan,nan,nan,";
    }
    out += std::to_string(r.n_max) + ',' + r.status() + '\n';
  }
  return out;
}

SubmeanResult submean_check(const System& tmpl, const FamilySpec& family, const SweepOptions& opts) {
  if (family.shape != FamilySpec::Shape::circle) {
    throw Error(ErrorTag::config, "submean needs a circle family");
  }
  if (family.count < 8) throw Error(ErrorTag::config, "submean needs at least 8 samples on the circle");

  FamilySpec center = family;
  center.radius = 0.0;
  center.count = 1;
  check_family(tmpl, center);
  const auto ring = sweep(tmpl, family, opts);
  const auto mid = run_sample(tmpl, family.slot, family.center, opts);

  SubmeanResult r;
  r.samples = family.count;
  r.n_max = opts.n_max;
  if (!mid.ok()) throw Error(*mid.failure, "center sample failed: " + mid.message);
  double sum = 0.0, worst = mid.err_est;
  for (const auto& rec : ring.records) {
    if (!rec.ok()) throw Error(*rec.failure, "circle sample failed: " + rec.message);
    sum += rec.d_g;
    worst = std::max(worst, rec.err_est);
  }
  r.center_value = mid.d_g;
  r.circle_mean = sum / static_cast<double>(ring.records.size());
  r.margin = r.circle_mean - r.center_value;
  r.err_budget = 2.0 * worst;
  r.violation = r.margin < -r.err_budget;
  return r;
}

std::string submean_text(const SubmeanResult& r) {
  std::ostringstream out;
  out << "center_value=" << fmt17(r.center_value) << '\n';
  out << "circle_mean=" << fmt17(r.circle_mean) << '\n';
  out << "margin=" << fmt17(r.margin) << '\n';
  out << "err_budget=" << fmt17(r.err_budget) << '\n';
  out << "samples=" << r.samples << '\n';
  out << "n_max=" << r.n_max << '\n';
  out << "status=" << (r.violation ? "VIOLATION" : "ok") << '\n';
  return out.str();
}

}  // namespace henondim
