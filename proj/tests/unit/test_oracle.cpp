#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dimension.hpp"
#include "oracle.hpp"

using namespace henondim;

namespace {

const double kLog2 = std::numbers::ln2;

// tests/oracles/linear_model_reference.py, 50-digit mpmath.
constexpr double kTu28 = 0.55146308974559554712;
constexpr double kTs28Quarter = 0.25563259255652518497;
constexpr double kDimJ28Quarter = 0.8070956823021207321;
constexpr double kTstar28Quarter = 0.45621439981099164095;
constexpr double kDg28Quarter = 0.80192726642898299715;
constexpr double kGap28Quarter = 0.0051684158731377349446;

}  // namespace

TEST_CASE("exact samples of the two-branch models") {
  const LinearModel sym{{2 * kLog2, 2 * kLog2}, 0.0};
  for (double t : {0.0, 0.7, 2.0}) {
    const auto s = exact_sample(sym, t);
    CHECK(s.P_u == doctest::Approx(kLog2 - 2 * t * kLog2).epsilon(1e-15));
    CHECK(s.h == doctest::Approx(kLog2).epsilon(1e-15));
    CHECK(s.Lambda == doctest::Approx(2 * kLog2).epsilon(1e-15));
    CHECK(s.dLambda == 0.0);
  }
  const LinearModel asym{{kLog2, 3 * kLog2}, 0.0};
  const auto s0 = exact_sample(asym, 0.0);
  CHECK(s0.Lambda == doctest::Approx(2 * kLog2).epsilon(1e-15));
  CHECK(s0.h == doctest::Approx(kLog2).epsilon(1e-15));
  const auto s1 = exact_sample(asym, 1.0);
  CHECK(s1.P_u == doctest::Approx(std::log(0.625)).epsilon(1e-15));
  CHECK(s1.Lambda == doctest::Approx(1.4 * kLog2).epsilon(1e-15));
}

TEST_CASE("exact samples satisfy the pressure identities") {
  const LinearModel model{{0.4, 1.1, 2.3}, -0.9};
  for (double t = 0.0; t <= 3.0; t += 0.25) {
    const auto s = exact_sample(model, t);
    CHECK(std::abs(s.P_s - s.P_u - t * model.log_a) <= 1e-15);
    CHECK(std::abs(s.h - (s.P_u + t * s.Lambda)) <= 1e-15);
    CHECK(s.dLambda < 0.0);
  }
}

TEST_CASE("closed-form derivatives against finite differences") {
  const LinearModel model{{kLog2, 3 * kLog2}, std::log(0.25)};
  const double eps = 1e-5;
  for (double t : {0.1, 0.3, 0.5, 0.8, 1.5}) {
    const auto s = exact_sample(model, t);
    const auto hi = exact_sample(model, t + eps), lo = exact_sample(model, t - eps);
    CHECK(std::abs((hi.P_u - lo.P_u) / (2 * eps) + s.Lambda) <= 1e-8);
    CHECK(std::abs((hi.Delta - lo.Delta) / (2 * eps) - s.dDelta) <= 1e-8);
    CHECK(std::abs((hi.Lambda - lo.Lambda) / (2 * eps) - s.dLambda) <= 1e-8);
  }
}

TEST_CASE("exact reports") {
  SUBCASE("symmetric, volume preserving") {
    const auto r = exact_report({{2 * kLog2, 2 * kLog2}, 0.0});
    CHECK(r.t_u == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.t_s == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.dim_J == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.d_g == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(r.gap) <= 1e-15);
    CHECK(r.diagnostics.verdict == Verdict::full_dimension_affine);
    CHECK(r.diagnostics.affinity_deviation <= 1e-15);
    CHECK(r.diagnostics.multiplier_rigidity <= 1e-15);
  }
  SUBCASE("(2, 8), volume preserving") {
    const auto r = exact_report({{kLog2, 3 * kLog2}, 0.0});
    CHECK(std::abs(r.t_u - kTu28) <= 1e-14);
    CHECK(std::abs(r.t_s - kTu28) <= 1e-14);
    // x = 2^{-t_u} solves x + x^3 = 1
    const double x = std::exp2(-r.t_u);
    CHECK(std::abs(x + x * x * x - 1.0) <= 1e-14);
    CHECK(std::abs(r.gap) <= 1e-12);
    CHECK(r.diagnostics.verdict == Verdict::full_dimension_volume_preserving);
  }
  SUBCASE("(2, 8), |a| = 1/4") {
    const auto r = exact_report({{kLog2, 3 * kLog2}, std::log(0.25)});
    CHECK(std::abs(r.t_u - kTu28) <= 1e-14);
    CHECK(std::abs(r.t_s - kTs28Quarter) <= 1e-14);
    CHECK(std::abs(r.dim_J - kDimJ28Quarter) <= 1e-14);
    REQUIRE(r.maximizers.size() == 1);
    CHECK(std::abs(r.maximizers[0].t_star - kTstar28Quarter) <= 1e-8);
    CHECK(std::abs(r.d_g - kDg28Quarter) <= 1e-13);
    CHECK(std::abs(r.gap - kGap28Quarter) <= 1e-13);
    CHECK(r.t_s < r.maximizers[0].t_star);
    CHECK(r.maximizers[0].t_star < r.t_u);
    CHECK(r.formula_residual <= 1e-8);
    CHECK(r.diagnostics.verdict == Verdict::no_full_dimension);
  }
}

TEST_CASE("Lambda monotonicity follows the branch spread") {
  const LinearModel equal{{1.3, 1.3, 1.3}, -0.5};
  const LinearModel spread{{1.0, 1.3, 1.9}, -0.5};
  double prev_equal = exact_sample(equal, 0.0).Lambda, prev_spread = exact_sample(spread, 0.0).Lambda;
  for (double t = 0.1; t <= 3.0; t += 0.1) {
    const double e = exact_sample(equal, t).Lambda, s = exact_sample(spread, t).Lambda;
    CHECK(std::abs(e - prev_equal) <= 1e-15);
    CHECK(s < prev_spread);
    prev_equal = e;
    prev_spread = s;
  }
  CHECK(std::abs(exact_report(equal).gap) <= 1e-12);
  CHECK(exact_report(spread).gap > 1e-6);
}

TEST_CASE("synthetic library structure") {
  const LinearModel model{{kLog2, 3 * kLog2}, std::log(0.25)};
  const auto lib = synthetic_library(model, 3);
  CHECK(lib.synthetic);
  CHECK(lib.fixed_point_count(1) == 2);
  CHECK(lib.fixed_point_count(2) == 4);
  CHECK(lib.fixed_point_count(3) == 8);
  CHECK(lib.jac_mod == doctest::Approx(0.25));
  for (const auto& o : lib.orbits.at(3)) {
    double expect = 0.0;
    for (auto s : o.itinerary.word()) expect += model.branch_logs[s];
    CHECK(o.log_mult_u == expect);
  }
}

TEST_CASE("synthetic library guards its word budget") {
  const LinearModel model{{1.0, 2.0}, 0.0};
  CHECK_NOTHROW(synthetic_library(model, 12));
  try {
    synthetic_library(model, 22);
    FAIL("expected budget-exceeded");
  } catch (const Error& e) {
    CHECK(e.tag() == ErrorTag::budget_exceeded);
  }
}

TEST_CASE("invalid models are rejected") {
  CHECK_THROWS(exact_report({{1.0}, 0.0}));
  CHECK_THROWS(exact_report({{1.0, -1.0}, 0.0}));
  CHECK_THROWS(exact_report({{1.0, 2.0}, 0.5}));
}

TEST_CASE("end-to-end equivalence at n_max = 10") {
  for (const LinearModel& model : {LinearModel{{2 * kLog2, 2 * kLog2}, 0.0}, LinearModel{{kLog2, 3 * kLog2}, 0.0},
                                   LinearModel{{kLog2, 3 * kLog2}, std::log(0.25)},
                                   LinearModel{{0.5, 0.9, 1.7}, -1.2}}) {
    const auto want = exact_report(model);
    const auto got = dimension_report(synthetic_library(model, 10), 10, 1e-12);
    CHECK(std::abs(got.t_u - want.t_u) <= 1e-8);
    CHECK(std::abs(got.t_s - want.t_s) <= 1e-8);
    CHECK(std::abs(got.dim_J - want.dim_J) <= 1e-8);
    CHECK(std::abs(got.d_g - want.d_g) <= 1e-8);
    CHECK(std::abs(got.gap - want.gap) <= 1e-8);
    CHECK(got.diagnostics.verdict == want.diagnostics.verdict);
  }
}
