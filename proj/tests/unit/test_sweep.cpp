#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "sweep.hpp"

using namespace henondim;

namespace {

System henon(double c, double a) { return HenonMap({HenonFactor({c, 0.0, 1.0}, a)}); }

FamilySpec constant_term_segment(cplx from, cplx to, int count) {
  FamilySpec f;
  f.slot = {ParamSlot::Kind::coeff, 0, 0};
  f.shape = FamilySpec::Shape::segment;
  f.from = from;
  f.to = to;
  f.count = count;
  return f;
}

SweepOptions options(int n_max, int jobs = 1) {
  SweepOptions o;
  o.n_max = n_max;
  o.tol = 1e-12;
  o.jobs = jobs;
  return o;
}

}  // namespace

TEST_CASE("family sample points") {
  const auto seg = family_params(constant_term_segment(-8.0, -6.0, 11));
  REQUIRE(seg.size() == 11);
  CHECK(seg.front() == cplx(-8.0));
  CHECK(seg.back() == cplx(-6.0));
  CHECK(std::abs(seg[5] - cplx(-7.0)) < 1e-15);

  FamilySpec circle = constant_term_segment(0.0, 0.0, 8);
  circle.shape = FamilySpec::Shape::circle;
  circle.center = -7.0;
  circle.radius = 0.2;
  for (const auto& p : family_params(circle)) CHECK(std::abs(std::abs(p + 7.0) - 0.2) < 1e-15);
}

TEST_CASE("instantiation sets exactly one slot") {
  const auto g = std::get<HenonMap>(instantiate(henon(-6.0, 0.2), {ParamSlot::Kind::coeff, 0, 0}, {-7.5, 0.1}));
  CHECK(g.factors()[0].coeffs()[0] == cplx(-7.5, 0.1));
  CHECK(g.factors()[0].a() == cplx(0.2));
  const auto h = std::get<HenonMap>(instantiate(henon(-6.0, 0.2), {ParamSlot::Kind::jacobian, 0, 0}, 0.3));
  CHECK(h.factors()[0].a() == cplx(0.3));
  CHECK_THROWS(instantiate(henon(-6.0, 0.2), {ParamSlot::Kind::coeff, 1, 0}, 1.0));
  CHECK_THROWS(instantiate(henon(-6.0, 0.2), {ParamSlot::Kind::branch_log, 0, 0}, 1.0));
}

TEST_CASE("horseshoe guard") {
  CHECK_NOTHROW(check_family(henon(-7.0, 0.2), constant_term_segment(-8.0, -6.0, 5)));
  // 2 (1 + 0.2)^2 = 2.88
  CHECK_THROWS_AS(check_family(henon(-7.0, 0.2), constant_term_segment(-4.0, -2.0, 5)), Error);

  auto jac = constant_term_segment(0.1, 0.5, 5);
  jac.slot = {ParamSlot::Kind::jacobian, 0, 0};
  CHECK_NOTHROW(check_family(henon(-6.0, 0.2), jac));
  // 2 (1 + 0.9)^2 = 7.22 > 6
  jac.to = 0.9;
  CHECK_THROWS_AS(check_family(henon(-6.0, 0.2), jac), Error);

  const System cubic = HenonMap({HenonFactor({0.0, -9.0, 0.0, 1.0}, 0.2)});
  auto cubic_family = constant_term_segment(-0.5, 0.5, 3);
  CHECK_THROWS_AS(check_family(cubic, cubic_family), Error);
  cubic_family.guard = FamilySpec::Guard::none;
  CHECK_NOTHROW(check_family(cubic, cubic_family));
  cubic_family.guard = FamilySpec::Guard::min_abs;
  cubic_family.guard_min_abs = 0.6;
  CHECK_THROWS_AS(check_family(cubic, cubic_family), Error);
}

TEST_CASE("segment sweep on the real constant term") {
  const auto family = constant_term_segment(-8.0, -6.0, 5);
  const auto result = sweep(henon(-7.0, 0.2), family, options(8));
  REQUIRE(result.records.size() == 5);
  for (const auto& r : result.records) {
    CHECK(r.ok());
    CHECK(r.t_s <= r.t_u);
    CHECK(r.gap >= -1e-9);
  }
  REQUIRE(result.continuity);
  CHECK(*result.continuity > 0.0);
  const auto csv = sweep_csv(result);
  CHECK(csv.rfind("param_re,param_im,t_u,t_s,dim_J,d_g,gap,n_max,status\n", 0) == 0);
  CHECK(csv == sweep_csv(sweep(henon(-7.0, 0.2), family, options(8, 3))));
}

TEST_CASE("zero-length segment gives identical records") {
  const auto result = sweep(henon(-7.0, 0.2), constant_term_segment(-7.0, -7.0, 4), options(6));
  for (const auto& r : result.records) {
    CHECK(r.d_g == result.records[0].d_g);
    CHECK(r.t_u == result.records[0].t_u);
  }
  CHECK(*result.continuity == 0.0);
}

TEST_CASE("oracle family matches the closed form pointwise") {
  const LinearModel base{{0.7, 2.0}, -1.0};
  FamilySpec family;
  family.slot = {ParamSlot::Kind::branch_log, 0, 1};
  family.from = 1.2;
  family.to = 2.8;
  family.count = 9;
  const auto result = sweep(base, family, options(10));
  double prev = 0.0;
  for (std::size_t k = 0; k < result.records.size(); ++k) {
    const auto& r = result.records[k];
    REQUIRE(r.ok());
    LinearModel m = base;
    m.branch_logs[1] = r.param.real();
    const auto want = exact_report(m);
    CHECK(std::abs(r.d_g - want.d_g) <= 1e-8);
    CHECK(std::abs(r.t_u - want.t_u) <= 1e-8);
    if (k > 0) CHECK(std::abs(r.d_g - prev) < 0.1);
    prev = r.d_g;
  }
}

TEST_CASE("per-sample failures are recorded, not thrown") {
  auto family = constant_term_segment(-1.0, -6.0, 3);
  family.guard = FamilySpec::Guard::none;
  const auto result = sweep(henon(-6.0, 0.2), family, options(5));
  CHECK_FALSE(result.records[0].ok());
  CHECK(result.records[2].ok());
  CHECK(sweep_csv(result).find(",5,incomplete-library\n") != std::string::npos);
}

TEST_CASE("sub-mean value on an oracle circle") {
  // d_g is convex in the branch log here, so the circle mean dominates.
  const LinearModel base{{0.7, 2.0}, -1.0};
  FamilySpec family;
  family.slot = {ParamSlot::Kind::branch_log, 0, 1};
  family.shape = FamilySpec::Shape::circle;
  family.center = 2.0;
  family.radius = 0.5;
  family.count = 16;
  const auto r = submean_check(base, family, options(10));
  CHECK(r.margin >= 0.0);
  CHECK_FALSE(r.violation);

  family.radius = 1e-6;
  CHECK(std::abs(submean_check(base, family, options(10)).margin) < 1e-9);

  family.count = 4;
  CHECK_THROWS_AS(submean_check(base, family, options(10)), Error);
}

TEST_CASE("sub-mean value text") {
  SubmeanResult r;
  r.margin = -1.0;
  r.err_budget = 0.5;
  r.violation = true;
  const auto text = submean_text(r);
  CHECK(text.find("margin=-1\n") != std::string::npos);
  CHECK(text.find("status=VIOLATION\n") != std::string::npos);
}
