#include <doctest.h>

#include <string>

#include "config.hpp"
#include "errors.hpp"

using namespace henondim;

namespace {

std::string config_error(const std::string& yaml) {
  try {
    parse_config(yaml, "run.yaml");
  } catch (const Error& e) {
    CHECK(e.tag() == ErrorTag::config);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

}  // namespace

TEST_CASE("map configuration with complex coefficients") {
  const auto cfg = parse_config(R"(
map:
  factors:
    - coeffs: [[-6, 0], [0, 0], [1, 0]]
      a: [0.2, 0.1]
    - coeffs: [-7, 0, 1]
      a: 0.3
n_max: 8
t_grid: {min: 0, max: 2, step: 0.05}
tol: 1e-10
cache_dir: /tmp/orbits
jobs: 3
)");
  REQUIRE(cfg.system);
  const auto& g = std::get<HenonMap>(*cfg.system);
  REQUIRE(g.factors().size() == 2);
  CHECK(g.factors()[0].a() == cplx(0.2, 0.1));
  CHECK(g.factors()[1].coeffs()[0] == cplx(-7.0));
  CHECK(g.degree() == 4);
  CHECK(cfg.n_max == 8);
  CHECK(cfg.t_grid.max == 2.0);
  CHECK(cfg.t_grid.step == 0.05);
  CHECK(cfg.tol == 1e-10);
  CHECK(cfg.cache_dir == "/tmp/orbits");
  CHECK(cfg.jobs == 3);
}

TEST_CASE("defaults") {
  const auto cfg = parse_config("linear_model:\n  branch_logs: [1.0, 2.0]\n");
  CHECK(cfg.n_max == 10);
  CHECK(cfg.t_grid.min == 0.0);
  CHECK(cfg.t_grid.max == 4.0);
  CHECK(cfg.t_grid.step == 0.01);
  CHECK(cfg.tol == 1e-9);
  CHECK(cfg.jobs == 0);
  CHECK(std::get<LinearModel>(*cfg.system).log_a == 0.0);
}

TEST_CASE("line-precise rejections") {
  SUBCASE("degree below two") {
    const auto msg = config_error("map:\n  factors:\n    - coeffs: [1, 2]\n      a: 0.2\n");
    CHECK(msg.find("run.yaml:3:") != std::string::npos);
    CHECK(msg.find("degree") != std::string::npos);
  }
  SUBCASE("vanishing jacobian parameter") {
    const auto msg = config_error("map:\n  factors:\n    - coeffs: [-6, 0, 1]\n      a: [0, 0]\n");
    CHECK(msg.find("run.yaml:4:") != std::string::npos);
  }
  SUBCASE("non-numeric coefficient") {
    const auto msg = config_error("map:\n  factors:\n    - coeffs: [-6, x, 1]\n      a: 0.2\n");
    CHECK(msg.find("run.yaml:3:") != std::string::npos);
  }
  SUBCASE("both systems") {
    config_error("map:\n  factors:\n    - coeffs: [-6, 0, 1]\n      a: 0.2\nlinear_model:\n  branch_logs: [1, 2]\n");
  }
  SUBCASE("no system") { config_error("n_max: 5\n"); }
  SUBCASE("n_max too small") {
    const auto msg = config_error("linear_model:\n  branch_logs: [1, 2]\nn_max: 2\n");
    CHECK(msg.find("run.yaml:3:") != std::string::npos);
  }
  SUBCASE("nonpositive step") { config_error("linear_model:\n  branch_logs: [1, 2]\nt_grid: {step: 0}\n"); }
  SUBCASE("malformed yaml") {
    const auto msg = config_error("map: [\n");
    CHECK(msg.find("run.yaml:") != std::string::npos);
  }
}

TEST_CASE("family sections") {
  const auto cfg = parse_config(R"(
map:
  factors:
    - coeffs: [-7, 0, 1]
      a: 0.2
family:
  slot: {factor: 0, coeff: 0}
  circle: {center: -7, radius: 0.2, count: 16}
)");
  REQUIRE(cfg.family);
  CHECK(cfg.family->shape == FamilySpec::Shape::circle);
  CHECK(cfg.family->count == 16);
  CHECK(cfg.family->guard == FamilySpec::Guard::automatic);

  const auto lin = parse_config(R"(
linear_model:
  branch_logs: [0.7, 2.0]
  log_a: -1
family:
  slot: {branch: 1}
  segment: {from: 1.5, to: 2.5, count: 5}
  guard: none
)");
  CHECK(lin.family->slot.kind == ParamSlot::Kind::branch_log);
  CHECK(lin.family->slot.index == 1);
  CHECK(lin.family->guard == FamilySpec::Guard::none);

  config_error("linear_model:\n  branch_logs: [1, 2]\nfamily:\n  slot: {branch: 0}\n");
  config_error("linear_model:\n  branch_logs: [1, 2]\nfamily:\n  slot: {branch: 0}\n  segment: {from: 1, to: 2, count: 3}\n  guard: maybe\n");
}
