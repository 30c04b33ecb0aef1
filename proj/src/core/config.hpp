#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dimension.hpp"
#include "map_core.hpp"
#include "oracle.hpp"

namespace henondim {

// Either a composed Henon map or an exactly solvable linear shift model.
using System = std::variant<HenonMap, LinearModel>;

std::uint64_t system_fingerprint(const System& sys);
int system_degree(const System& sys);

struct TGrid {
  double min = 0.0;
  double max = 4.0;
  double step = 0.01;
};

// The complex parameter slot varied by a family: coefficient `index` of
// factor `factor`, the jacobian parameter a of factor `factor`, or the
// log-multiplier of linear-model branch `index` (set to Re(param)).
struct ParamSlot {
  enum class Kind { coeff, jacobian, branch_log };
  Kind kind = Kind::coeff;
  int factor = 0;
  int index = 0;
};

struct FamilySpec {
  enum class Shape { segment, circle };
  enum class Guard { automatic, none, min_abs };

  ParamSlot slot;
  Shape shape = Shape::segment;
  cplx from{}, to{};  // segment
  cplx center{};      // circle
  double radius = 0.0;
  int count = 0;
  Guard guard = Guard::automatic;
  double guard_min_abs = 0.0;
};

struct RunConfig {
  std::optional<System> system;
  int n_max = 10;
  TGrid t_grid;
  double tol = 1e-9;
  double t_cap = 4.0;
  std::string cache_dir;
  int jobs = 0;
  DiagnosticsOptions diagnostics;
  std::optional<FamilySpec> family;
};

// YAML configuration. Errors are Error(config) prefixed "<source>:<line>:".
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// Checks the cross-field invariants (exactly one system, step > 0, n_max >= 3).
void validate_config(const RunConfig& cfg);

}  // namespace henondim
