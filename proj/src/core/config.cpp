#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace henondim {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    const int line = node.IsDefined() ? node.Mark().line + 1 : 0;
    throw Error(ErrorTag::config, source_ + ":" + std::to_string(line) + ": " + what);
  }

  double number(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, what + " must be a number, got '" + node.Scalar() + "'");
    }
  }

  long long integer(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be an integer");
    try {
      return node.as<long long>();
    } catch (const YAML::Exception&) {
      fail(node, what + " must be an integer, got '" + node.Scalar() + "'");
    }
  }

  // Either a bare real number or a [re, im] pair.
  cplx complex(const YAML::Node& node, const std::string& what) const {
    if (node.IsScalar()) return {number(node, what), 0.0};
    if (!node.IsSequence() || node.size() != 2) fail(node, what + " must be a number or [re, im]");
    return {number(node[0], what), number(node[1], what)};
  }

  HenonFactor factor(const YAML::Node& node, int idx) const {
    const std::string name = "factor " + std::to_string(idx);
    if (!node.IsMap()) fail(node, name + " must be a mapping with 'coeffs' and 'a'");
    const auto coeffs_node = node["coeffs"];
    if (!coeffs_node || !coeffs_node.IsSequence()) fail(node, name + ": missing 'coeffs' list");
    std::vector<cplx> coeffs;
    for (std::size_t k = 0; k < coeffs_node.size(); ++k) coeffs.push_back(complex(coeffs_node[k], name + " coefficient"));
    if (coeffs.size() < 3) fail(coeffs_node, name + ": polynomial degree must be at least 2");
    if (coeffs.back() == cplx{}) fail(coeffs_node[coeffs.size() - 1], name + ": leading coefficient is zero");
    const auto a_node = node["a"];
    if (!a_node) fail(node, name + ": missing 'a'");
    const cplx a = complex(a_node, name + " a");
    if (a == cplx{}) fail(a_node, name + ": a must be nonzero");
    try {
      return HenonFactor(std::move(coeffs), a);
    } catch (const Error& e) {
      fail(node, name + ": " + e.what());
    }
  }

  HenonMap map(const YAML::Node& node) const {
    const auto factors = node.IsMap() ? node["factors"] : YAML::Node();
    if (!factors || !factors.IsSequence() || factors.size() == 0) {
      fail(node, "map must contain a non-empty 'factors' list");
    }
    std::vector<HenonFactor> fs;
    for (std::size_t k = 0; k < factors.size(); ++k) fs.push_back(factor(factors[k], static_cast<int>(k)));
    return HenonMap(std::move(fs));
  }

  LinearModel linear(const YAML::Node& node) const {
    if (!node.IsMap()) fail(node, "linear_model must be a mapping");
    LinearModel m;
    const auto logs = node["branch_logs"];
    if (!logs || !logs.IsSequence()) fail(node, "linear_model: missing 'branch_logs' list");
    for (std::size_t k = 0; k < logs.size(); ++k) {
      const double l = number(logs[k], "branch log");
      if (!(l > 0.0)) fail(logs[k], "branch log-multipliers must be positive");
      m.branch_logs.push_back(l);
    }
    if (m.branch_logs.size() < 2) fail(logs, "linear_model needs at least two branches");
    if (node["log_a"]) {
      m.log_a = number(node["log_a"], "log_a");
      if (!(m.log_a <= 0.0)) fail(node["log_a"], "log_a must be <= 0");
    }
    return m;
  }

  FamilySpec family(const YAML::Node& node) const {
    if (!node.IsMap()) fail(node, "family must be a mapping");
    FamilySpec f;
    const auto slot = node["slot"];
    if (!slot || !slot.IsMap()) fail(node, "family: missing 'slot' mapping");
    if (slot["branch"]) {
      f.slot.kind = ParamSlot::Kind::branch_log;
      f.slot.index = static_cast<int>(integer(slot["branch"], "slot branch"));
    } else {
      f.slot.factor = slot["factor"] ? static_cast<int>(integer(slot["factor"], "slot factor")) : 0;
      if (slot["coeff"]) {
        f.slot.kind = ParamSlot::Kind::coeff;
        f.slot.index = static_cast<int>(integer(slot["coeff"], "slot coeff"));
      } else if (slot["a"]) {
        f.slot.kind = ParamSlot::Kind::jacobian;
      } else {
        fail(slot, "slot needs one of 'coeff', 'a' or 'branch'");
      }
    }
    if (node["segment"] && node["circle"]) fail(node, "family takes either 'segment' or 'circle', not both");
    if (const auto seg = node["segment"]) {
      f.shape = FamilySpec::Shape::segment;
      f.from = complex(seg["from"], "segment from");
      f.to = complex(seg["to"], "segment to");
      f.count = static_cast<int>(integer(seg["count"], "segment count"));
      if (f.count < 1) fail(seg["count"], "segment count must be at least 1");
    } else if (const auto circ = node["circle"]) {
      f.shape = FamilySpec::Shape::circle;
      f.center = complex(circ["center"], "circle center");
      f.radius = number(circ["radius"], "circle radius");
      f.count = static_cast<int>(integer(circ["count"], "circle count"));
      if (f.count < 1) fail(circ["count"], "circle count must be at least 1");
      if (!(f.radius >= 0.0)) fail(circ["radius"], "circle radius must be nonnegative");
    } else {
      fail(node, "family needs a 'segment' or a 'circle'");
    }
    if (const auto guard = node["guard"]) {
      if (guard.IsScalar() && guard.Scalar() == "none") {
        f.guard = FamilySpec::Guard::none;
      } else if (guard.IsScalar() && guard.Scalar() == "default") {
        f.guard = FamilySpec::Guard::automatic;
      } else if (guard.IsMap() && guard["min_abs"]) {
        f.guard = FamilySpec::Guard::min_abs;
        f.guard_min_abs = number(guard["min_abs"], "guard min_abs");
      } else {
        fail(guard, "guard must be 'default', 'none' or {min_abs: x}");
      }
    }
    return f;
  }

 private:
  std::string source_;
};

}  // namespace

std::uint64_t system_fingerprint(const System& sys) {
  return std::visit([](const auto& s) { return fingerprint(s); }, sys);
}

int system_degree(const System& sys) {
  return std::visit([](const auto& s) { return s.degree(); }, sys);
}

void validate_config(const RunConfig& cfg) {
  if (!cfg.system) throw Error(ErrorTag::config, "configuration needs a 'map' or a 'linear_model' section");
  if (cfg.n_max < 3) throw Error(ErrorTag::config, "n_max must be at least 3");
  if (!(cfg.t_grid.step > 0.0)) throw Error(ErrorTag::config, "t_grid step must be positive");
  if (!(cfg.t_grid.min >= 0.0) || !(cfg.t_grid.max >= cfg.t_grid.min)) {
    throw Error(ErrorTag::config, "t_grid must satisfy 0 <= min <= max");
  }
  if (cfg.t_grid.max > cfg.t_cap) throw Error(ErrorTag::config, "t_grid max exceeds t_cap");
  if (!(cfg.tol > 0.0)) throw Error(ErrorTag::config, "tol must be positive");
  if (cfg.jobs < 0) throw Error(ErrorTag::config, "jobs must be >= 0");
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  const Parser p(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorTag::config, std::string(source) + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw Error(ErrorTag::config, std::string(source) + ":1: top level must be a mapping");

  RunConfig cfg;
  if (root["map"] && root["linear_model"]) p.fail(root["linear_model"], "give either 'map' or 'linear_model', not both");
  if (const auto m = root["map"]) cfg.system = p.map(m);
  if (const auto l = root["linear_model"]) cfg.system = p.linear(l);
  if (!cfg.system) p.fail(root, "configuration needs a 'map' or a 'linear_model' section");

  if (const auto n = root["n_max"]) {
    cfg.n_max = static_cast<int>(p.integer(n, "n_max"));
    if (cfg.n_max < 3) p.fail(n, "n_max must be at least 3");
  }
  if (const auto g = root["t_grid"]) {
    if (!g.IsMap()) p.fail(g, "t_grid must be a mapping with min, max, step");
    if (g["min"]) cfg.t_grid.min = p.number(g["min"], "t_grid min");
    if (g["max"]) cfg.t_grid.max = p.number(g["max"], "t_grid max");
    if (g["step"]) {
      cfg.t_grid.step = p.number(g["step"], "t_grid step");
      if (!(cfg.t_grid.step > 0.0)) p.fail(g["step"], "t_grid step must be positive");
    }
  }
  if (const auto t = root["tol"]) cfg.tol = p.number(t, "tol");
  if (const auto t = root["t_cap"]) cfg.t_cap = p.number(t, "t_cap");
  if (const auto c = root["cache_dir"]) cfg.cache_dir = c.as<std::string>();
  if (const auto j = root["jobs"]) cfg.jobs = static_cast<int>(p.integer(j, "jobs"));
  if (const auto d = root["diagnostics"]) {
    if (d["affine_tol"]) cfg.diagnostics.affine_tol = p.number(d["affine_tol"], "affine_tol");
    if (d["rigidity_tol"]) cfg.diagnostics.rigidity_tol = p.number(d["rigidity_tol"], "rigidity_tol");
  }
  if (const auto f = root["family"]) cfg.family = p.family(f);

  try {
    validate_config(cfg);
  } catch (const Error& e) {
    throw Error(ErrorTag::config, std::string(source) + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorTag::config, "cannot read configuration file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace henondim
