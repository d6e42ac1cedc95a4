#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "rqft/runner.hpp"

namespace rqft {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : -1; }

void require_map(const YAML::Node& n, const std::string& what) {
  if (!n.IsMap()) throw ConfigError(what + " must be a mapping", line_of(n));
}

void reject_unknown(const YAML::Node& n, const std::string& what, const std::set<std::string>& allowed) {
  require_map(n, what);
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + what, line_of(kv.first));
  }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) throw ConfigError(what + " must be a scalar", line_of(n));
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("cannot read " + what + " from '" + n.Scalar() + "'", line_of(n));
  }
}

std::string one_of(const YAML::Node& n, const std::string& what, const std::set<std::string>& options) {
  auto s = scalar<std::string>(n, what);
  if (!options.count(s)) {
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
    throw ConfigError(what + " '" + s + "' is not one of: " + list, line_of(n));
  }
  return s;
}

LatticePoint point(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || n.size() != 2) throw ConfigError(what + " must be a pair [u, v]", line_of(n));
  return {scalar<int>(n[0], what), scalar<int>(n[1], what)};
}

void parse_model(const YAML::Node& n, ModelParams& p) {
  reject_unknown(n, "model", {"N", "s", "causal_mode", "window"});
  if (n["N"]) p.N = scalar<int>(n["N"], "model.N");
  if (n["s"]) p.s = scalar<int>(n["s"], "model.s");
  if (n["causal_mode"])
    p.causal_mode = one_of(n["causal_mode"], "model.causal_mode", {"modular", "lifted"}) == "lifted"
                        ? CausalMode::lifted
                        : CausalMode::modular;
  if (n["window"] && !n["window"].IsNull()) p.window = scalar<int>(n["window"], "model.window");
  try {
    Model m(p);
  } catch (const ModelError& e) {
    throw ConfigError(std::string("invalid model: ") + e.what(), line_of(n));
  }
}

void parse_system(const YAML::Node& n, SystemSpec& s) {
  reject_unknown(n, "system", {"rep", "characters", "dim", "phi"});
  if (n["rep"]) s.rep = one_of(n["rep"], "system.rep", {"momentum", "regular", "position", "lorentz", "trivial"});
  if (n["characters"]) {
    if (!n["characters"].IsSequence()) throw ConfigError("system.characters must be a list", line_of(n["characters"]));
    s.characters.clear();
    for (const auto& c : n["characters"]) s.characters.push_back(point(c, "character"));
  }
  if (n["dim"]) s.dim = scalar<long>(n["dim"], "system.dim");
  if (n["phi"]) s.phi = one_of(n["phi"], "system.phi", {"random", "hermitian", "identity"});
  if (s.dim < 1) throw ConfigError("system.dim must be positive", line_of(n["dim"]));
}

void parse_frame(const YAML::Node& n, FrameSpec& f) {
  reject_unknown(n, "frame", {"kind", "rank", "internal_dim"});
  if (n["kind"])
    f.kind = one_of(n["kind"], "frame.kind", {"random", "sharp-regular", "uniform", "position", "vacuum-complement"});
  if (n["rank"]) f.rank = scalar<long>(n["rank"], "frame.rank");
  if (n["internal_dim"]) f.internal_dim = scalar<long>(n["internal_dim"], "frame.internal_dim");
  if (f.internal_dim < 1) throw ConfigError("frame.internal_dim must be positive", line_of(n["internal_dim"]));
}

StateSpec parse_state(const YAML::Node& n, const std::string& name, const Model& m) {
  const std::string what = "states." + name;
  reject_unknown(n, what, {"kind", "rank", "at"});
  StateSpec s;
  if (n["kind"]) s.kind = one_of(n["kind"], what + ".kind", {"random", "pure", "delta", "uniform"});
  if (n["rank"]) s.rank = scalar<long>(n["rank"], what + ".rank");
  if (s.kind == "delta") {
    if (!n["at"]) throw ConfigError(what + " is a delta state and needs 'at'", line_of(n));
    const YAML::Node at = n["at"];
    reject_unknown(at, what + ".at", {"x", "boost"});
    if (!at["x"]) throw ConfigError(what + ".at needs 'x'", line_of(at));
    s.at.x = point(at["x"], what + ".at.x");
    s.at.lam = at["boost"] ? scalar<int>(at["boost"], what + ".at.boost") : 1;
    try {
      m.validate(s.at);
    } catch (const ModelError& e) {
      throw ConfigError(what + ".at: " + e.what(), line_of(at));
    }
  } else if (n["at"]) {
    throw ConfigError(what + ".at is only meaningful for delta states", line_of(n["at"]));
  }
  return s;
}

void parse_tolerances(const YAML::Node& n, Tolerances& t) {
  reject_unknown(n, "tolerances",
                 {"eq", "herm", "psd", "trace", "supp", "null_rel", "feas", "dft", "max_iter", "max_dim"});
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    const std::string value = kv.second.IsScalar() ? kv.second.Scalar() : "";
    try {
      apply_tolerance_override(t, key + "=" + value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line_of(kv.second));
    }
  }
}

}  // namespace

void apply_tolerance_override(Tolerances& t, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerance override must be KEY=VAL: '" + assignment + "'");
  const std::string key = assignment.substr(0, eq), value = assignment.substr(eq + 1);
  std::map<std::string, double*> reals{{"eq", &t.eq},     {"herm", &t.herm},         {"psd", &t.psd},
                                       {"trace", &t.trace}, {"supp", &t.supp},     {"null_rel", &t.null_rel},
                                       {"feas", &t.feas},   {"dft", &t.dft}};
  std::size_t used = 0;
  try {
    if (auto it = reals.find(key); it != reals.end()) {
      const double v = std::stod(value, &used);
      if (used != value.size() || !(v >= 0.0)) throw std::invalid_argument("");
      *it->second = v;
      return;
    }
    if (key == "max_iter" || key == "max_dim") {
      const long v = std::stol(value, &used);
      if (used != value.size() || v <= 0) throw std::invalid_argument("");
      if (key == "max_iter")
        t.max_iter = static_cast<int>(v);
      else
        t.max_dim = v;
      return;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad value for tolerance '" + key + "': '" + value + "'");
  }
  throw ConfigError("unknown tolerance '" + key + "'");
}

ScenarioConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("YAML syntax: " + e.msg, e.mark.line >= 0 ? e.mark.line + 1 : -1);
  }
  ScenarioConfig cfg;
  if (root.IsNull()) return cfg;
  reject_unknown(root, "scenario",
                 {"seed", "instances", "model", "system", "frame", "states", "suites", "tolerances"});
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["instances"]) cfg.instances = scalar<int>(root["instances"], "instances");
  if (cfg.instances < 1) throw ConfigError("instances must be positive", line_of(root["instances"]));
  if (root["model"]) parse_model(root["model"], cfg.model);
  const Model m(cfg.model);
  if (root["system"]) parse_system(root["system"], cfg.system);
  if (cfg.system.rep == "momentum") {
    for (const auto& k : cfg.system.characters) {
      try {
        m.validate(k);
      } catch (const ModelError& e) {
        throw ConfigError(std::string("system.characters: ") + e.what(), line_of(root["system"]));
      }
    }
    if (cfg.system.characters.empty()) throw ConfigError("system.characters must not be empty", line_of(root["system"]));
  }
  if (root["frame"]) parse_frame(root["frame"], cfg.frame);
  if (root["states"]) {
    require_map(root["states"], "states");
    for (const auto& kv : root["states"]) {
      const auto name = kv.first.as<std::string>();
      cfg.states[name] = parse_state(kv.second, name, m);
    }
  }
  if (root["suites"]) {
    const YAML::Node s = root["suites"];
    if (!s.IsSequence()) throw ConfigError("suites must be a list", line_of(s));
    for (const auto& item : s) {
      auto name = scalar<std::string>(item, "suite name");
      try {
        resolve_checks({name});
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line_of(item));
      }
      cfg.suites.push_back(name);
    }
  }
  if (root["tolerances"]) parse_tolerances(root["tolerances"], cfg.tol);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

const std::string& default_config_text() {
  static const std::string text = R"(# Default scenario: N = 5, s = 2, |C| = 4, |F| = 100.
seed: 20261016
instances: 20
model:
  N: 5
  s: 2
  causal_mode: modular
system:
  rep: momentum
  characters: [[1, 0]]
  phi: random
frame:
  kind: random
states:
  mixed: {kind: random, rank: 3}
  pure: {kind: pure}
  sharp: {kind: delta, at: {x: [1, 4], boost: 2}}
suites:
  - frame
  - covariance
  - relativization
  - causality
  - wightman
  - vacuum
  - aqft
  - irreducibility
)";
  return text;
}

ScenarioConfig default_config() { return parse_config(default_config_text()); }

}  // namespace rqft
