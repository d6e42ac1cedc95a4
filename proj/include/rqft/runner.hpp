#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqft/aqft.hpp"
#include "rqft/wightman.hpp"

namespace rqft {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& msg, int line = -1)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  int line;
};

struct SystemSpec {
  std::string rep = "momentum";  // momentum | regular | position | lorentz | trivial
  std::vector<LatticePoint> characters{{1, 0}};
  long dim = 1;                  // trivial representation only
  std::string phi = "random";    // random | hermitian | identity
};

struct FrameSpec {
  std::string kind = "random";  // random | sharp-regular | uniform | position | vacuum-complement
  long rank = -1;               // seed rank for random frames
  long internal_dim = 1;        // position frames
};

struct StateSpec {
  std::string kind = "random";  // random | pure | delta | uniform
  long rank = -1;
  FramePoint at;                // delta states
};

struct ScenarioConfig {
  std::uint64_t seed = 20261016;
  int instances = 20;
  ModelParams model;
  SystemSpec system;
  FrameSpec frame;
  std::map<std::string, StateSpec> states;
  std::vector<std::string> suites;  // suite names or check names, in run order
  Tolerances tol;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
// the bundled default scenario (same content as config/default.yaml)
ScenarioConfig default_config();
const std::string& default_config_text();
// KEY=VAL with KEY a field of Tolerances
void apply_tolerance_override(Tolerances& tol, const std::string& assignment);

struct Record {
  std::string check;
  std::string suite;
  std::string anchor;
  Verdict verdict = Verdict::vacuous;
  std::vector<std::pair<std::string, double>> metrics;  // in insertion order
  std::string note;
  double millis = 0.0;
};

struct RunReport {
  static constexpr int schema_version = 1;
  std::uint64_t seed = 0;
  std::vector<Record> records;
  std::map<Verdict, std::size_t> counts() const;
  bool failed() const;
};

std::string emit_text(const RunReport& r);
std::string emit_json(const RunReport& r, bool with_timings = true);
RunReport parse_report_json(const std::string& text);

// Scenario objects shared by the checks of one run, built lazily from the config.
class Scenario {
 public:
  explicit Scenario(const ScenarioConfig& cfg);
  const ScenarioConfig& config() const { return cfg_; }
  const Tolerances& tol() const { return cfg_.tol; }
  std::shared_ptr<const Model> model() const { return model_; }
  const UnitaryRep& system_rep();
  const Mat& phi();
  FramePtr frame();
  const UnitaryRep& frame_rep() { return frame()->rep; }
  Mat state(const std::string& name);
  std::vector<std::string> state_names() const;
  // independent stream for a check, derived from the run seed and the check name
  CounterRng rng_for(const std::string& check) const;
  // random frame of the configured model on the regular representation
  FramePtr random_frame(CounterRng& rng);

 private:
  ScenarioConfig cfg_;
  std::shared_ptr<const Model> model_;
  std::optional<UnitaryRep> rep_;
  std::optional<Mat> phi_;
  FramePtr frame_;
};

struct CheckInfo {
  std::string name;
  std::string suite;
  std::string anchor;
  std::string summary;
  std::function<void(Scenario&, Record&)> run;  // fills verdict, metrics and note
};

const std::vector<CheckInfo>& check_registry();
std::vector<std::string> suite_names();
// expands suite and check names into registry entries, each at most once, in request order
std::vector<const CheckInfo*> resolve_checks(const std::vector<std::string>& requests);
RunReport run(const ScenarioConfig& cfg);

struct DemoRow {
  int N;
  double mu;
  double expected;
};
std::vector<DemoRow> vacuum_orthogonality_demo(const std::vector<int>& Ns);

}  // namespace rqft
