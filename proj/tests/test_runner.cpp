#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rqft/runner.hpp"

using namespace rqft;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
int cli(const std::string& args) {
  const std::string cmd = std::string(RQFT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return 0;
}
}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("configuration") {
    CHECK(slurp(std::string(RQFT_SOURCE_DIR) + "/config/default.yaml") == default_config_text());
    ScenarioConfig d = default_config();
    CHECK(d.model.N == 5);
    CHECK(d.states.size() == 3);
    CHECK(d.suites.size() == 8);
    CHECK(load_config(std::string(RQFT_SOURCE_DIR) + "/config/default.yaml").seed == d.seed);

    CHECK(error_line("model:\n  N: 5\n  bogus: 1\n") == 3);
    CHECK(error_line("seed: 1\nextra: 2\n") == 2);
    CHECK(error_line("suites: [covariance, no-such-check]\n") == 1);
    CHECK(error_line("model: {N: 4}\n") == 1);
    CHECK(error_line("model:\n  N: 5\n  causal_mode: sideways\n") == 3);
    CHECK(error_line("states:\n  a: {kind: delta}\n") == 2);
    CHECK(error_line("states:\n  a: {kind: delta, at: {x: [7, 0]}}\n") == 2);
    CHECK(error_line("tolerances:\n  eq: nope\n") == 2);
    CHECK(error_line("seed: [1\n") > 0);
    CHECK_THROWS_AS(load_config("/nonexistent/scenario.yaml"), ConfigError);

    ScenarioConfig c = parse_config("seed: 7\ntolerances: {eq: 1e-11, max_iter: 10}\nsuites: [vacuum]\n");
    CHECK(c.seed == 7);
    CHECK(c.tol.eq == 1e-11);
    CHECK(c.tol.max_iter == 10);
    apply_tolerance_override(c.tol, "psd=2e-9");
    CHECK(c.tol.psd == 2e-9);
    CHECK_THROWS_AS(apply_tolerance_override(c.tol, "speed=1"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(c.tol, "eq"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance_override(c.tol, "eq=1e-3x"), ConfigError);
  }

  TEST_CASE("check registry") {
    const std::string readme = slurp(std::string(RQFT_SOURCE_DIR) + "/README.md");
    for (const auto& c : check_registry()) {
      CAPTURE(c.name);
      CHECK(readme.find("`" + c.anchor + "`") != std::string::npos);
      CHECK(readme.find("`" + c.name + "`") != std::string::npos);
    }
    auto checks = resolve_checks({"vacuum", "vacuum-polarization", "aqft-isotony"});
    CHECK(checks.size() == 5);
    CHECK(checks.back()->name == "aqft-isotony");
    CHECK_THROWS_AS(resolve_checks({"no-such-check"}), ConfigError);
  }

  TEST_CASE("reports") {
    ScenarioConfig cfg = default_config();
    cfg.suites.clear();
    RunReport empty = run(cfg);
    CHECK(empty.records.empty());
    CHECK_FALSE(empty.failed());
    const std::string table = emit_text(empty);
    CHECK(table.rfind("check", 0) == 0);
    CHECK(table.find("0 checks") != std::string::npos);

    RunReport mixed;
    mixed.seed = 3;
    const Verdict all[] = {Verdict::verified, Verdict::vacuous, Verdict::failed, Verdict::no_certificate};
    for (Verdict v : all) {
      Record r{"c-" + to_string(v), "s", "a", v, {{"residual", 1e-13}, {"count", 4.0}}, "note", 1.5};
      mixed.records.push_back(r);
    }
    mixed.records[0].metrics.emplace_back("tiny", 3.0000000000000004e-17);
    const std::string text = emit_text(mixed);
    for (Verdict v : all) CHECK(text.find(to_string(v)) != std::string::npos);
    CHECK(mixed.failed());
    const std::string json = emit_json(mixed);
    RunReport back = parse_report_json(json);
    CHECK(emit_json(back) == json);
    REQUIRE(back.records.size() == 4);
    CHECK(back.records[0].metrics.back().second == 3.0000000000000004e-17);
    CHECK(back.records[3].verdict == Verdict::no_certificate);
    CHECK(emit_json(mixed, false).find("millis") == std::string::npos);
  }

  TEST_CASE("deterministic runs") {
    ScenarioConfig cfg = default_config();
    cfg.suites = {"vacuum", "frame"};
    RunReport a = run(cfg), b = run(cfg);
    CHECK(emit_json(a, false) == emit_json(b, false));
    for (const auto& r : a.records) {
      CAPTURE(r.check);
      CHECK(r.verdict == Verdict::verified);
    }
    cfg.seed += 1;
    CHECK(emit_json(run(cfg), false) != emit_json(a, false));
  }

  TEST_CASE("covariance suite on the default scenario") {
    ScenarioConfig cfg = default_config();
    cfg.suites = {"covariance"};
    RunReport r = run(cfg);
    CHECK(r.records.size() == 5);
    for (const auto& rec : r.records) {
      CAPTURE(rec.check);
      CAPTURE(rec.note);
      CHECK(rec.verdict == Verdict::verified);
    }
  }

  TEST_CASE("command line") {
    CHECK(cli("list-checks") == 0);
    CHECK(cli("verify no-such-suite") == 2);
    CHECK(cli("verify vacuum --config /nonexistent.yaml") == 2);
    CHECK(cli("verify vacuum --tol bogus=1") == 2);
    CHECK(cli("verify vacuum-orthogonality-scaling --format json") == 0);
    CHECK(cli("demo vacuum-orthogonality") == 0);
    CHECK(cli("--format xml report") == 2);
    // an impossible tolerance turns a verified check into a failure
    CHECK(cli("verify restriction-duality --tol eq=0") == 1);
  }
}
