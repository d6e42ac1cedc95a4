#include <chrono>
#include <set>

#include "checks.hpp"

namespace rqft {

namespace {
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}
}  // namespace

Scenario::Scenario(const ScenarioConfig& cfg) : cfg_(cfg), model_(std::make_shared<const Model>(cfg.model)) {}

const UnitaryRep& Scenario::system_rep() {
  if (!rep_) {
    const SystemSpec& s = cfg_.system;
    if (s.rep == "momentum")
      rep_ = momentum_representation(model_, s.characters);
    else if (s.rep == "regular")
      rep_ = regular_representation(model_);
    else if (s.rep == "position")
      rep_ = position_representation(model_);
    else if (s.rep == "lorentz")
      rep_ = lorentz_representation(model_);
    else
      rep_ = trivial_representation(model_, s.dim);
  }
  return *rep_;
}

const Mat& Scenario::phi() {
  if (!phi_) {
    CounterRng rng = rng_for("system.phi");
    const long d = system_rep().dim();
    if (cfg_.system.phi == "identity")
      phi_ = Mat(Mat::Identity(d, d));
    else if (cfg_.system.phi == "hermitian")
      phi_ = random_hermitian(rng, d);
    else
      phi_ = random_matrix(rng, d, d);
  }
  return *phi_;
}

FramePtr Scenario::frame() {
  if (!frame_) {
    const FrameSpec& f = cfg_.frame;
    if (f.kind == "random") {
      CounterRng rng = rng_for("frame");
      frame_ = std::make_shared<const FrameObservable>(
          build_frame(regular_representation(model_), random_psd(rng, static_cast<long>(model_->num_frames()), f.rank),
                      cfg_.tol));
    } else if (f.kind == "sharp-regular") {
      frame_ = std::make_shared<const FrameObservable>(sharp_regular_frame(model_));
    } else if (f.kind == "uniform") {
      frame_ = std::make_shared<const FrameObservable>(uniform_frame(regular_representation(model_)));
    } else if (f.kind == "position") {
      frame_ = std::make_shared<const FrameObservable>(position_frame(model_, f.internal_dim));
    } else {
      frame_ = std::make_shared<const FrameObservable>(vacuum_complement_frame(model_));
    }
  }
  return frame_;
}

Mat Scenario::state(const std::string& name) {
  auto it = cfg_.states.find(name);
  if (it == cfg_.states.end()) throw ConfigError("unknown state '" + name + "'");
  const StateSpec& s = it->second;
  const long d = frame()->dim();
  CounterRng rng = rng_for("state:" + name);
  if (s.kind == "uniform") return Mat::Identity(d, d) / static_cast<double>(d);
  if (s.kind == "pure") return random_pure_state(rng, d);
  if (s.kind == "delta") {
    const Mat& e = (*frame())(s.at);
    return e / e.trace().real();
  }
  return random_state(rng, d, s.rank);
}

std::vector<std::string> Scenario::state_names() const {
  std::vector<std::string> out;
  for (const auto& kv : cfg_.states) out.push_back(kv.first);
  return out;
}

CounterRng Scenario::rng_for(const std::string& check) const { return CounterRng(cfg_.seed, fnv1a(check)); }

FramePtr Scenario::random_frame(CounterRng& rng) {
  return std::make_shared<const FrameObservable>(
      build_frame(regular_representation(model_), random_psd(rng, static_cast<long>(model_->num_frames())), cfg_.tol));
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg = detail::builtin_checks();
  return reg;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& c : check_registry())
    if (std::find(out.begin(), out.end(), c.suite) == out.end()) out.push_back(c.suite);
  return out;
}

std::vector<const CheckInfo*> resolve_checks(const std::vector<std::string>& requests) {
  std::vector<const CheckInfo*> out;
  std::set<std::string> seen;
  for (const auto& req : requests) {
    bool matched = false;
    for (const auto& c : check_registry()) {
      if (c.name != req && c.suite != req) continue;
      matched = true;
      if (seen.insert(c.name).second) out.push_back(&c);
    }
    if (!matched) throw ConfigError("unknown suite or check '" + req + "'");
  }
  return out;
}

RunReport run(const ScenarioConfig& cfg) {
  const auto checks = resolve_checks(cfg.suites);
  Scenario sc(cfg);
  RunReport report;
  report.seed = cfg.seed;
  for (const CheckInfo* c : checks) {
    Record rec;
    rec.check = c->name;
    rec.suite = c->suite;
    rec.anchor = c->anchor;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c->run(sc, rec);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      rec.verdict = Verdict::failed;
      rec.note = std::string("error: ") + e.what();
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.records.push_back(std::move(rec));
  }
  return report;
}

std::vector<DemoRow> vacuum_orthogonality_demo(const std::vector<int>& Ns) {
  auto rows = vacuum_orthogonality_scan(
      [](int N) {
        auto m = std::make_shared<const Model>(ModelParams{N, 2, CausalMode::modular, {}});
        FrameObservable E = position_frame(m);
        const long d = E.dim();
        return std::make_pair(E, Mat(Mat::Identity(d, d) / static_cast<double>(d)));
      },
      {{0, 0}}, Ns);
  std::vector<DemoRow> out;
  for (const auto& r : rows) out.push_back({r.N, r.mu, r.expected});
  return out;
}

}  // namespace rqft
