#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rqft/runner.hpp"

namespace rqft {

using ojson = nlohmann::ordered_json;

std::map<Verdict, std::size_t> RunReport::counts() const {
  std::map<Verdict, std::size_t> c{
      {Verdict::verified, 0}, {Verdict::vacuous, 0}, {Verdict::failed, 0}, {Verdict::no_certificate, 0}};
  for (const auto& r : records) ++c[r.verdict];
  return c;
}

bool RunReport::failed() const {
  return std::any_of(records.begin(), records.end(), [](const Record& r) { return r.verdict == Verdict::failed; });
}

namespace {

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::verified, Verdict::vacuous, Verdict::failed, Verdict::no_certificate})
    if (to_string(v) == s) return v;
  throw std::runtime_error("unknown verdict '" + s + "'");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

std::string emit_json(const RunReport& r, bool with_timings) {
  ojson doc;
  doc["schema_version"] = RunReport::schema_version;
  doc["seed"] = r.seed;
  ojson summary;
  for (const auto& [v, n] : r.counts()) summary[to_string(v)] = n;
  summary["total"] = r.records.size();
  doc["summary"] = summary;
  doc["records"] = ojson::array();
  for (const auto& rec : r.records) {
    ojson j;
    j["check"] = rec.check;
    j["suite"] = rec.suite;
    j["anchor"] = rec.anchor;
    j["verdict"] = to_string(rec.verdict);
    ojson metrics = ojson::object();
    for (const auto& [k, v] : rec.metrics) metrics[k] = std::isfinite(v) ? ojson(v) : ojson(nullptr);
    j["metrics"] = metrics;
    j["note"] = rec.note;
    if (with_timings) j["millis"] = rec.millis;
    doc["records"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

RunReport parse_report_json(const std::string& text) {
  const ojson doc = ojson::parse(text);
  if (doc.at("schema_version").get<int>() != RunReport::schema_version)
    throw std::runtime_error("unsupported report schema version");
  RunReport r;
  r.seed = doc.at("seed").get<std::uint64_t>();
  for (const auto& j : doc.at("records")) {
    Record rec;
    rec.check = j.at("check").get<std::string>();
    rec.suite = j.at("suite").get<std::string>();
    rec.anchor = j.at("anchor").get<std::string>();
    rec.verdict = verdict_from(j.at("verdict").get<std::string>());
    for (const auto& [k, v] : j.at("metrics").items())
      rec.metrics.emplace_back(k, v.is_null() ? std::nan("") : v.get<double>());
    rec.note = j.at("note").get<std::string>();
    if (j.contains("millis")) rec.millis = j.at("millis").get<double>();
    r.records.push_back(std::move(rec));
  }
  return r;
}

std::string emit_text(const RunReport& r) {
  std::vector<std::vector<std::string>> rows{{"check", "suite", "anchor", "verdict", "metrics"}};
  for (const auto& rec : r.records) {
    std::string m;
    for (const auto& [k, v] : rec.metrics) m += (m.empty() ? "" : "  ") + k + "=" + fmt(v);
    if (!rec.note.empty()) m += (m.empty() ? "" : "  ") + std::string("(") + rec.note + ")";
    rows.push_back({rec.check, rec.suite, rec.anchor, to_string(rec.verdict), m});
  }
  std::vector<std::size_t> width(5, 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < 4; ++c) line += row[c] + std::string(width[c] - row[c].size() + 2, ' ');
    line += row[4];
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  const auto c = r.counts();
  os << "\n" << r.records.size() << " checks:";
  for (const auto& [v, n] : c) os << " " << n << " " << to_string(v) << ",";
  os.seekp(-1, std::ios_base::end);
  os << "\n";
  return os.str();
}

}  // namespace rqft
