#include "lvs/report.hpp"

#include <cstdio>
#include <sstream>

namespace lvs {

bool RunReport::all_passed() const {
  for (const auto& c : criteria)
    if (c.status == "fail") return false;
  return true;
}

json to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json to_json(const Criterion& c, bool with_timing) {
  json j;
  j["id"] = c.id;
  j["paper_ref"] = c.paper_ref;
  j["measured"] = c.measured;
  j["threshold"] = c.threshold;
  j["pass"] = c.pass;
  j["status"] = c.status;
  j["detail"] = c.detail;
  if (with_timing) j["seconds"] = c.seconds;
  return j;
}

json to_json(const RunReport& r, bool with_timing) {
  json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["seed"] = r.seed;
  j["criteria"] = json::array();
  for (const auto& c : r.criteria) j["criteria"].push_back(to_json(c, with_timing));
  j["summary"] = r.summary;
  if (with_timing) j["timing"] = r.timing;
  if (!r.series.empty()) {
    json s = json::object();
    for (const auto& [name, series] : r.series) s[name] = to_csv(series);
    j["series"] = s;
  }
  return j;
}

json to_json(const SolveReport& r) {
  json j;
  j["method"] = r.method;
  j["solution"] = to_json(r.solution);
  j["objective"] = r.objective;
  j["reference_objective"] = r.reference_objective ? json(*r.reference_objective) : json(nullptr);
  j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
  j["samples_used"] = {{"q", r.q}, {"c", r.c}};
  j["score_mode"] = to_string(r.score_mode);
  j["seed"] = r.seed;
  j["cost_counters"] = json::object();
  for (const auto& [k, v] : r.cost_counters) j["cost_counters"][k] = v;
  j["warnings"] = r.warnings;
  j["notes"] = r.notes;
  return j;
}

json to_json(const ScoreVector& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["total"] = s.total;
  j["degenerate"] = s.degenerate;
  j["scores"] = to_json(s.scores);
  return j;
}

std::string to_csv(const Series& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.columns.size(); ++i) out << (i ? "," : "") << s.columns[i];
  out << '\n';
  char buf[32];
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_line(const Criterion& c) {
  std::ostringstream out;
  const char* tag = c.status == "pass" ? "PASS" : (c.status == "skipped" ? "SKIP" : "FAIL");
  out << tag << ' ' << c.id << "  measured=" << c.measured << " threshold=" << c.threshold << "  " << c.detail;
  return out.str();
}

}  // namespace lvs
