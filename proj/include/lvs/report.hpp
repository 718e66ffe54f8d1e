#pragma once

#include "lvs/linalg.hpp"
#include "lvs/sampling.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace lvs {

using json = nlohmann::ordered_json;

/// Named table of numbers, written out as CSV for external plotting.
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// One acceptance check. `status` is "pass", "fail" or "skipped".
struct Criterion {
  std::string id;
  std::string paper_ref;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string status = "fail";
  std::string detail;
  double seconds = 0.0;
  /// Optional data behind the measurement.
  Series series;
};

struct RunReport {
  std::string command;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;
  json summary = json::object();
  /// Wall-clock fields; excluded from reproducibility comparisons.
  json timing = json::object();
  std::map<std::string, Series> series;

  bool all_passed() const;
};

json to_json(const Criterion& c, bool with_timing = true);
json to_json(const RunReport& r, bool with_timing = true);
json to_json(const SolveReport& r);
json to_json(const ScoreVector& s);
json to_json(const Vector& v);

std::string to_csv(const Series& s);

/// "PASS C1 ..." style line for terminal output.
std::string summary_line(const Criterion& c);

}  // namespace lvs
