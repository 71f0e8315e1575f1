#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace strongmax {

// One pass/fail check: observed value compared against a pinned threshold.
// `criterion` tags the acceptance criterion the verdict implements (0 = a
// supporting invariant).
struct Verdict {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  int criterion = 0;
};

struct ExperimentReport {
  std::string name;
  uint64_t seed = 0;
  std::map<std::string, std::string> params;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Verdict> verdicts;

  void metric(const std::string& label, double value) { metrics.emplace_back(label, value); }
  void check(const std::string& name, double observed, double threshold,
             const std::string& relation = "<=", int criterion = 0);
  bool all_pass() const;

  std::string to_json() const;        // deterministic, no timestamps
  std::string metrics_csv() const;    // flat label,value rows
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace strongmax
