#include "strongmax/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "strongmax/lattice.hpp"
#include "strongmax/version.hpp"

namespace strongmax {

void ExperimentReport::check(const std::string& vname, double observed, double threshold,
                             const std::string& relation, int criterion) {
  Verdict v;
  v.name = vname;
  v.observed = observed;
  v.threshold = threshold;
  v.relation = relation;
  v.criterion = criterion;
  if (relation == "<=")
    v.pass = observed <= threshold;
  else if (relation == ">=")
    v.pass = observed >= threshold;
  else if (relation == "==")
    v.pass = observed == threshold;
  else
    throw std::invalid_argument("unknown relation: " + relation);
  verdicts.push_back(v);
}

bool ExperimentReport::all_pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["params"] = params;
  nlohmann::ordered_json ms = nlohmann::ordered_json::array();
  for (const auto& [label, value] : metrics) ms.push_back({{"label", label}, {"value", value}});
  j["metrics"] = ms;
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const auto& v : verdicts)
    vs.push_back({{"name", v.name},
                  {"pass", v.pass},
                  {"observed", v.observed},
                  {"threshold", v.threshold},
                  {"relation", v.relation},
                  {"criterion", v.criterion}});
  j["verdicts"] = vs;
  return j.dump(2) + "\n";
}

std::string ExperimentReport::metrics_csv() const {
  std::string out = "label,value\n";
  for (const auto& [label, value] : metrics) {
    out += label;
    out += ',';
    out += format_double(value);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace strongmax
