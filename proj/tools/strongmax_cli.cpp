// Command-line front end: field evaluation, verification suites, and
// standalone experiments with deterministic seeding and JSON/CSV reports.
//
//   strongmax eval --input f.json --query=-3,-3:3,3 --out out/field
//   strongmax verify all --seed 7 --out reports/
//   strongmax experiment --config exp.json --out reports/

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "strongmax/engine.hpp"
#include "strongmax/grid.hpp"
#include "strongmax/report.hpp"
#include "strongmax/seminorm.hpp"
#include "strongmax/variation.hpp"
#include "strongmax/verify.hpp"
#include "strongmax/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace strongmax;

namespace {

IntegerBox parse_query(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("query must be lo:hi");
  auto parse_vec = [](const std::string& part, IVec& v) {
    std::stringstream ss(part);
    std::string field;
    int dim = 0;
    while (std::getline(ss, field, ',')) {
      if (dim >= kMaxDim) throw std::invalid_argument("too many query components");
      v[dim++] = std::stoi(field);
    }
    return dim;
  };
  IVec a{}, b{};
  int da = parse_vec(text.substr(0, colon), a);
  int db = parse_vec(text.substr(colon + 1), b);
  if (da != db || da == 0) throw std::invalid_argument("query endpoints disagree in dimension");
  return make_box(da, a, b);  // throws if a > b (empty box)
}

std::vector<LatticeFunction> load_inputs(const std::string& path, int m) {
  std::vector<LatticeFunction> fs;
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    fs.push_back(lattice_from_sparse_csv(in));
  } else {
    fs = lattice_list_from_json_text(read_text_file(path));
  }
  if (m <= 0 || static_cast<int>(fs.size()) == m) return fs;
  if (fs.size() == 1) {
    std::vector<LatticeFunction> out(static_cast<size_t>(m), fs[0]);
    return out;
  }
  throw std::invalid_argument("input holds " + std::to_string(fs.size()) +
                              " functions, but m = " + std::to_string(m));
}

int run_eval(const std::string& input, const std::string& query, int m, const std::string& out,
             const std::string& format) {
  auto fs = load_inputs(input, m);
  IntegerBox box = parse_query(query);
  StrongMaxEngine engine(fs);
  if (box.dim != engine.dim()) throw std::invalid_argument("query dimension mismatch");
  MaximalField field = engine.field(box);

  fs::path base(out);
  if (base.has_parent_path()) fs::create_directories(base.parent_path());
  if (format == "csv")
    write_text_file(out + ".field.csv", lattice_to_sparse_csv(field.values));
  else
    write_text_file(out + ".field.json", lattice_to_json(field.values) + "\n");

  std::string argmax_csv;
  const int d = box.dim;
  IVec n = box.a;
  while (true) {
    const IntegerBox& bx = field.argmax_at(n);
    for (int i = 0; i < d; ++i) argmax_csv += std::to_string(n[i]) + ",";
    for (int i = 0; i < d; ++i) argmax_csv += std::to_string(bx.a[i]) + ",";
    for (int i = 0; i < d; ++i) argmax_csv += std::to_string(bx.b[i]) + ",";
    argmax_csv += format_double(field.values.at(n));
    argmax_csv += '\n';
    int i = d - 1;
    while (i >= 0) {
      if (++n[i] <= box.b[i]) break;
      n[i] = box.a[i];
      --i;
    }
    if (i < 0) break;
  }
  write_text_file(out + ".argmax.csv", argmax_csv);
  return 0;
}

void write_report(const ExperimentReport& rep, const std::string& out_dir) {
  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  write_text_file((dir / (rep.name + ".json")).string(), rep.to_json());
  write_text_file((dir / (rep.name + ".metrics.csv")).string(), rep.metrics_csv());
}

int run_verify(const std::string& suite, uint64_t seed, int threads, const std::string& out_dir) {
  VerifyOptions opts;
  opts.seed = seed;
  opts.threads = threads;
  auto reports = run_verify_suite(suite, opts);
  bool all = true;
  for (const auto& rep : reports) {
    write_report(rep, out_dir);
    for (const auto& v : rep.verdicts) {
      std::cout << (v.pass ? "PASS " : "FAIL ") << rep.name << "/" << v.name
                << " (observed=" << format_double(v.observed) << " " << v.relation
                << " threshold=" << format_double(v.threshold) << ")\n";
      all = all && v.pass;
    }
  }
  return all ? 0 : 1;
}

int run_experiment(const std::string& config_path, uint64_t seed, const std::string& out_dir) {
  nlohmann::json cfg = nlohmann::json::parse(read_text_file(config_path));
  if (!cfg.contains("op")) throw std::invalid_argument("config needs an \"op\" field");
  const std::string op = cfg.at("op").get<std::string>();
  if (cfg.contains("seed")) seed = cfg.at("seed").get<uint64_t>();

  ExperimentReport rep;
  rep.name = op;
  rep.seed = seed;
  for (auto& [key, value] : cfg.items()) rep.params[key] = value.dump();

  if (op == "delta_divergence") {
    int d = cfg.value("d", 2), N = cfg.value("N", 16);
    DeltaDivergence dd = delta_divergence(d, N);
    rep.metric("field_error", dd.field_error);
    rep.metric("partial_variation", dd.partial_variation);
    if (d == 2) rep.metric("closed_form", delta_divergence_closed_form(N));
  } else if (op == "grad_ratio_sweep") {
    int dim = cfg.value("dim", 2), m = cfg.value("m", 2), trials = cfg.value("trials", 50);
    std::vector<int> sizes = cfg.value("hull_sizes", std::vector<int>{5, 9});
    SplitMix64 rng(seed);
    for (int size : sizes) {
      double worst = 0.0;
      for (int t = 0; t < trials; ++t) {
        std::vector<LatticeFunction> fs;
        for (int j = 0; j < m; ++j) fs.push_back(random_spikes(rng, dim, size));
        worst = std::max(worst, grad_bound_ratio(fs).ratio);
      }
      rep.metric("max_ratio_hull_" + std::to_string(size), worst);
    }
  } else if (op == "uncentered_var") {
    int N = cfg.value("N", 40), trials = cfg.value("trials", 200), hull = cfg.value("hull", 6);
    SplitMix64 rng(seed);
    double min_defect = 1e300;
    for (int t = 0; t < trials; ++t) {
      auto [var, bound] = uncentered_var_bound(random_spikes(rng, 1, hull), N);
      min_defect = std::min(min_defect, bound - var);
    }
    rep.metric("min_defect", min_defect);
  } else if (op == "centered_var") {
    int trials = cfg.value("trials", 200), hull = cfg.value("hull", 6);
    SplitMix64 rng(seed);
    double min_defect = 1e300;
    for (int t = 0; t < trials; ++t) {
      auto [vm, vf] = centered_var_bound(random_spikes(rng, 1, hull));
      min_defect = std::min(min_defect, vf - vm);
    }
    rep.metric("min_defect", min_defect);
  } else if (op == "continuity") {
    int steps = cfg.value("steps", 12);
    SplitMix64 rng(seed);
    std::vector<LatticeFunction> fs = {LatticeFunction::delta(2), LatticeFunction::delta(2)};
    auto h = random_spikes(rng, 2, 3);
    h = scale(h, 1.0 / lp_norm(h, 1.0));
    ContinuitySequence seq = continuity_experiment(fs, {h, h}, steps);
    for (int i = 0; i < steps; ++i) {
      rep.metric("e_" + std::to_string(i + 1), seq.e[static_cast<size_t>(i)]);
      rep.metric("tail_bound_" + std::to_string(i + 1), seq.tail_bound[static_cast<size_t>(i)]);
    }
  } else {
    throw std::invalid_argument("unknown experiment op: " + op);
  }
  write_report(rep, out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact discrete multilinear strong maximal operator toolkit"};
  app.set_version_flag("--version", std::string(kVersion));

  uint64_t seed = 1;
  int threads = 0;
  std::string out_dir = "reports";
  std::string format = "json";

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a maximal field over a query box");
  std::string input, query, eval_out = "field";
  int m = 0;
  eval->add_option("--input", input, "LatticeFunction JSON (or sparse CSV) path")->required();
  eval->add_option("--query", query, "query box lo:hi, e.g. -3,-3:3,3")->required();
  eval->add_option("--m", m, "number of input functions (replicates a single document)");
  eval->add_option("--out", eval_out, "output path base");
  eval->add_option("--format", format, "field output format")
      ->check(CLI::IsMember({"json", "csv"}));
  eval->add_option("--threads", threads, "worker threads (0 = default)");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "lattice|engine|variation|continuum|all")->required();
  verify->add_option("--seed", seed, "root seed");
  verify->add_option("--out", out_dir, "report directory");
  verify->add_option("--threads", threads, "worker threads (0 = default)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a configured experiment");
  std::string config;
  experiment->add_option("--config", config, "experiment config JSON")->required();
  experiment->add_option("--seed", seed, "root seed (config value wins)");
  experiment->add_option("--out", out_dir, "report directory");
  experiment->add_option("--threads", threads, "worker threads (0 = default)");

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (eval->parsed()) return run_eval(input, query, m, eval_out, format);
    if (verify->parsed()) return run_verify(suite, seed, threads, out_dir);
    if (experiment->parsed()) return run_experiment(config, seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
