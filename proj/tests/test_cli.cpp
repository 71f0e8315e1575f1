#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "strongmax/lattice.hpp"
#include "strongmax/report.hpp"

using namespace strongmax;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(STRONGMAX_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "strongmax_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("eval writes the spike field and argmax csv") {
  fs::path dir = scratch();
  fs::path in = dir / "spike.json";
  write_text_file(in.string(), lattice_to_json(LatticeFunction::delta(1)));
  fs::path out = dir / "spike_out";
  REQUIRE(run("eval --input " + in.string() + " --query=-3:3 --out " + out.string()) == 0);

  auto field = lattice_from_json_text(read_text_file(out.string() + ".field.json"));
  for (int n = -3; n <= 3; ++n)
    CHECK(field.at(ivec(n)) == doctest::Approx(1.0 / (std::abs(n) + 1)).epsilon(1e-15));

  std::string argmax = read_text_file(out.string() + ".argmax.csv");
  CHECK(argmax.find("0,0,0,1") != std::string::npos);  // n=0: box [0,0], value 1
}

TEST_CASE("eval failure modes exit with status 2") {
  fs::path dir = scratch();
  fs::path bad = dir / "bad.json";
  write_text_file(bad.string(), "this is not json");
  CHECK(run("eval --input " + bad.string() + " --query=-3:3 --out " + (dir / "x").string()) == 2);

  fs::path good = dir / "good.json";
  write_text_file(good.string(), lattice_to_json(LatticeFunction::delta(1)));
  // empty query box (lo > hi)
  CHECK(run("eval --input " + good.string() + " --query=3:-3 --out " + (dir / "y").string()) == 2);
  // dimension mismatch
  CHECK(run("eval --input " + good.string() + " --query=-1,-1:1,1 --out " +
            (dir / "z").string()) == 2);
  // missing file
  CHECK(run("eval --input " + (dir / "missing.json").string() + " --query=-1:1 --out " +
            (dir / "w").string()) == 2);
}

TEST_CASE("verify lattice twice is byte-identical and exits 0") {
  fs::path a = scratch() / "rep_a";
  fs::path b = scratch() / "rep_b";
  REQUIRE(run("verify lattice --seed 7 --out " + a.string()) == 0);
  REQUIRE(run("verify lattice --seed 7 --out " + b.string()) == 0);
  CHECK(read_text_file((a / "lattice.json").string()) ==
        read_text_file((b / "lattice.json").string()));
  CHECK(read_text_file((a / "lattice.metrics.csv").string()) ==
        read_text_file((b / "lattice.metrics.csv").string()));
}

TEST_CASE("verify rejects unknown suites with exit 2") {
  CHECK(run("verify nonsense --out " + (scratch() / "r").string()) == 2);
}

TEST_CASE("experiment runs a configured op and rejects unknown ops") {
  fs::path dir = scratch();
  fs::path cfg = dir / "exp.json";
  write_text_file(cfg.string(), "{\"op\": \"delta_divergence\", \"d\": 2, \"N\": 8}");
  REQUIRE(run("experiment --config " + cfg.string() + " --out " + dir.string()) == 0);
  std::string rep = read_text_file((dir / "delta_divergence.json").string());
  CHECK(rep.find("partial_variation") != std::string::npos);
  std::string csv = read_text_file((dir / "delta_divergence.metrics.csv").string());
  CHECK(csv.find("partial_variation,") != std::string::npos);

  fs::path bad = dir / "bad_exp.json";
  write_text_file(bad.string(), "{\"op\": \"no_such_op\"}");
  CHECK(run("experiment --config " + bad.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("sparse csv input works for eval") {
  fs::path dir = scratch();
  fs::path in = dir / "pair.csv";
  write_text_file(in.string(), "0,1\n1,1\n");
  fs::path out = dir / "pair_out";
  REQUIRE(run("eval --input " + in.string() + " --query=0:2 --format csv --out " +
              out.string()) == 0);
  std::string field = read_text_file(out.string() + ".field.csv");
  CHECK(field.find("2,") != std::string::npos);
}
