#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "critic/critical.hpp"
#include "critic/io.hpp"
#include "support/random_fixtures.hpp"

namespace fs = std::filesystem;
using namespace critic;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("critic-cli-" + name);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_map(const fs::path& path) {
  std::ofstream out(path);
  out << R"({"poly": [[-6.0, 0.0], [0.0, 0.0], [1.0, 0.0]], "b": [0.1, 0.0]})";
}

}  // namespace

TEST_CASE("sample-julia") {
  TempDir dir("sample");
  const fs::path map = dir.path / "map.json";
  write_map(map);

  // iters = 0 echoes the whole grid.
  CHECK(run_cli("sample-julia --map " + map.string() + " --grid-n 12 --iters 0 --out " +
                dir.path.string()) == 0);
  std::string text = slurp(dir.path / "julia_sample.jsonl");
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 144);

  // Shallow two-sided window is nonempty at this resolution.
  CHECK(run_cli("sample-julia --map " + map.string() + " --grid-n 60 --iters 2 --out " +
                dir.path.string()) == 0);
  text = slurp(dir.path / "julia_sample.jsonl");
  CHECK(std::count(text.begin(), text.end(), '\n') > 1);
  CHECK(text.find("\"v\":1") != std::string::npos);
  CHECK(text.find("config_hash") != std::string::npos);

  // Malformed map spec: exit 2.
  const fs::path bad = dir.path / "bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK(run_cli("sample-julia --map " + bad.string() + " --out " +
                dir.path.string()) == 2);
}

TEST_CASE("detect-critical exit codes") {
  TempDir dir("detect");

  // Dominated control: exit 0, no reports.
  const fs::path dominated = dir.path / "dominated.jsonl";
  io::write_orbit_jsonl(
      critic::testing::constant_orbit(
          Mat2C::diag(Complex{0.8, 0.0}, Complex{0.1, 0.0}), 8, 8, "dominated"),
      dominated);
  CHECK(run_cli("detect-critical --orbit " + dominated.string() +
                " --K 5 --out " + dir.path.string()) == 0);
  CHECK(slurp(dir.path / "critical_reports.json").find("\"count\": 0") !=
        std::string::npos);

  // Synthetic tangency fixture: exit 3 with reports.
  const fs::path tangency = dir.path / "tangency.jsonl";
  io::write_orbit_jsonl(make_tangency_orbit(8, 8), tangency);
  CHECK(run_cli("detect-critical --orbit " + tangency.string() +
                " --K 5 --out " + dir.path.string()) == 3);
  const std::string reports = slurp(dir.path / "critical_reports.json");
  CHECK(reports.find("\"count\": 3") != std::string::npos);  // all three grid betas
  CHECK(slurp(dir.path / "critical_summary.csv").find("synthetic-tangency,0") !=
        std::string::npos);

  // Empty input: exit 2.
  const fs::path empty = dir.path / "empty.jsonl";
  {
    std::ofstream out(empty);
  }
  CHECK(run_cli("detect-critical --orbit " + empty.string() + " --out " +
                dir.path.string()) == 2);

  // Horizon exceeding the data: exit 2.
  CHECK(run_cli("detect-critical --orbit " + tangency.string() +
                " --K 12 --out " + dir.path.string()) == 2);
}

TEST_CASE("check-domination exit codes") {
  TempDir dir("dom");

  const fs::path dominated = dir.path / "dominated.jsonl";
  io::write_orbit_jsonl(
      critic::testing::constant_orbit(
          Mat2C::diag(Complex{0.8, 0.0}, Complex{0.1, 0.0}), 0, 12, "dominated"),
      dominated);
  CHECK(run_cli("check-domination --orbit " + dominated.string() +
                " --N 10 --lambda 4 --out " + dir.path.string()) == 0);
  CHECK(slurp(dir.path / "domination_certificate.json").find("\"pass\": true") !=
        std::string::npos);

  std::mt19937_64 rng(81);
  const fs::path rotation = dir.path / "rotation.jsonl";
  io::write_orbit_jsonl(
      critic::testing::constant_orbit(critic::testing::random_su2(rng), 0, 12,
                                      "rotation"),
      rotation);
  CHECK(run_cli("check-domination --orbit " + rotation.string() +
                " --N 10 --lambda 1.5 --out " + dir.path.string()) == 3);
}

TEST_CASE("pliss-times golden output") {
  TempDir dir("pliss");
  const fs::path seq = dir.path / "seq.csv";
  {
    std::ofstream out(seq);
    out << "n,value\n0,2\n1,2\n2,0.5\n3,2\n";
  }
  CHECK(run_cli("pliss-times --seq " + seq.string() + " --gamma1 1.0 --out " +
                dir.path.string()) == 0);
  const std::string csv = slurp(dir.path / "pliss_times.csv");
  const size_t body = csv.find("k\n");
  REQUIRE(body != std::string::npos);
  CHECK(csv.substr(body) == "k\n0\n2\n3\n");

  // Constant doubling: every index.
  const fs::path seq2 = dir.path / "seq2.json";
  {
    std::ofstream out(seq2);
    out << "[2, 2, 2]";
  }
  CHECK(run_cli("pliss-times --seq " + seq2.string() + " --gamma1 1.0 --out " +
                dir.path.string()) == 0);
  const std::string csv2 = slurp(dir.path / "pliss_times.csv");
  CHECK(csv2.substr(csv2.find("k\n")) == "k\n0\n1\n2\n");

  // (0.5, 0.5): only the vacuous last index.
  const fs::path seq3 = dir.path / "seq3.json";
  {
    std::ofstream out(seq3);
    out << "[0.5, 0.5]";
  }
  CHECK(run_cli("pliss-times --seq " + seq3.string() + " --gamma1 1.0 --out " +
                dir.path.string()) == 0);
  CHECK(slurp(dir.path / "pliss_times.csv").find("k\n1\n") != std::string::npos);

  // Non-positive entries are a data error.
  const fs::path seq4 = dir.path / "seq4.json";
  {
    std::ofstream out(seq4);
    out << "[1, -2]";
  }
  CHECK(run_cli("pliss-times --seq " + seq4.string() + " --out " +
                dir.path.string()) == 2);
}

TEST_CASE("report aggregates outputs") {
  TempDir dir("report");
  const fs::path tangency = dir.path / "tangency.jsonl";
  io::write_orbit_jsonl(make_tangency_orbit(8, 8), tangency);
  CHECK(run_cli("detect-critical --orbit " + tangency.string() + " --K 5 --out " +
                dir.path.string()) == 3);
  CHECK(run_cli("report --out " + dir.path.string()) == 0);
  const std::string report = slurp(dir.path / "report.csv");
  CHECK(report.find("critical-reports") != std::string::npos);

  CHECK(run_cli("report --out " + (dir.path / "missing").string()) == 2);
}

TEST_CASE("config file mirrors flags") {
  TempDir dir("config");
  const fs::path tangency = dir.path / "tangency.jsonl";
  io::write_orbit_jsonl(make_tangency_orbit(8, 8), tangency);
  const fs::path config = dir.path / "run.json";
  {
    std::ofstream out(config);
    out << "{\"orbit\": \"" << tangency.string() << "\", \"K\": 5, \"out\": \""
        << dir.path.string() << "\"}";
  }
  CHECK(run_cli("detect-critical --config " + config.string()) == 3);
  // Flags override the config: a horizon the data cannot host.
  CHECK(run_cli("detect-critical --config " + config.string() + " --K 12") == 2);
}

TEST_CASE("determinism across reruns and thread counts") {
  TempDir shared("det-in");
  TempDir dir1("det1");
  TempDir dir2("det2");
  const fs::path tangency = shared.path / "t.jsonl";
  io::write_orbit_jsonl(make_tangency_orbit(8, 8), tangency);

  CHECK(run_cli("detect-critical --orbit " + tangency.string() +
                " --K 5 --threads 1 --out " + dir1.path.string()) == 3);
  CHECK(run_cli("detect-critical --orbit " + tangency.string() +
                " --K 5 --threads 8 --out " + dir2.path.string()) == 3);
  CHECK(slurp(dir1.path / "critical_reports.json") ==
        slurp(dir2.path / "critical_reports.json"));
  CHECK(slurp(dir1.path / "critical_summary.csv") ==
        slurp(dir2.path / "critical_summary.csv"));
}

TEST_CASE("env var thread fallback is accepted") {
  TempDir dir("env");
  const fs::path tangency = dir.path / "t.jsonl";
  io::write_orbit_jsonl(make_tangency_orbit(8, 8), tangency);
  const std::string cmd = "COCYCLE_CRITIC_THREADS=3 " + std::string(CLI_BINARY_PATH) +
                          " detect-critical --orbit " + tangency.string() +
                          " --K 5 --out " + dir.path.string() +
                          " > /dev/null 2> /dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 3);
}
