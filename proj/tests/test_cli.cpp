#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bml/construct.hpp"
#include "bml/experiment.hpp"
#include "bml/io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct CliOutcome {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the built CLI via the shell, capturing exit code and both streams.
CliOutcome run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.bin";
  const fs::path err = dir / "stderr.bin";
  const std::string cmd = std::string(BML_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  CliOutcome result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::current_path() / ("cli_tmp_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("construct stuck writes the golden grid and rejects small m") {
  TempDir tmp("construct");
  const fs::path grid = tmp.path / "stuck.txt";
  const CliOutcome ok = run_cli("construct stuck --n 3 --m 6 -o " + grid.string(), tmp.path);
  CHECK(ok.exit_code == 0);
  CHECK(slurp(grid) == "N 3\n.BR\nBR.\nR.B\n");

  const CliOutcome bad = run_cli("construct stuck --n 4 --m 7", tmp.path);
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("2N = 8") != std::string::npos);

  const CliOutcome to_stdout = run_cli("construct stuck --n 3 --m 6", tmp.path);
  CHECK(to_stdout.exit_code == 0);
  CHECK(to_stdout.out == "N 3\n.BR\nBR.\nR.B\n");
}

TEST_CASE("classify emits one record and maps undetermined to exit 3") {
  TempDir tmp("classify");
  const CliOutcome speed_one = run_cli("classify --n 16 --m 7 --seed 1", tmp.path);
  CHECK(speed_one.exit_code == 0);
  CHECK(speed_one.out.find("SpeedOne") != std::string::npos);
  CHECK(speed_one.out.substr(0, 5) == "seed,");
  CHECK(std::count(speed_one.out.begin(), speed_one.out.end(), '\n') == 2);

  const fs::path grid = tmp.path / "stuck.txt";
  REQUIRE(run_cli("construct stuck --n 4 --m 8 -o " + grid.string(), tmp.path).exit_code == 0);
  const CliOutcome stuck = run_cli("classify --grid " + grid.string(), tmp.path);
  CHECK(stuck.exit_code == 0);
  CHECK(stuck.out.find(",grid,Stuck,") != std::string::npos);

  const CliOutcome undet = run_cli("classify --n 8 --m 20 --seed 3 --max-steps 1", tmp.path);
  CHECK(undet.exit_code == 3);
  CHECK(undet.out.find("Undetermined") != std::string::npos);
}

TEST_CASE("classify --monitor writes one json object per step") {
  TempDir tmp("monitor");
  const fs::path log = tmp.path / "monitor.jsonl";
  const CliOutcome r = run_cli("classify --n 8 --m 12 --seed 9 --monitor --monitor-out " +
                                   log.string(),
                               tmp.path);
  CHECK(r.exit_code == 0);
  CHECK((r.out.find(",true\n") != std::string::npos));  // monitor_pass column
  const std::string jsonl = slurp(log);
  CHECK(jsonl.find("\"arc_static\":true") != std::string::npos);
  // One line per simulated step.
  const auto lines = std::count(jsonl.begin(), jsonl.end(), '\n');
  const std::string record_line = r.out.substr(r.out.find('\n') + 1);
  std::size_t fields = 0;
  std::size_t steps_col = 0;
  for (std::size_t pos = 0, next = 0; next != std::string::npos; pos = next + 1) {
    next = record_line.find(',', pos);
    ++fields;
    if (fields == 13) steps_col = std::stoull(record_line.substr(pos, next - pos));
  }
  CHECK(lines == static_cast<long long>(steps_col));
}

TEST_CASE("run emits frames named by post-step time") {
  TempDir tmp("run");
  const fs::path frames = tmp.path / "frames";
  const CliOutcome r = run_cli(
      "run --n 4 --m 3 --seed 1 --steps 5 --emit-frames " + frames.string() + " --format ascii",
      tmp.path);
  CHECK(r.exit_code == 0);
  for (int t = 0; t <= 5; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.txt", t);
    CHECK(fs::exists(frames / name));
  }
  CHECK_FALSE(fs::exists(frames / "frame_000006.txt"));
  // frame 0 is the initial sample; the final frame equals stdout.
  CHECK(slurp(frames / "frame_000000.txt") ==
        bml::serialize_grid(bml::sample_uniform_colored(4, 3, 1)));
  CHECK(slurp(frames / "frame_000005.txt") == r.out);
}

TEST_CASE("run --format ppm renders binary frames") {
  TempDir tmp("ppm");
  const CliOutcome r = run_cli("run --n 2 --m 0 --steps 0 --format ppm", tmp.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == std::string("P6\n2 2\n255\n") + std::string(12, '\xff'));
}

TEST_CASE("sweep produces byte-identical csv for any jobs value") {
  TempDir tmp("sweep");
  const fs::path csv1 = tmp.path / "a.csv";
  const fs::path csv4 = tmp.path / "b.csv";
  const std::string base = "sweep --n 6 --n 8 --m-list 4 --m-list 9 --trials 6 --seed 11 ";
  const CliOutcome a = run_cli(base + "--jobs 1 --out " + csv1.string(), tmp.path);
  const CliOutcome b = run_cli(base + "--jobs 4 --out " + csv4.string(), tmp.path);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  const std::string bytes1 = slurp(csv1);
  CHECK(bytes1 == slurp(csv4));
  CHECK(bytes1.substr(0, 5) == "seed,");
  CHECK(std::count(bytes1.begin(), bytes1.end(), '\n') == 1 + 4 * 6);
  CHECK(a.err.find("stuck_wilson95=") != std::string::npos);
  CHECK(a.err.find("rng:") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  TempDir tmp("usage");
  CHECK(run_cli("frobnicate", tmp.path).exit_code == 2);
  CHECK(run_cli("classify", tmp.path).exit_code == 2);            // no source
  CHECK(run_cli("classify --n 4", tmp.path).exit_code == 2);      // missing --m
  CHECK(run_cli("run --n 4 --m 2 --grid x --steps 1", tmp.path).exit_code == 2);
  CHECK(run_cli("sweep --n 4 --m-list 2 --trials 1 --out x.csv", tmp.path).exit_code == 2);  // no seed
  CHECK(run_cli("sweep --n 4 --trials 1 --seed 1 --out x.csv", tmp.path).exit_code == 2);    // no m/alpha
  CHECK(run_cli("run --n 4 --m 2 --steps 1 --format gif", tmp.path).exit_code == 2);
}

TEST_CASE("enumerate-check reports and passes on tiny tori") {
  TempDir tmp("enum");
  const CliOutcome r = run_cli("enumerate-check --n 2", tmp.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("total=64 fixed_points=0 PASS") != std::string::npos);

  const CliOutcome over_budget = run_cli("enumerate-check --n 3 --budget 10", tmp.path);
  CHECK(over_budget.exit_code == 1);
  CHECK(over_budget.err.find("budget") != std::string::npos);
}
