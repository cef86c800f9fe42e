// bml: command line laboratory for the Biham-Middleton-Levine traffic
// automaton on the N x N torus.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error, 3 classification hit
// its resource limits (Undetermined).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bml/classify.hpp"
#include "bml/construct.hpp"
#include "bml/experiment.hpp"
#include "bml/grid.hpp"
#include "bml/io.hpp"
#include "bml/rng.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

struct RunOptions {
  int n = 0;
  long long m = -1;
  std::string grid_file;
  std::uint64_t seed = 0;
  long long steps = 0;
  std::string frames_dir;
  std::string format = "ascii";
};

struct ClassifyOptions {
  int n = 0;
  long long m = -1;
  std::string grid_file;
  std::uint64_t seed = 0;
  long long max_steps = 0;
  long long max_states = 0;
  bool monitor = false;
  std::string monitor_out;
};

struct ConstructOptions {
  int n = 0;
  long long m = 0;
  int diagonal = 0;
  std::string out_file;
};

struct SweepOptions {
  std::vector<int> n_values;
  std::vector<long long> m_values;
  std::vector<double> alpha_values;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::string out_file;
  int jobs = 1;
  long long max_steps = 0;
  long long max_states = 0;
};

struct EnumerateOptions {
  int n = 0;
  unsigned long long budget = bml::ConfigurationEnumerator::kDefaultBudget;
};

// Grid source shared by run and classify: either a GridText file or a seeded
// uniform-colored sample.
bml::Configuration load_or_sample(const std::string& grid_file, int n, long long m,
                                  std::uint64_t seed) {
  if (!grid_file.empty()) return bml::parse_grid(read_file(grid_file));
  return bml::sample_uniform_colored(n, m, seed);
}

int check_source_flags(const std::string& grid_file, int n, long long m) {
  if (!grid_file.empty()) {
    if (n != 0 || m >= 0) {
      std::cerr << "error: --grid excludes --n/--m\n";
      return 2;
    }
    return 0;
  }
  if (n <= 0 || m < 0) {
    std::cerr << "error: either --grid FILE or both --n and --m are required\n";
    return 2;
  }
  return 0;
}

std::string frame_name(long long t, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06lld", t);
  return std::string(buf) + ext;
}

int cmd_run(const RunOptions& opt) {
  if (const int rc = check_source_flags(opt.grid_file, opt.n, opt.m); rc != 0) return rc;
  if (opt.format != "ascii" && opt.format != "ppm") {
    std::cerr << "error: --format must be ascii or ppm\n";
    return 2;
  }
  const bml::RenderFormat format =
      opt.format == "ascii" ? bml::RenderFormat::Ascii : bml::RenderFormat::Ppm;
  const std::string ext = opt.format == "ascii" ? ".txt" : ".ppm";

  bml::Configuration c = load_or_sample(opt.grid_file, opt.n, opt.m, opt.seed);
  const bool frames = !opt.frames_dir.empty();
  if (frames) {
    fs::create_directories(opt.frames_dir);
    write_file((fs::path(opt.frames_dir) / frame_name(0, ext)).string(), bml::render(c, format));
  }
  for (long long t = 1; t <= opt.steps; ++t) {
    c = bml::step(c).config;
    if (frames) {
      write_file((fs::path(opt.frames_dir) / frame_name(t, ext)).string(), bml::render(c, format));
    }
  }
  std::cout << bml::render(c, format);
  return 0;
}

int cmd_classify(const ClassifyOptions& opt) {
  if (const int rc = check_source_flags(opt.grid_file, opt.n, opt.m); rc != 0) return rc;
  const bml::Configuration c = load_or_sample(opt.grid_file, opt.n, opt.m, opt.seed);

  bml::ClassifyLimits limits = bml::ClassifyLimits::defaults_for(c.n());
  if (opt.max_steps > 0) limits.max_steps = opt.max_steps;
  if (opt.max_states > 0) limits.max_states = opt.max_states;

  const bml::ClassifyDetail detail = bml::classify_detailed(c, limits);

  bml::ResultRecord record;
  if (opt.grid_file.empty()) record.seed = opt.seed;
  record.n = c.n();
  record.m = c.car_count();
  record.red = c.red_count();
  record.blue = c.blue_count();
  record.sampler = opt.grid_file.empty() ? "uniform" : "grid";
  record.verdict = detail.verdict.kind;
  record.t_org = detail.verdict.t_org;
  record.t_stuck = detail.verdict.t_stuck;
  record.period = detail.verdict.period;
  if (detail.verdict.period_moves && detail.verdict.period) {
    record.speed = std::make_pair(
        static_cast<unsigned long long>(*detail.verdict.period_moves),
        static_cast<unsigned long long>(c.car_count()) *
            static_cast<unsigned long long>(*detail.verdict.period));
  }
  if (detail.verdict.kind == bml::VerdictKind::SpeedOne) record.collisions = detail.blocked_events;
  record.steps_spent = detail.verdict.steps_spent;

  if (opt.monitor) {
    std::ofstream file;
    std::ostream* out = &std::cerr;
    if (!opt.monitor_out.empty()) {
      file.open(opt.monitor_out, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + opt.monitor_out + " for writing");
      out = &file;
    }
    record.monitor_pass = bml::run_monitored(
        c, detail.verdict.steps_spent,
        [out](const bml::MonitorStepRecord& rec) { *out << bml::monitor_record_json(rec) << '\n'; });
  }

  std::cout << bml::csv_header() << bml::to_csv_line(record);
  return detail.verdict.kind == bml::VerdictKind::Undetermined ? 3 : 0;
}

int cmd_construct_stuck(const ConstructOptions& opt) {
  const bml::Configuration c = bml::construct_stuck(opt.n, opt.m, opt.diagonal);
  const std::string text = bml::serialize_grid(c);
  if (opt.out_file.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out_file, text);
  }
  return 0;
}

int cmd_sweep(const SweepOptions& opt) {
  if (opt.m_values.empty() == opt.alpha_values.empty()) {
    std::cerr << "error: exactly one of --m-list or --alpha-list is required\n";
    return 2;
  }
  bml::SweepSpec spec;
  spec.n_values = opt.n_values;
  spec.m_values = opt.m_values;
  spec.alpha_values = opt.alpha_values;
  spec.trials = opt.trials;
  spec.base_seed = opt.seed;
  spec.jobs = opt.jobs;
  if (opt.max_steps > 0 || opt.max_states > 0) {
    bml::ClassifyLimits limits = bml::ClassifyLimits::defaults_for(
        *std::max_element(opt.n_values.begin(), opt.n_values.end()));
    if (opt.max_steps > 0) limits.max_steps = opt.max_steps;
    if (opt.max_states > 0) limits.max_states = opt.max_states;
    spec.limits = limits;
  }

  const bml::SweepResult result = bml::sweep(spec);

  std::string csv = bml::csv_header();
  for (const bml::TrialResult& trial : result.trials) {
    csv += bml::to_csv_line(bml::make_result_record(trial));
  }
  write_file(opt.out_file, csv);

  std::cerr << "# rng: " << bml::Rng::name
            << "; per-trial seed = split_mix(split_mix(split_mix(base)+point)+trial)\n";
  for (const bml::Aggregate& agg : result.aggregates) {
    std::cerr << "n=" << agg.point.n << " m=" << agg.point.m;
    if (agg.point.alpha) std::cerr << " alpha=" << *agg.point.alpha;
    std::cerr << " trials=" << agg.trials << " speed_one=" << agg.frac_speed_one
              << " stuck=" << agg.frac_stuck << " intermediate=" << agg.frac_intermediate
              << " undetermined=" << agg.frac_undetermined;
    if (agg.collision_mean) {
      std::cerr << " collisions_mean=" << *agg.collision_mean
                << " collisions_median=" << *agg.collision_median
                << " collisions_max=" << *agg.collision_max;
    }
    std::cerr << " stuck_wilson95=[" << agg.wilson_low << "," << agg.wilson_high << "]\n";
  }
  return 0;
}

int cmd_enumerate_check(const EnumerateOptions& opt) {
  const bml::ThresholdReport report = bml::verify_no_stuck_below_threshold(opt.n, opt.budget);
  for (const auto& [m, examined] : report.per_m) {
    std::cout << "m=" << m << " examined=" << examined << "\n";
  }
  std::cout << "total=" << report.examined << " fixed_points=" << report.violations.size() << " "
            << (report.pass() ? "PASS" : "FAIL") << "\n";
  for (const std::string& key : report.violations) std::cout << "violation: " << key << "\n";
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biham-Middleton-Levine traffic automaton laboratory"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Simulate a fixed number of steps");
  run->add_option("--n", run_opt.n, "Torus side");
  run->add_option("--m", run_opt.m, "Car count for uniform sampling");
  run->add_option("--grid", run_opt.grid_file, "GridText file to start from");
  run->add_option("--seed", run_opt.seed, "Sampling seed (default 0)");
  run->add_option("--steps", run_opt.steps, "Steps to simulate")->required();
  run->add_option("--emit-frames", run_opt.frames_dir, "Directory for per-step frames");
  run->add_option("--format", run_opt.format, "ascii or ppm (default ascii)");

  ClassifyOptions cls_opt;
  CLI::App* cls = app.add_subcommand("classify", "Decide the fate of a trajectory");
  cls->add_option("--n", cls_opt.n, "Torus side");
  cls->add_option("--m", cls_opt.m, "Car count for uniform sampling");
  cls->add_option("--grid", cls_opt.grid_file, "GridText file to classify");
  cls->add_option("--seed", cls_opt.seed, "Sampling seed (default 0)");
  cls->add_option("--max-steps", cls_opt.max_steps, "Step limit (default 10 N^3)");
  cls->add_option("--max-states", cls_opt.max_states, "Stored state limit (default 10^6)");
  cls->add_flag("--monitor", cls_opt.monitor, "Re-run under the certificate monitor, JSONL per step");
  cls->add_option("--monitor-out", cls_opt.monitor_out, "Monitor JSONL file (default stderr)");

  ConstructOptions con_opt;
  CLI::App* construct = app.add_subcommand("construct", "Build special configurations");
  CLI::App* stuck = construct->add_subcommand("stuck", "Gridlocked configuration with m >= 2N cars");
  stuck->add_option("--n", con_opt.n, "Torus side")->required();
  stuck->add_option("--m", con_opt.m, "Car count, 2N <= m <= N^2")->required();
  stuck->add_option("--diagonal", con_opt.diagonal, "Base diagonal c (default 0)");
  stuck->add_option("-o,--out", con_opt.out_file, "Output file (default stdout)");
  construct->require_subcommand(1);

  SweepOptions sweep_opt;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Seeded Monte Carlo sweep over (n, m) points");
  sweep_cmd->add_option("--n", sweep_opt.n_values, "Torus sides")->required();
  sweep_cmd->add_option("--m-list", sweep_opt.m_values, "Car counts");
  sweep_cmd->add_option("--alpha-list", sweep_opt.alpha_values, "Exponents: m = ceil(n^(1+alpha))");
  sweep_cmd->add_option("--trials", sweep_opt.trials, "Trials per point")->required();
  sweep_cmd->add_option("--seed", sweep_opt.seed, "Base seed (required for reproducibility)")
      ->required();
  sweep_cmd->add_option("--out", sweep_opt.out_file, "CSV output file")->required();
  sweep_cmd->add_option("--jobs", sweep_opt.jobs, "Worker threads (default 1)");
  sweep_cmd->add_option("--max-steps", sweep_opt.max_steps, "Step limit override");
  sweep_cmd->add_option("--max-states", sweep_opt.max_states, "Stored state limit override");

  EnumerateOptions enum_opt;
  CLI::App* enumerate = app.add_subcommand("enumerate-check",
                                           "Exhaustively verify no gridlock below 2N cars");
  enumerate->add_option("--n", enum_opt.n, "Torus side (enumeration is exponential)")->required();
  enumerate->add_option("--budget", enum_opt.budget, "Enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (cls->parsed()) return cmd_classify(cls_opt);
    if (construct->parsed()) return cmd_construct_stuck(con_opt);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opt);
    if (enumerate->parsed()) return cmd_enumerate_check(enum_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
