// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus a short
// summary. Exits nonzero iff any criterion fails. Expected total runtime is a
// few minutes on a desktop machine.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "bml/classify.hpp"
#include "bml/construct.hpp"
#include "bml/diagonal.hpp"
#include "bml/experiment.hpp"
#include "bml/grid.hpp"
#include "bml/io.hpp"
#include "bml/rng.hpp"
#include "../oracle.hpp"

using namespace bml;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// 1. With m = ceil(N/2) - 1 cars every random start attains speed one.
Outcome deterministic_speed_one_threshold() {
  long long passed = 0, total = 0;
  for (const int n : {8, 16, 32, 64}) {
    const long long m = (n + 1) / 2 - 1;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const Configuration c =
          sample_uniform_colored(n, m, derive_trial_seed(101, static_cast<std::uint64_t>(n), trial));
      ++total;
      if (classify(c, ClassifyLimits::defaults_for(n)).kind == VerdictKind::SpeedOne) ++passed;
    }
  }
  return {passed == total, fmt("%lld/%lld trials ended SpeedOne", passed, total)};
}

// 2. Exhaustive check: below 2N cars no configuration is a fixed point.
Outcome no_gridlock_below_threshold() {
  const ThresholdReport r2 = verify_no_stuck_below_threshold(2);
  const ThresholdReport r3 = verify_no_stuck_below_threshold(3);
  const bool pass = r2.pass() && r3.pass();
  return {pass, fmt("N=2: %llu configurations, N=3: %llu configurations, %zu fixed points found",
                    r2.examined, r3.examined, r2.violations.size() + r3.violations.size())};
}

// 3. The two-diagonal construction is a fixed point for every admissible
//    (N, m, c).
Outcome gridlock_construction_is_stuck() {
  long long verified = 0, failures = 0, skipped = 0;
  for (int n = 3; n <= 32; ++n) {
    const long long cells = static_cast<long long>(n) * n;
    for (const long long m :
         {2LL * n, 2LL * n + 1, 2LL * n + 5, std::min(cells, 3LL * n)}) {
      if (m > cells) {
        ++skipped;  // 2N+5 exceeds N^2 at N=3
        continue;
      }
      for (const int c : {0, 1, n - 1}) {
        ++verified;
        if (!is_fixed_point(construct_stuck(n, m, c))) ++failures;
      }
    }
  }
  return {failures == 0,
          fmt("%lld constructions verified as fixed points, %lld out-of-range m skipped, %lld failures",
              verified, skipped, failures)};
}

// 4. Certificate monitor: arc persistence, long-arc monotonicity, the per-car
//    projection law, and the guaranteed long arc under N/2 cars, at every step
//    of 1000 random trajectories.
Outcome certificates_on_random_trajectories() {
  long long trajectories = 0, monitored_steps = 0, failures = 0;
  Rng rng(404);
  const int sides[] = {8, 16, 32};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = sides[trial % 3];
    const long long cells = static_cast<long long>(n) * n;
    const long long m = 1 + static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(cells / 2)));
    const std::uint64_t seed = rng.next();
    const Configuration c = trial % 2 == 0
                                ? sample_uniform_colored(n, m, seed)
                                : sample_bicolor(n, (m + 1) / 2, m / 2, seed);
    const ClassifyDetail detail = classify_detailed(c, ClassifyLimits::defaults_for(n));
    ++trajectories;
    monitored_steps += detail.verdict.steps_spent;
    if (!run_monitored(c, detail.verdict.steps_spent)) ++failures;
  }
  return {failures == 0, fmt("%lld trajectories, %lld monitored steps, %lld certificate failures",
                             trajectories, monitored_steps, failures)};
}

// 5. Classifier agrees exactly with the brute-force state-graph oracle on
//    every N=3 configuration with at most 4 cars.
Outcome classifier_matches_oracle_exhaustively() {
  long long checked = 0, mismatches = 0;
  for (int m = 0; m <= 4; ++m) {
    ConfigurationEnumerator stream(3, m);
    while (auto c = stream.next()) {
      ++checked;
      const Verdict got = classify(*c, ClassifyLimits::defaults_for(3));
      const bml::testing::OracleOutcome want = bml::testing::oracle_classify(*c);
      bool ok = got.kind == want.kind;
      if (ok) {
        switch (want.kind) {
          case VerdictKind::SpeedOne: ok = got.t_org == want.t_org; break;
          case VerdictKind::Stuck: ok = got.t_stuck == want.t_stuck; break;
          case VerdictKind::Intermediate:
            ok = got.cycle_entry == want.cycle_entry && got.period == want.period &&
                 got.period_moves == want.period_moves;
            break;
          default: ok = false;
        }
      }
      if (!ok) ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%lld configurations, %lld disagreements", checked, mismatches)};
}

// 6. Speed-one shortcut soundness: 10 N extra steps past t_org never block.
Outcome organization_time_is_final() {
  long long speed_one_trials = 0, violations = 0;
  Rng rng(606);
  for (std::uint64_t attempt = 0; attempt < 2000 && speed_one_trials < 200; ++attempt) {
    const int n = 16;
    const long long m = 1 + static_cast<long long>(rng.bounded(16));
    const Configuration c = sample_uniform_colored(n, m, rng.next());
    const Verdict v = classify(c, ClassifyLimits::defaults_for(n));
    if (v.kind != VerdictKind::SpeedOne) continue;
    ++speed_one_trials;
    Configuration cur = c;
    for (long long t = 0; t < *v.t_org; ++t) cur = step(cur).config;
    for (long long t = 0; t < 10LL * n; ++t) {
      const StepResult r = step(cur);
      if (r.stats.blocked() != 0) {
        ++violations;
        break;
      }
      cur = std::move(r.config);
    }
  }
  return {speed_one_trials == 200 && violations == 0,
          fmt("%lld SpeedOne trials replayed 10N steps past t_org, %lld late blocks",
              speed_one_trials, violations)};
}

// 7. Bicolor(ceil(N ln N)) trials at N=32: every stuck fixed point has a blue
//    in every column and a red in every row; the stuck fraction is reported
//    with its 95% Wilson interval, not asserted.
Outcome sparse_bicolor_gridlock_probe() {
  const int n = 32;
  const long long per_color = static_cast<long long>(std::ceil(n * std::log(n)));
  long long stuck = 0, condition_failures = 0, undetermined = 0;
  const long long trials = 200;
  for (std::uint64_t trial = 0; trial < static_cast<std::uint64_t>(trials); ++trial) {
    const Configuration c =
        sample_bicolor(n, per_color, per_color, derive_trial_seed(707, 0, trial));
    const ClassifyDetail detail = classify_detailed(c, ClassifyLimits::defaults_for(n));
    if (detail.verdict.kind == VerdictKind::Stuck) {
      ++stuck;
      if (!stuck_necessary_condition(detail.final_config)) ++condition_failures;
    }
    if (detail.verdict.kind == VerdictKind::Undetermined) ++undetermined;
  }
  const auto [lo, hi] = wilson_interval(stuck, trials);
  return {condition_failures == 0,
          fmt("%lld cars/color, stuck %lld/%lld (fraction %.4f, Wilson95 [%.4f, %.4f]), "
              "%lld undetermined, %lld necessary-condition failures",
              per_color, stuck, trials, static_cast<double>(stuck) / trials, lo, hi, undetermined,
              condition_failures)};
}

// 8. Sweeps are deterministic: csv bytes are independent of the jobs count.
Outcome sweep_is_parallel_deterministic() {
  SweepSpec spec;
  spec.n_values = {8, 16};
  spec.m_values = {8, 16};
  spec.trials = 10;
  spec.base_seed = 4242;
  spec.jobs = 1;
  const SweepResult serial = sweep(spec);
  spec.jobs = 4;
  const SweepResult parallel = sweep(spec);
  const auto to_csv = [](const SweepResult& r) {
    std::string csv = csv_header();
    for (const TrialResult& t : r.trials) csv += to_csv_line(make_result_record(t));
    return csv;
  };
  const std::string a = to_csv(serial);
  const std::string b = to_csv(parallel);
  return {a == b, fmt("%zu csv bytes, jobs=1 vs jobs=4 %s", a.size(),
                      a == b ? "identical" : "differ")};
}

// 9. Formats: serialize/parse round-trip on 1000 random configurations, and
//    the golden grid and ppm bytes of the N=3 construction are stable.
Outcome formats_round_trip() {
  long long failures = 0;
  Rng rng(909);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.bounded(16));
    const long long cells = static_cast<long long>(n) * n;
    const long long m = static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(cells + 1)));
    const Configuration c = sample_uniform_colored(n, m, rng.next());
    const std::string text = serialize_grid(c);
    if (parse_grid(text) != c || serialize_grid(parse_grid(text)) != text) ++failures;
  }
  const Configuration golden = construct_stuck(3, 6, 0);
  const std::string expected_grid = "N 3\n.BR\nBR.\nR.B\n";
  static const char kGoldenPixels[] =
      "\xff\xff\xff\x00\x00\xff\xff\x00\x00"   // top row (i=2): . B R
      "\x00\x00\xff\xff\x00\x00\xff\xff\xff"   // middle row:    B R .
      "\xff\x00\x00\xff\xff\xff\x00\x00\xff";  // bottom row:    R . B
  const std::string expected_ppm = std::string("P6\n3 3\n255\n") + std::string(kGoldenPixels, 27);
  if (serialize_grid(golden) != expected_grid) ++failures;
  if (render_ppm(golden) != expected_ppm) ++failures;
  return {failures == 0, fmt("1000 round trips plus golden grid/ppm, %lld failures", failures)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"speed one below N/2 cars", deterministic_speed_one_threshold},
      {"no gridlock below 2N cars (exhaustive)", no_gridlock_below_threshold},
      {"gridlock construction is a fixed point", gridlock_construction_is_stuck},
      {"diagonal certificates on random trajectories", certificates_on_random_trajectories},
      {"classifier agrees with brute-force oracle", classifier_matches_oracle_exhaustively},
      {"organization time is final", organization_time_is_final},
      {"sparse bicolor gridlock probe", sparse_bicolor_gridlock_probe},
      {"sweep determinism under parallelism", sweep_is_parallel_deterministic},
      {"format round-trip and goldens", formats_round_trip},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %d/9 %s: %s\n", outcome.pass ? "PASS" : "FAIL", index, criterion.name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
