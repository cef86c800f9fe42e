#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "bml/classify.hpp"
#include "bml/diagonal.hpp"
#include "bml/grid.hpp"
#include "bml/rng.hpp"

namespace bml {

/// m distinct cells chosen uniformly among all m-subsets (partial
/// Fisher-Yates over cell indices), each car colored red or blue by a fair
/// coin drawn right after its cell. Deterministic given the seed.
Configuration sample_uniform_colored(int n, long long m, std::uint64_t seed);

/// n_red + n_blue distinct cells chosen uniformly, then exactly n_red of them
/// made red by a second partial shuffle of the selection. Deterministic given
/// the seed.
Configuration sample_bicolor(int n, long long n_red, long long n_blue, std::uint64_t seed);

enum class SamplerKind { UniformColored, Bicolor };

std::string_view to_string(SamplerKind k);

struct TrialSpec {
  int n = 0;
  SamplerKind sampler = SamplerKind::UniformColored;
  long long m = 0;                   // UniformColored car count
  long long n_red = 0;               // Bicolor counts
  long long n_blue = 0;
  std::uint64_t seed = 0;
  ClassifyLimits limits{};           // non-positive fields resolve to defaults_for(n)
  bool monitor = false;

  long long car_count() const { return sampler == SamplerKind::UniformColored ? m : n_red + n_blue; }
};

struct TrialResult {
  TrialSpec spec;
  long long red_count = 0;   // realized counts of the sampled configuration
  long long blue_count = 0;
  Verdict verdict;
  std::optional<unsigned long long> collisions;  // present iff verdict is SpeedOne
  std::optional<bool> monitor_pass;              // present iff the monitor was requested
};

/// Sample, classify, and optionally re-run the trajectory under the
/// certificate monitor. Pure function of the spec. Two guarantees are
/// asserted on every trial and throw std::logic_error when violated: a
/// trajectory with fewer than N/2 cars must end SpeedOne, and a Stuck
/// trajectory's fixed point must satisfy stuck_necessary_condition.
TrialResult run_trial(const TrialSpec& spec);

/// Replays `steps` steps from `initial` under a TrajectoryMonitor, invoking
/// `sink` per step when given. Returns true iff every certificate passed.
bool run_monitored(const Configuration& initial, long long steps,
                   const std::function<void(const MonitorStepRecord&)>& sink = {});

struct SweepPoint {
  int n = 0;
  long long m = 0;
  std::optional<double> alpha;  // set when m came from m = ceil(n^(1+alpha))
};

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<long long> m_values;   // exactly one of m_values / alpha_values is used
  std::vector<double> alpha_values;  // m = ceil(n^(1+alpha)), clamped to 0 < m < n^2 or rejected
  long long trials = 0;
  std::uint64_t base_seed = 0;
  int jobs = 1;
  std::optional<ClassifyLimits> limits;  // per-n defaults when absent
};

struct Aggregate {
  SweepPoint point;
  long long trials = 0;
  double frac_speed_one = 0;
  double frac_stuck = 0;
  double frac_intermediate = 0;
  double frac_undetermined = 0;
  long long speed_one_trials = 0;
  std::optional<double> collision_mean;    // over SpeedOne trials
  std::optional<double> collision_median;  // midpoint of the two central values when even
  std::optional<unsigned long long> collision_max;
  double wilson_low = 0;   // 95% Wilson score interval on the stuck fraction
  double wilson_high = 1;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<TrialResult> trials;  // ordered by (point index, trial index)
  std::vector<Aggregate> aggregates;
};

/// Runs trials x points with per-trial seeds from derive_trial_seed. Trials
/// are independent; `jobs` threads execute them in arbitrary order and the
/// output is identical for every jobs value.
SweepResult sweep(const SweepSpec& spec);

/// Wilson score interval, two-sided, default z for 95%.
std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double z = 1.959963984540054);

}  // namespace bml
