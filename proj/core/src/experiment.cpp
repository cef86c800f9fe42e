#include "bml/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "bml/construct.hpp"

namespace bml {

namespace {

std::vector<int> pick_cells(Rng& rng, int n, long long count) {
  const long long cells = static_cast<long long>(n) * n;
  std::vector<int> idx(static_cast<std::size_t>(cells));
  std::iota(idx.begin(), idx.end(), 0);
  for (long long k = 0; k < count; ++k) {
    const long long pick = k + static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(cells - k)));
    std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick)]);
  }
  idx.resize(static_cast<std::size_t>(count));
  return idx;
}

void check_car_count(int n, long long count) {
  if (n < 1) throw std::invalid_argument("torus side must be >= 1");
  if (count < 0 || count > static_cast<long long>(n) * n) {
    throw std::invalid_argument("car count out of range for the torus");
  }
}

}  // namespace

Configuration sample_uniform_colored(int n, long long m, std::uint64_t seed) {
  check_car_count(n, m);
  Rng rng(seed);
  const long long cells = static_cast<long long>(n) * n;
  std::vector<int> idx(static_cast<std::size_t>(cells));
  std::iota(idx.begin(), idx.end(), 0);
  Configuration config(n);
  for (long long k = 0; k < m; ++k) {
    const long long pick = k + static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(cells - k)));
    std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick)]);
    const int cell = idx[static_cast<std::size_t>(k)];
    config.set(cell / n, cell % n, rng.coin() ? Cell::Blue : Cell::Red);
  }
  return config;
}

Configuration sample_bicolor(int n, long long n_red, long long n_blue, std::uint64_t seed) {
  if (n_red < 0 || n_blue < 0) throw std::invalid_argument("car counts must be non-negative");
  check_car_count(n, n_red + n_blue);
  Rng rng(seed);
  std::vector<int> chosen = pick_cells(rng, n, n_red + n_blue);
  // Second partial shuffle: the first n_red slots become the red cars, making
  // the color assignment uniform over the chosen cells.
  for (long long k = 0; k < n_red; ++k) {
    const long long pick =
        k + static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(n_red + n_blue - k)));
    std::swap(chosen[static_cast<std::size_t>(k)], chosen[static_cast<std::size_t>(pick)]);
  }
  Configuration config(n);
  for (long long k = 0; k < n_red + n_blue; ++k) {
    const int cell = chosen[static_cast<std::size_t>(k)];
    config.set(cell / n, cell % n, k < n_red ? Cell::Red : Cell::Blue);
  }
  return config;
}

std::string_view to_string(SamplerKind k) {
  return k == SamplerKind::UniformColored ? "uniform" : "bicolor";
}

bool run_monitored(const Configuration& initial, long long steps,
                   const std::function<void(const MonitorStepRecord&)>& sink) {
  TrajectoryMonitor monitor(initial);
  Configuration cur = initial;
  MoveTrace trace;
  bool ok = monitor.all_pass();
  for (long long t = 0; t < steps; ++t) {
    StepResult r = step(cur, trace);
    const MonitorStepRecord rec = monitor.advance(trace, r.stats);
    if (sink) sink(rec);
    ok = ok && rec.pass();
    cur = std::move(r.config);
  }
  return ok && monitor.all_pass();
}

TrialResult run_trial(const TrialSpec& spec_in) {
  TrialSpec spec = spec_in;
  if (spec.limits.max_steps <= 0 || spec.limits.max_states <= 0) {
    spec.limits = ClassifyLimits::defaults_for(spec.n);
  }
  Configuration config = spec.sampler == SamplerKind::UniformColored
                             ? sample_uniform_colored(spec.n, spec.m, spec.seed)
                             : sample_bicolor(spec.n, spec.n_red, spec.n_blue, spec.seed);

  TrialResult result;
  result.spec = spec;
  result.red_count = config.red_count();
  result.blue_count = config.blue_count();

  const ClassifyDetail detail = classify_detailed(config, spec.limits);
  result.verdict = detail.verdict;
  if (detail.verdict.kind == VerdictKind::SpeedOne) result.collisions = detail.blocked_events;

  if (2 * config.car_count() < spec.n && detail.verdict.kind != VerdictKind::SpeedOne) {
    throw std::logic_error("trajectory with fewer than N/2 cars did not attain speed one");
  }
  if (detail.verdict.kind == VerdictKind::Stuck && !stuck_necessary_condition(detail.final_config)) {
    throw std::logic_error("stuck configuration misses a blue column or a red row");
  }

  if (spec.monitor) result.monitor_pass = run_monitored(config, detail.verdict.steps_spent);
  return result;
}

std::pair<double, double> wilson_interval(long long successes, long long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double nd = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  // At observed frequencies 0 and 1 the exact bound is the frequency itself.
  const double low = successes <= 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes >= trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

namespace {

std::vector<SweepPoint> resolve_points(const SweepSpec& spec) {
  if (spec.n_values.empty()) throw std::invalid_argument("sweep needs at least one n");
  if (spec.m_values.empty() == spec.alpha_values.empty()) {
    throw std::invalid_argument("sweep needs exactly one of m values or alpha values");
  }
  std::vector<SweepPoint> points;
  for (const int n : spec.n_values) {
    if (n < 1) throw std::invalid_argument("torus side must be >= 1");
    const long long cells = static_cast<long long>(n) * n;
    if (!spec.m_values.empty()) {
      for (const long long m : spec.m_values) {
        if (m <= 0 || m >= cells) {
          throw std::invalid_argument("sweep car count m = " + std::to_string(m) +
                                      " must satisfy 0 < m < N^2 for N = " + std::to_string(n));
        }
        points.push_back(SweepPoint{n, m, std::nullopt});
      }
    } else {
      for (const double alpha : spec.alpha_values) {
        const long long m = static_cast<long long>(std::ceil(std::pow(n, 1.0 + alpha)));
        if (m <= 0 || m >= cells) {
          throw std::invalid_argument("alpha = " + std::to_string(alpha) + " gives m = " +
                                      std::to_string(m) + " outside 0 < m < N^2 for N = " +
                                      std::to_string(n));
        }
        points.push_back(SweepPoint{n, m, alpha});
      }
    }
  }
  return points;
}

Aggregate aggregate_point(const SweepPoint& point, std::vector<const TrialResult*> trials) {
  Aggregate agg;
  agg.point = point;
  agg.trials = static_cast<long long>(trials.size());
  long long stuck = 0, speed_one = 0, intermediate = 0, undetermined = 0;
  std::vector<unsigned long long> collisions;
  for (const TrialResult* trial : trials) {
    switch (trial->verdict.kind) {
      case VerdictKind::SpeedOne:
        ++speed_one;
        collisions.push_back(trial->collisions.value_or(0));
        break;
      case VerdictKind::Stuck: ++stuck; break;
      case VerdictKind::Intermediate: ++intermediate; break;
      case VerdictKind::Undetermined: ++undetermined; break;
    }
  }
  const double total = static_cast<double>(agg.trials);
  agg.frac_speed_one = speed_one / total;
  agg.frac_stuck = stuck / total;
  agg.frac_intermediate = intermediate / total;
  agg.frac_undetermined = undetermined / total;
  agg.speed_one_trials = speed_one;
  if (!collisions.empty()) {
    std::sort(collisions.begin(), collisions.end());
    double sum = 0;
    for (const auto v : collisions) sum += static_cast<double>(v);
    agg.collision_mean = sum / static_cast<double>(collisions.size());
    const std::size_t mid = collisions.size() / 2;
    agg.collision_median = collisions.size() % 2 == 1
                               ? static_cast<double>(collisions[mid])
                               : (static_cast<double>(collisions[mid - 1]) +
                                  static_cast<double>(collisions[mid])) /
                                     2.0;
    agg.collision_max = collisions.back();
  }
  const auto [low, high] = wilson_interval(stuck, agg.trials);
  agg.wilson_low = low;
  agg.wilson_high = high;
  return agg;
}

}  // namespace

SweepResult sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("sweep needs at least one trial per point");
  if (spec.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  SweepResult result;
  result.points = resolve_points(spec);
  const std::size_t total = result.points.size() * static_cast<std::size_t>(spec.trials);
  result.trials.resize(total);

  const auto run_one = [&](std::size_t flat) {
    const std::size_t point_idx = flat / static_cast<std::size_t>(spec.trials);
    const std::size_t trial_idx = flat % static_cast<std::size_t>(spec.trials);
    const SweepPoint& point = result.points[point_idx];
    TrialSpec trial;
    trial.n = point.n;
    trial.sampler = SamplerKind::UniformColored;
    trial.m = point.m;
    trial.seed = derive_trial_seed(spec.base_seed, point_idx, trial_idx);
    trial.limits = spec.limits.value_or(ClassifyLimits::defaults_for(point.n));
    result.trials[flat] = run_trial(trial);
  };

  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), total));
  if (workers <= 1) {
    for (std::size_t flat = 0; flat < total; ++flat) run_one(flat);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t flat = cursor.fetch_add(1); flat < total && !failed.load();
             flat = cursor.fetch_add(1)) {
          try {
            run_one(flat);
          } catch (...) {
            const std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            failed.store(true);
          }
        }
      });
    }
    for (auto& worker : pool) worker.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (std::size_t p = 0; p < result.points.size(); ++p) {
    std::vector<const TrialResult*> slice;
    slice.reserve(static_cast<std::size_t>(spec.trials));
    for (long long k = 0; k < spec.trials; ++k) {
      slice.push_back(&result.trials[p * static_cast<std::size_t>(spec.trials) + static_cast<std::size_t>(k)]);
    }
    result.aggregates.push_back(aggregate_point(result.points[p], std::move(slice)));
  }
  return result;
}

}  // namespace bml
