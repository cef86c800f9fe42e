#include "bml/classify.hpp"

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bml {

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::SpeedOne: return "SpeedOne";
    case VerdictKind::Stuck: return "Stuck";
    case VerdictKind::Intermediate: return "Intermediate";
    case VerdictKind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

NotSpeedOne::NotSpeedOne(VerdictKind actual_kind)
    : std::runtime_error("collision count requires a SpeedOne trajectory, verdict was " +
                         std::string(to_string(actual_kind))),
      actual(actual_kind) {}

ClassifyDetail classify_detailed(const Configuration& c0, const ClassifyLimits& limits) {
  if (limits.max_steps <= 0 || limits.max_states <= 0) {
    throw std::invalid_argument("classify limits must be positive");
  }
  ClassifyDetail out{{}, 0, c0};
  const int n = c0.n();
  const long long m = c0.car_count();
  if (m == 0) {
    out.verdict.kind = VerdictKind::SpeedOne;
    out.verdict.t_org = 0;
    return out;
  }

  std::unordered_map<std::string, long long> seen;
  seen.emplace(canonical_key(c0), 0);
  std::vector<long long> step_moves;  // per-step moved-car totals, for cycle accounting
  Configuration cur = c0;
  long long last_blocked = -1;
  long long free_run = 0;

  for (long long t = 0;; ++t) {
    if (t >= limits.max_steps) {
      out.verdict.kind = VerdictKind::Undetermined;
      out.verdict.steps_spent = t;
      out.final_config = std::move(cur);
      return out;
    }
    StepResult r = step(cur);
    cur = std::move(r.config);
    const long long moved = r.stats.moved();
    const long long blocked = r.stats.blocked();
    step_moves.push_back(moved);
    out.blocked_events += static_cast<unsigned long long>(blocked);

    if (moved == 0) {  // (a) fixed point
      out.verdict.kind = VerdictKind::Stuck;
      out.verdict.t_stuck = t;
      out.verdict.steps_spent = t + 1;
      out.final_config = std::move(cur);
      return out;
    }

    if (blocked == 0) {  // (b) N consecutive free steps close a free cycle
      if (++free_run >= n) {
        out.verdict.kind = VerdictKind::SpeedOne;
        out.verdict.t_org = last_blocked + 1;
        out.verdict.steps_spent = t + 1;
        out.final_config = std::move(cur);
        return out;
      }
    } else {
      last_blocked = t;
      free_run = 0;
    }

    const auto [it, inserted] = seen.try_emplace(canonical_key(cur), t + 1);
    if (!inserted) {  // (c) cycle closed
      const long long entry = it->second;
      const long long period = (t + 1) - entry;
      long long moves_in_period = 0;
      for (long long s = entry; s <= t; ++s) moves_in_period += step_moves[static_cast<std::size_t>(s)];
      out.verdict.steps_spent = t + 1;
      if (moves_in_period == m * period) {
        // Every car moved at every step of the cycle, so it repeats freely
        // forever. Reachable before (b) when the free cycle's period < N.
        out.verdict.kind = VerdictKind::SpeedOne;
        out.verdict.t_org = last_blocked + 1;
      } else {
        out.verdict.kind = VerdictKind::Intermediate;
        out.verdict.cycle_entry = entry;
        out.verdict.period = period;
        out.verdict.period_moves = moves_in_period;
        out.verdict.speed = static_cast<double>(moves_in_period) / static_cast<double>(m * period);
      }
      out.final_config = std::move(cur);
      return out;
    }
    if (static_cast<long long>(seen.size()) > limits.max_states) {  // (d)
      out.verdict.kind = VerdictKind::Undetermined;
      out.verdict.steps_spent = t + 1;
      out.final_config = std::move(cur);
      return out;
    }
  }
}

Verdict classify(const Configuration& c, const ClassifyLimits& limits) {
  return classify_detailed(c, limits).verdict;
}

unsigned long long count_collisions(const Configuration& c, const ClassifyLimits& limits) {
  const ClassifyDetail detail = classify_detailed(c, limits);
  if (detail.verdict.kind != VerdictKind::SpeedOne) throw NotSpeedOne(detail.verdict.kind);
  return detail.blocked_events;
}

bool is_fixed_point(const Configuration& c) { return step(c).stats.moved() == 0; }

}  // namespace bml
