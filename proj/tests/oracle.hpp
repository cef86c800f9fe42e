#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bml/classify.hpp"
#include "bml/grid.hpp"

namespace bml::testing {

/// Brute-force reference classifier: simulates until the state recurs, then
/// reads the verdict off the recorded cycle. No shortcuts — every state is
/// stored, so it is only usable on small tori, and it is independent of the
/// decision rules in bml::classify.
struct OracleOutcome {
  VerdictKind kind = VerdictKind::Undetermined;
  long long t_org = -1;
  long long t_stuck = -1;
  long long cycle_entry = -1;
  long long period = -1;
  long long period_moves = -1;
};

inline OracleOutcome oracle_classify(const Configuration& c0) {
  OracleOutcome out;
  const long long m = c0.car_count();
  if (m == 0) {
    out.kind = VerdictKind::SpeedOne;
    out.t_org = 0;
    return out;
  }
  std::unordered_map<std::string, long long> seen;
  seen.emplace(canonical_key(c0), 0);
  std::vector<StepStats> history;
  Configuration cur = c0;
  for (long long t = 0;; ++t) {
    const StepResult r = step(cur);
    cur = std::move(r.config);
    history.push_back(r.stats);
    const auto [it, inserted] = seen.try_emplace(canonical_key(cur), t + 1);
    if (inserted) continue;

    const long long entry = it->second;
    const long long period = (t + 1) - entry;
    long long cycle_moves = 0;
    long long cycle_blocked = 0;
    for (long long s = entry; s <= t; ++s) {
      cycle_moves += history[static_cast<std::size_t>(s)].moved();
      cycle_blocked += history[static_cast<std::size_t>(s)].blocked();
    }
    if (cycle_blocked == 0) {
      out.kind = VerdictKind::SpeedOne;
      long long last_blocked = -1;
      for (long long s = 0; s <= t; ++s) {
        if (history[static_cast<std::size_t>(s)].blocked() > 0) last_blocked = s;
      }
      out.t_org = last_blocked + 1;
    } else if (cycle_moves == 0) {
      out.kind = VerdictKind::Stuck;
      long long first_zero = entry;
      for (long long s = 0; s <= t; ++s) {
        if (history[static_cast<std::size_t>(s)].moved() == 0) {
          first_zero = s;
          break;
        }
      }
      out.t_stuck = first_zero;
    } else {
      out.kind = VerdictKind::Intermediate;
      out.cycle_entry = entry;
      out.period = period;
      out.period_moves = cycle_moves;
    }
    return out;
  }
}

}  // namespace bml::testing
