#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "bml/grid.hpp"

namespace bml {

struct ClassifyLimits {
  long long max_steps = 0;
  long long max_states = 0;

  /// 10 * N^3 steps, 10^6 stored states. Far beyond observed organization
  /// times at desk scale.
  static ClassifyLimits defaults_for(int n) {
    const long long side = n;
    return {10 * side * side * side, 1'000'000};
  }
};

enum class VerdictKind { SpeedOne, Stuck, Intermediate, Undetermined };

std::string_view to_string(VerdictKind k);

/// Terminal judgment for one trajectory. Exactly the fields matching `kind`
/// are engaged; steps_spent counts simulated steps in every case.
struct Verdict {
  VerdictKind kind = VerdictKind::Undetermined;
  long long steps_spent = 0;
  std::optional<long long> t_org;        // SpeedOne: first time after which no car is ever blocked
  std::optional<long long> t_stuck;      // Stuck: first time the configuration is a fixed point
  std::optional<long long> cycle_entry;  // Intermediate
  std::optional<long long> period;       // Intermediate
  std::optional<long long> period_moves; // Intermediate: car-moves across one period
  std::optional<double> speed;           // Intermediate: period_moves / (m * period), in (0, 1)
};

struct ClassifyDetail {
  Verdict verdict;
  unsigned long long blocked_events = 0;  // car-blocked events over the simulated prefix
  Configuration final_config;             // state after steps_spent steps
};

class NotSpeedOne : public std::runtime_error {
 public:
  explicit NotSpeedOne(VerdictKind actual_kind);
  VerdictKind actual;
};

/// Decides the fate of a trajectory. Per step, in priority order:
///   (a) a zero-move step is a fixed point: Stuck;
///   (b) N consecutive block-free steps return every car to its starting
///       cell, so freedom persists forever: SpeedOne;
///   (c) a recurring canonical key closes a cycle: block-free cycles are
///       SpeedOne (short free cycles can recur before (b)'s window fills),
///       anything else is Intermediate;
///   (d) limits exhausted: Undetermined.
Verdict classify(const Configuration& c, const ClassifyLimits& limits);
ClassifyDetail classify_detailed(const Configuration& c, const ClassifyLimits& limits);

/// Total blocked-car events before organization. Throws NotSpeedOne when the
/// trajectory does not attain speed one within the limits.
unsigned long long count_collisions(const Configuration& c, const ClassifyLimits& limits);

/// True iff step(c) moves zero cars. The empty torus is vacuously a fixed
/// point; callers report Stuck only when m >= 1.
bool is_fixed_point(const Configuration& c);

}  // namespace bml
