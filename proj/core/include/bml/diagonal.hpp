#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bml/grid.hpp"

namespace bml {

/// Time-corrected diagonal image of a configuration: one value per car,
/// phi_t(i, j) = (i + j - t) mod N. The values form a multiset of points of
/// Z_N; when produced by a TrajectoryMonitor they are ordered by car index.
struct Projection {
  int n = 0;
  long long t = 0;
  std::vector<int> values;

  std::vector<int> occupancy() const;  // multiplicity per point of Z_N
};

/// Projection of `c` at time `t`, values in row-major cell order.
Projection project(const Configuration& c, long long t);

/// Maximal circular run of points of Z_N unoccupied by any projected value.
/// `start` is the lower end-point: its predecessor is occupied except in the
/// degenerate all-empty case, where the single arc covers Z_N with start 0.
struct Arc {
  int start = 0;
  int length = 0;
  bool operator==(const Arc&) const = default;
};

struct ArcDecomposition {
  int n = 0;
  long long t = 0;
  std::vector<Arc> arcs;  // first the arc containing point 0 if one does, then by scan order
};

ArcDecomposition decompose_arcs(const Projection& p);

/// Number of arcs of length >= 2.
int long_arc_count(const ArcDecomposition& d);

struct Certificate {
  bool pass = true;
  std::string detail;  // violating datum when !pass
};

/// For every arc {y, ..., y+l} of length >= 2 at time t: point y-1 is still
/// occupied at t+1 and {y, ..., y+l-1} are still unoccupied. Arcs covering
/// all of Z_N have no boundary and are skipped. Throws std::invalid_argument
/// on mismatched N.
Certificate check_arc_static(const ArcDecomposition& at_t, const Projection& at_next);

/// The count of arcs of length >= 2 never increases between consecutive steps.
Certificate check_long_arc_monotone(int long_arcs_t, int long_arcs_next);

/// Per car: a moved car keeps its projected value, a blocked car's value
/// decrements by 1 mod N. Requires per-car aligned projections; throws
/// std::invalid_argument on cardinality or N mismatch.
Certificate check_projection_step(const Projection& at_t, const Projection& at_next,
                                  const std::vector<std::uint8_t>& car_moved);

struct MonitorStepRecord {
  long long t = 0;  // time index after the step
  StepStats stats;
  int long_arcs = 0;
  bool arc_static = true;
  bool long_arc_monotone = true;
  bool projection_step = true;
  // Once any car has accumulated N blocked steps (a full circuit of Z_N),
  // no long arc may remain.
  bool circuit_implies_no_long_arcs = true;
  // With fewer than N/2 cars some long arc must exist at every time.
  bool long_arc_present = true;

  bool pass() const {
    return arc_static && long_arc_monotone && projection_step && circuit_implies_no_long_arcs &&
           long_arc_present;
  }
};

/// Tracks car identities along one trajectory and re-validates the arc and
/// projection certificates after every step it is fed.
class TrajectoryMonitor {
 public:
  explicit TrajectoryMonitor(const Configuration& initial);

  /// Advance by the step whose per-car moves are in `trace` (keyed by
  /// pre-step cells) and whose aggregate counts are `stats`.
  MonitorStepRecord advance(const MoveTrace& trace, const StepStats& stats);

  long long t() const { return t_; }
  bool all_pass() const { return all_pass_; }
  const Projection& projection() const { return proj_; }
  const ArcDecomposition& decomposition() const { return decomp_; }

 private:
  int n_ = 0;
  long long m_ = 0;
  long long t_ = 0;
  bool all_pass_ = true;
  std::vector<Position> positions_;
  std::vector<Color> colors_;
  std::vector<long long> blocks_;  // cumulative blocked steps per car
  Projection proj_;
  ArcDecomposition decomp_;
};

}  // namespace bml
