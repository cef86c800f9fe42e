#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "bml/grid.hpp"

namespace bml::testing {

inline Configuration make_config(int n, std::initializer_list<Position> reds,
                                 std::initializer_list<Position> blues) {
  Configuration c(n);
  for (const Position p : reds) c.set(p, Cell::Red);
  for (const Position p : blues) c.set(p, Cell::Blue);
  return c;
}

/// Reconstructs the post-step configuration from per-car displacements: a
/// moved blue goes one right, a moved red one up, blocked cars stay. Lets
/// tests validate the trace against the step output.
inline Configuration rebuild_from_trace(const Configuration& before, const MoveTrace& trace) {
  const int n = before.n();
  Configuration after(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Cell cell = before.at(i, j);
      if (cell == Cell::Empty) continue;
      Position p{i, j};
      if (trace.moved_at(before, p)) {
        if (cell == Cell::Blue) {
          p.j = (p.j + 1) % n;
        } else {
          p.i = (p.i + 1) % n;
        }
      }
      if (after.at(p) != Cell::Empty) return Configuration(n);  // collision: report as empty grid
      after.set(p, cell);
    }
  }
  return after;
}

/// Simulates `steps` steps and returns the per-step stats.
inline std::vector<StepStats> replay(Configuration c, long long steps) {
  std::vector<StepStats> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (long long t = 0; t < steps; ++t) {
    StepResult r = step(c);
    out.push_back(r.stats);
    c = std::move(r.config);
  }
  return out;
}

inline Configuration advance(Configuration c, long long steps) {
  for (long long t = 0; t < steps; ++t) c = step(c).config;
  return c;
}

}  // namespace bml::testing
