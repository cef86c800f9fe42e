#include "bml/diagonal.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bml {

namespace {

int wrap(long long x, int n) {
  const long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

std::vector<int> occupancy_of(const Projection& p) {
  std::vector<int> occ(static_cast<std::size_t>(p.n), 0);
  for (const int v : p.values) ++occ[static_cast<std::size_t>(v)];
  return occ;
}

}  // namespace

std::vector<int> Projection::occupancy() const { return occupancy_of(*this); }

Projection project(const Configuration& c, long long t) {
  Projection p{c.n(), t, {}};
  p.values.reserve(static_cast<std::size_t>(c.car_count()));
  const int n = c.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (c.at(i, j) != Cell::Empty) p.values.push_back(wrap(i + j - t, n));
    }
  }
  return p;
}

ArcDecomposition decompose_arcs(const Projection& p) {
  const int n = p.n;
  ArcDecomposition d{n, p.t, {}};
  const std::vector<int> occ = occupancy_of(p);
  const long long empty_points = static_cast<long long>(std::count(occ.begin(), occ.end(), 0));
  if (empty_points == 0) return d;
  if (empty_points == n) {
    d.arcs.push_back(Arc{0, n});
    return d;
  }
  for (int y = 0; y < n; ++y) {
    if (occ[static_cast<std::size_t>(y)] != 0) continue;
    if (occ[static_cast<std::size_t>(wrap(y - 1, n))] == 0) continue;  // not a lower end-point
    int length = 1;
    while (occ[static_cast<std::size_t>(wrap(y + length, n))] == 0) ++length;
    d.arcs.push_back(Arc{y, length});
  }
  // Scan-order labeling: the arc containing point 0 comes first. The loop
  // above emits arcs by ascending start, so only the wrap-around arc can be
  // out of place.
  const auto wraps = [n](const Arc& a) { return a.start + a.length > n; };
  const auto it = std::find_if(d.arcs.begin(), d.arcs.end(), wraps);
  if (it != d.arcs.end()) std::rotate(d.arcs.begin(), it, it + 1);
  return d;
}

int long_arc_count(const ArcDecomposition& d) {
  return static_cast<int>(
      std::count_if(d.arcs.begin(), d.arcs.end(), [](const Arc& a) { return a.length >= 2; }));
}

Certificate check_arc_static(const ArcDecomposition& at_t, const Projection& at_next) {
  if (at_t.n != at_next.n) {
    throw std::invalid_argument("check_arc_static: decomposition and projection disagree on N");
  }
  const int n = at_t.n;
  const std::vector<int> occ = occupancy_of(at_next);
  for (const Arc& arc : at_t.arcs) {
    if (arc.length < 2 || arc.length >= n) continue;  // short arc, or no boundary exists
    const int below = wrap(arc.start - 1, n);
    if (occ[static_cast<std::size_t>(below)] == 0) {
      return {false, "arc start=" + std::to_string(arc.start) + " len=" + std::to_string(arc.length) +
                         ": lower boundary point " + std::to_string(below) +
                         " became unoccupied"};
    }
    for (int d = 0; d + 1 < arc.length; ++d) {
      const int point = wrap(arc.start + d, n);
      if (occ[static_cast<std::size_t>(point)] != 0) {
        return {false, "arc start=" + std::to_string(arc.start) + " len=" +
                           std::to_string(arc.length) + ": interior point " + std::to_string(point) +
                           " became occupied"};
      }
    }
  }
  return {};
}

Certificate check_long_arc_monotone(int long_arcs_t, int long_arcs_next) {
  if (long_arcs_next <= long_arcs_t) return {};
  return {false, "long arc count increased from " + std::to_string(long_arcs_t) + " to " +
                     std::to_string(long_arcs_next)};
}

Certificate check_projection_step(const Projection& at_t, const Projection& at_next,
                                  const std::vector<std::uint8_t>& car_moved) {
  if (at_t.n != at_next.n) {
    throw std::invalid_argument("check_projection_step: projections disagree on N");
  }
  if (at_t.values.size() != at_next.values.size() || at_t.values.size() != car_moved.size()) {
    throw std::invalid_argument("check_projection_step: per-car cardinality mismatch");
  }
  const int n = at_t.n;
  for (std::size_t k = 0; k < car_moved.size(); ++k) {
    const int y = at_t.values[k];
    const int expected = car_moved[k] != 0 ? y : wrap(y - 1, n);
    if (at_next.values[k] != expected) {
      return {false, "car " + std::to_string(k) + (car_moved[k] != 0 ? " moved" : " blocked") +
                         " but its value went " + std::to_string(y) + " -> " +
                         std::to_string(at_next.values[k])};
    }
  }
  return {};
}

TrajectoryMonitor::TrajectoryMonitor(const Configuration& initial)
    : n_(initial.n()), m_(initial.car_count()) {
  positions_.reserve(static_cast<std::size_t>(m_));
  colors_.reserve(static_cast<std::size_t>(m_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const Cell c = initial.at(i, j);
      if (c == Cell::Empty) continue;
      positions_.push_back(Position{i, j});
      colors_.push_back(c == Cell::Red ? Color::Red : Color::Blue);
    }
  }
  blocks_.assign(positions_.size(), 0);
  proj_.n = n_;
  proj_.t = 0;
  proj_.values.resize(positions_.size());
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    proj_.values[k] = wrap(positions_[k].i + positions_[k].j, n_);
  }
  decomp_ = decompose_arcs(proj_);
  if (n_ >= 2 && 2 * m_ < n_) all_pass_ = long_arc_count(decomp_) >= 1;
}

MonitorStepRecord TrajectoryMonitor::advance(const MoveTrace& trace, const StepStats& stats) {
  if (trace.n != n_ || trace.moved.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("TrajectoryMonitor::advance: trace size does not match torus");
  }
  const long long t_next = t_ + 1;
  std::vector<std::uint8_t> flags(positions_.size(), 0);
  Projection next{n_, t_next, std::vector<int>(positions_.size())};
  long long moved_total = 0;
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    Position p = positions_[k];
    const bool moved = trace.moved[static_cast<std::size_t>(p.i) * n_ + p.j] != 0;
    flags[k] = moved ? 1 : 0;
    if (moved) {
      ++moved_total;
      if (colors_[k] == Color::Blue) {
        p.j = (p.j + 1) % n_;
      } else {
        p.i = (p.i + 1) % n_;
      }
    } else {
      ++blocks_[k];
    }
    positions_[k] = p;
    next.values[k] = wrap(p.i + p.j - t_next, n_);
  }
  if (moved_total != stats.moved() || static_cast<long long>(positions_.size()) - moved_total != stats.blocked()) {
    throw std::invalid_argument("TrajectoryMonitor::advance: trace disagrees with step stats");
  }

  ArcDecomposition next_decomp = decompose_arcs(next);

  MonitorStepRecord rec;
  rec.t = t_next;
  rec.stats = stats;
  rec.long_arcs = long_arc_count(next_decomp);
  rec.arc_static = check_arc_static(decomp_, next).pass;
  rec.long_arc_monotone = check_long_arc_monotone(long_arc_count(decomp_), rec.long_arcs).pass;
  rec.projection_step = check_projection_step(proj_, next, flags).pass;
  const bool circuit_done =
      std::any_of(blocks_.begin(), blocks_.end(), [this](long long b) { return b >= n_; });
  rec.circuit_implies_no_long_arcs = !circuit_done || rec.long_arcs == 0;
  rec.long_arc_present = !(n_ >= 2 && 2 * m_ < n_) || rec.long_arcs >= 1;

  proj_ = std::move(next);
  decomp_ = std::move(next_decomp);
  t_ = t_next;
  all_pass_ = all_pass_ && rec.pass();
  return rec;
}

}  // namespace bml
