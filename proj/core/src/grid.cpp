#include "bml/grid.hpp"

#include <stdexcept>
#include <utility>

namespace bml {

Configuration::Configuration(int n)
    : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n : 0), Cell::Empty) {
  if (n < 1) throw std::invalid_argument("torus side must be >= 1");
}

void Configuration::set(int i, int j, Cell c) {
  Cell& slot = cells_[index(i, j)];
  if (slot == c) return;
  if (slot == Cell::Red) --red_count_;
  if (slot == Cell::Blue) --blue_count_;
  if (c == Cell::Red) ++red_count_;
  if (c == Cell::Blue) ++blue_count_;
  slot = c;
}

namespace {

// One synchronous phase, in place. Safe because per line every cell write
// lands at or behind the scan position, so cells still to be read hold their
// pre-phase value.
std::pair<long long, long long> run_phase(Configuration& config, Color mover, MoveTrace* trace) {
  const int n = config.n();
  const Cell mover_cell = to_cell(mover);
  long long moved = 0;
  long long blocked = 0;
  for (int line = 0; line < n; ++line) {
    const auto flat = [&](int k) {
      return mover == Color::Blue ? config.index(line, k) : config.index(k, line);
    };
    const auto at = [&](int k) { return config.cells()[flat(k)]; };

    int anchor = -1;  // any coordinate whose cell is not the mover color
    int movers = 0;
    for (int k = 0; k < n; ++k) {
      if (at(k) == mover_cell) {
        ++movers;
      } else if (anchor < 0) {
        anchor = k;
      }
    }
    if (movers == 0) continue;
    if (anchor < 0) {
      // Full ring: no blocking cell and no gap, the line rotates as a unit.
      moved += n;
      if (trace != nullptr) {
        for (int k = 0; k < n; ++k) trace->moved[flat(k)] = 1;
      }
      continue;
    }

    // Walk the circle once starting after the anchor. Each convoy ends at the
    // first non-mover cell: empty means the whole convoy shifts, a car of the
    // other color means the whole convoy is blocked.
    int run_start = -1;
    for (int s = 1; s <= n; ++s) {
      const int k = (anchor + s) % n;
      const Cell c = at(k);
      if (c == mover_cell) {
        if (run_start < 0) run_start = s;
        continue;
      }
      if (run_start < 0) continue;
      const long long len = s - run_start;
      if (c == Cell::Empty) {
        moved += len;
        const int tail = (anchor + run_start) % n;
        if (mover == Color::Blue) {
          config.set(line, tail, Cell::Empty);
          config.set(line, k, mover_cell);
        } else {
          config.set(tail, line, Cell::Empty);
          config.set(k, line, mover_cell);
        }
        if (trace != nullptr) {
          for (int off = run_start; off < s; ++off) trace->moved[flat((anchor + off) % n)] = 1;
        }
      } else {
        blocked += len;
      }
      run_start = -1;
    }
  }
  return {moved, blocked};
}

StepResult run_step(const Configuration& c, MoveTrace* trace) {
  StepResult r{c, {}};
  const auto [mb, bb] = run_phase(r.config, Color::Blue, trace);
  const auto [mr, br] = run_phase(r.config, Color::Red, trace);
  r.stats = StepStats{mb, bb, mr, br};
  return r;
}

}  // namespace

PhaseResult blue_phase(const Configuration& c) {
  PhaseResult r{c, 0, 0};
  const auto [m, b] = run_phase(r.config, Color::Blue, nullptr);
  r.moved = m;
  r.blocked = b;
  return r;
}

PhaseResult red_phase(const Configuration& c) {
  PhaseResult r{c, 0, 0};
  const auto [m, b] = run_phase(r.config, Color::Red, nullptr);
  r.moved = m;
  r.blocked = b;
  return r;
}

StepResult step(const Configuration& c) { return run_step(c, nullptr); }

StepResult step(const Configuration& c, MoveTrace& trace) {
  trace.n = c.n();
  trace.moved.assign(c.cells().size(), 0);
  return run_step(c, &trace);
}

std::string canonical_key(const Configuration& c) {
  std::string key = std::to_string(c.n());
  key.reserve(key.size() + 1 + c.cells().size());
  key.push_back(':');
  for (const Cell cell : c.cells()) {
    key.push_back(cell == Cell::Empty ? '.' : (cell == Cell::Red ? 'R' : 'B'));
  }
  return key;
}

}  // namespace bml
