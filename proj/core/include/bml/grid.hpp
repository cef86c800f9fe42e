#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bml {

enum class Cell : std::uint8_t { Empty = 0, Red = 1, Blue = 2 };
enum class Color : std::uint8_t { Red, Blue };

inline Cell to_cell(Color c) { return c == Color::Red ? Cell::Red : Cell::Blue; }

struct Position {
  int i = 0;  // row, vertical
  int j = 0;  // column, horizontal
  bool operator==(const Position&) const = default;
};

/// Full state of the N x N torus. Car counts are maintained on every write,
/// so red_count() + blue_count() == car_count() always holds.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int n);

  int n() const { return n_; }
  long long car_count() const { return red_count_ + blue_count_; }
  long long red_count() const { return red_count_; }
  long long blue_count() const { return blue_count_; }

  Cell at(int i, int j) const { return cells_[index(i, j)]; }
  Cell at(Position p) const { return at(p.i, p.j); }
  void set(int i, int j, Cell c);
  void set(Position p, Cell c) { set(p.i, p.j, c); }

  std::span<const Cell> cells() const { return cells_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  bool operator==(const Configuration&) const = default;

 private:
  int n_ = 0;
  long long red_count_ = 0;
  long long blue_count_ = 0;
  std::vector<Cell> cells_;  // row-major, index(i, j) = i * n + j
};

struct StepStats {
  long long moved_blue = 0;
  long long blocked_blue = 0;
  long long moved_red = 0;
  long long blocked_red = 0;

  long long moved() const { return moved_blue + moved_red; }
  long long blocked() const { return blocked_blue + blocked_red; }
  bool operator==(const StepStats&) const = default;
};

/// Per-car movement record for one phase or one full step, keyed by the cell
/// a car occupied *before* the step. Valid because cells are unique at that
/// time: blue cars are keyed at their pre-step cells and red cars do not move
/// during the blue phase.
struct MoveTrace {
  int n = 0;
  std::vector<std::uint8_t> moved;  // moved[i * n + j] != 0 iff that car moved

  bool moved_at(const Configuration& c, Position p) const { return moved[c.index(p.i, p.j)] != 0; }
};

struct PhaseResult {
  Configuration config;
  long long moved = 0;
  long long blocked = 0;
};

/// All blue cars advance one step right (j -> j+1 mod N). A convoy (maximal
/// run of consecutive blue cars) moves iff the first non-blue cell past its
/// head is empty, and is blocked iff that cell holds a red car. An all-blue
/// row rotates as a unit: cells are unchanged and every car counts as moved.
PhaseResult blue_phase(const Configuration& c);

/// Column-wise mirror of blue_phase with direction up (i -> i+1 mod N),
/// evaluated against the configuration it is given (after the blue phase
/// within a step).
PhaseResult red_phase(const Configuration& c);

struct StepResult {
  Configuration config;
  StepStats stats;
};

/// One synchronous time step: blue phase, then red phase.
StepResult step(const Configuration& c);
/// As step(), and records which cars moved into `trace`.
StepResult step(const Configuration& c, MoveTrace& trace);

/// Injective encoding of a configuration: decimal N, ':', then one byte per
/// cell ('.', 'R', 'B') in row-major order.
std::string canonical_key(const Configuration& c);

}  // namespace bml
