#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bml/grid.hpp"

namespace bml {

struct StuckRecipe {
  int n = 0;
  long long m = 0;
  int base_diagonal = 0;  // c: red cars fill i - j == c, blue cars fill i - j == c + 1
};

/// Fixed-point configuration with m cars, 2N <= m <= N^2. Base: red on the
/// SW-NE diagonal i-j == c, blue on i-j == c+1, each car blocked by the next
/// diagonal. For m > 2N, further diagonals are filled with red in order
/// c-1, c-2, ..., c+2, each in increasing j, so every added car sits below an
/// already occupied cell and every prefix stays stuck. Throws
/// std::invalid_argument when m < 2N or m > N^2.
Configuration construct_stuck(const StuckRecipe& recipe);
Configuration construct_stuck(int n, long long m, int base_diagonal = 0);

/// True iff every column holds at least one blue car and every row at least
/// one red car. Necessary for a configuration to be a fixed point.
bool stuck_necessary_condition(const Configuration& c);

/// Streams every configuration of exactly m cars under every red/blue
/// coloring, each exactly once. Order: m-subsets of row-major cell indices in
/// lexicographic order; within a subset, colorings as m-bit counters
/// 0 .. 2^m - 1 where bit k set means car k (in cell order) is blue.
/// The constructor throws std::length_error when the total stream size
/// C(N^2, m) * 2^m exceeds `budget`.
class ConfigurationEnumerator {
 public:
  static constexpr unsigned long long kDefaultBudget = 10'000'000ULL;

  ConfigurationEnumerator(int n, int m, unsigned long long budget = kDefaultBudget);

  unsigned long long total() const { return total_; }
  std::optional<Configuration> next();

 private:
  bool advance_combination();

  int n_ = 0;
  int m_ = 0;
  unsigned long long total_ = 0;
  std::vector<int> cells_;          // current m-subset of cell indices, ascending
  unsigned long long coloring_ = 0; // next coloring for the current subset
  bool done_ = false;
};

/// C(cells, m) * 2^m, saturating at ULLONG_MAX.
unsigned long long enumeration_size(int n, int m);

inline ConfigurationEnumerator enumerate_configurations(
    int n, int m, unsigned long long budget = ConfigurationEnumerator::kDefaultBudget) {
  return ConfigurationEnumerator(n, m, budget);
}

struct ThresholdReport {
  int n = 0;
  unsigned long long examined = 0;
  std::vector<std::pair<int, unsigned long long>> per_m;  // (m, configurations examined)
  std::vector<std::string> violations;                    // canonical keys of fixed points found

  bool pass() const { return violations.empty(); }
};

/// Enumerates every configuration with 1 <= m < 2N and asserts none is a
/// fixed point. `fixed_point` defaults to is_fixed_point; injectable for
/// negative-control tests.
ThresholdReport verify_no_stuck_below_threshold(
    int n, unsigned long long budget = ConfigurationEnumerator::kDefaultBudget,
    const std::function<bool(const Configuration&)>& fixed_point = {});

}  // namespace bml
