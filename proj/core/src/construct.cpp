#include "bml/construct.hpp"

#include <climits>
#include <stdexcept>

#include "bml/classify.hpp"

namespace bml {

namespace {

int wrap(long long x, int n) {
  const long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
  if (a != 0 && b > ULLONG_MAX / a) return ULLONG_MAX;
  return a * b;
}

}  // namespace

Configuration construct_stuck(const StuckRecipe& recipe) {
  const int n = recipe.n;
  const long long m = recipe.m;
  if (n < 1) throw std::invalid_argument("torus side must be >= 1");
  const long long cells = static_cast<long long>(n) * n;
  if (m < 2 * n) {
    throw std::invalid_argument("a stuck configuration needs m >= 2N = " + std::to_string(2 * n) +
                                " cars, got m = " + std::to_string(m));
  }
  if (m > cells) {
    throw std::invalid_argument("m = " + std::to_string(m) + " exceeds the N^2 = " +
                                std::to_string(cells) + " cells of the torus");
  }
  const int c = wrap(recipe.base_diagonal, n);
  Configuration config(n);
  for (int j = 0; j < n; ++j) {
    config.set(wrap(c + static_cast<long long>(j), n), j, Cell::Red);
    config.set(wrap(c + 1 + static_cast<long long>(j), n), j, Cell::Blue);
  }
  long long extra = m - 2 * n;
  // Fill diagonals c-1, c-2, ..., c+2 with red, each fully before the next,
  // ascending j within a diagonal. The cell above each added car is already
  // occupied, so every prefix is itself stuck.
  for (int d = 1; d <= n - 2 && extra > 0; ++d) {
    const int diag = wrap(c - static_cast<long long>(d), n);
    for (int j = 0; j < n && extra > 0; ++j, --extra) {
      config.set(wrap(diag + static_cast<long long>(j), n), j, Cell::Red);
    }
  }
  return config;
}

Configuration construct_stuck(int n, long long m, int base_diagonal) {
  return construct_stuck(StuckRecipe{n, m, base_diagonal});
}

bool stuck_necessary_condition(const Configuration& c) {
  const int n = c.n();
  for (int j = 0; j < n; ++j) {
    bool has_blue = false;
    for (int i = 0; i < n && !has_blue; ++i) has_blue = c.at(i, j) == Cell::Blue;
    if (!has_blue) return false;
  }
  for (int i = 0; i < n; ++i) {
    bool has_red = false;
    for (int j = 0; j < n && !has_red; ++j) has_red = c.at(i, j) == Cell::Red;
    if (!has_red) return false;
  }
  return true;
}

unsigned long long enumeration_size(int n, int m) {
  const long long cells = static_cast<long long>(n) * n;
  if (m < 0 || m > cells) return 0;
  // C(cells, m), saturating.
  unsigned long long binom = 1;
  for (long long k = 1; k <= m; ++k) {
    binom = saturating_mul(binom, static_cast<unsigned long long>(cells - k + 1));
    if (binom != ULLONG_MAX) binom /= static_cast<unsigned long long>(k);
  }
  unsigned long long colorings = m >= 64 ? ULLONG_MAX : (1ULL << m);
  return saturating_mul(binom, colorings);
}

ConfigurationEnumerator::ConfigurationEnumerator(int n, int m, unsigned long long budget)
    : n_(n), m_(m) {
  if (n < 1) throw std::invalid_argument("torus side must be >= 1");
  const long long cells = static_cast<long long>(n) * n;
  if (m < 0 || m > cells) throw std::invalid_argument("car count out of range for the torus");
  total_ = enumeration_size(n, m);
  if (total_ > budget) {
    throw std::length_error("enumeration of " + std::to_string(total_) +
                            " configurations exceeds the budget of " + std::to_string(budget));
  }
  cells_.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) cells_[static_cast<std::size_t>(k)] = k;
}

bool ConfigurationEnumerator::advance_combination() {
  const int cells = n_ * n_;
  int k = m_ - 1;
  while (k >= 0 && cells_[static_cast<std::size_t>(k)] == cells - m_ + k) --k;
  if (k < 0) return false;
  ++cells_[static_cast<std::size_t>(k)];
  for (int j = k + 1; j < m_; ++j) {
    cells_[static_cast<std::size_t>(j)] = cells_[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

std::optional<Configuration> ConfigurationEnumerator::next() {
  if (done_) return std::nullopt;
  Configuration config(n_);
  for (int k = 0; k < m_; ++k) {
    const int cell = cells_[static_cast<std::size_t>(k)];
    const bool blue = ((coloring_ >> k) & 1ULL) != 0;
    config.set(cell / n_, cell % n_, blue ? Cell::Blue : Cell::Red);
  }
  const unsigned long long colorings = m_ >= 64 ? ULLONG_MAX : (1ULL << m_);
  if (++coloring_ >= colorings) {
    coloring_ = 0;
    if (!advance_combination()) done_ = true;
  }
  return config;
}

ThresholdReport verify_no_stuck_below_threshold(
    int n, unsigned long long budget, const std::function<bool(const Configuration&)>& fixed_point) {
  std::function<bool(const Configuration&)> predicate = fixed_point;
  if (!predicate) predicate = [](const Configuration& c) { return is_fixed_point(c); };
  ThresholdReport report;
  report.n = n;
  for (int m = 1; m < 2 * n; ++m) {
    ConfigurationEnumerator stream(n, m, budget);
    unsigned long long examined = 0;
    while (auto config = stream.next()) {
      ++examined;
      if (predicate(*config)) report.violations.push_back(canonical_key(*config));
    }
    report.per_m.emplace_back(m, examined);
    report.examined += examined;
  }
  return report;
}

}  // namespace bml
