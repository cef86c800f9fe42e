#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bml/classify.hpp"
#include "bml/diagonal.hpp"
#include "bml/experiment.hpp"
#include "bml/grid.hpp"

namespace bml {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line_number, const std::string& message);
  int line = 0;
};

/// GridText: header "N <n>", then n lines of n characters from {., R, B},
/// row i = n-1 printed first and i = 0 last, every line newline-terminated.
Configuration parse_grid(std::string_view text);
std::string serialize_grid(const Configuration& c);

enum class RenderFormat { Ascii, Ppm };

/// Ascii is GridText. Ppm is binary P6, one pixel per cell in GridText row
/// order: red (255,0,0), blue (0,0,255), empty (255,255,255).
std::string render(const Configuration& c, RenderFormat format);
std::string render_ppm(const Configuration& c);

/// num/den with exactly six fractional digits, ties rounded half to even.
std::string format_speed(unsigned long long num, unsigned long long den);

/// One row of the fixed 14-column result schema. Optional fields serialize as
/// empty cells.
struct ResultRecord {
  std::optional<std::uint64_t> seed;
  int n = 0;
  long long m = 0;
  long long red = 0;
  long long blue = 0;
  std::string sampler;  // "uniform", "bicolor", or "grid" for file input
  VerdictKind verdict = VerdictKind::Undetermined;
  std::optional<long long> t_org;
  std::optional<long long> t_stuck;
  std::optional<long long> period;
  std::optional<std::pair<unsigned long long, unsigned long long>> speed;  // exact num/den
  std::optional<unsigned long long> collisions;
  long long steps_spent = 0;
  std::optional<bool> monitor_pass;
};

ResultRecord make_result_record(const TrialResult& trial);

std::string csv_header();
std::string to_csv_line(const ResultRecord& r);

/// One JSONL object per monitored step: time, per-color move counts, the long
/// arc count, and each certificate's outcome. Stable key order.
std::string monitor_record_json(const MonitorStepRecord& rec);

}  // namespace bml
