#include "bml/io.hpp"

#include <charconv>
#include <cstdio>

#include "json.hpp"

namespace bml {

ParseError::ParseError(int line_number, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + message), line(line_number) {}

namespace {

// Returns the next line (without its newline) and advances `pos` past it.
std::string_view take_line(std::string_view text, std::size_t& pos, int line_number) {
  if (pos >= text.size()) throw ParseError(line_number, "unexpected end of input");
  const std::size_t nl = text.find('\n', pos);
  if (nl == std::string_view::npos) {
    throw ParseError(line_number, "line is not newline-terminated");
  }
  const std::string_view line = text.substr(pos, nl - pos);
  pos = nl + 1;
  return line;
}

}  // namespace

Configuration parse_grid(std::string_view text) {
  std::size_t pos = 0;
  const std::string_view header = take_line(text, pos, 1);
  if (header.size() < 3 || header[0] != 'N' || header[1] != ' ') {
    throw ParseError(1, "expected header \"N <side>\"");
  }
  int n = 0;
  const char* first = header.data() + 2;
  const char* last = header.data() + header.size();
  const auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || n < 1) {
    throw ParseError(1, "invalid torus side in header");
  }
  Configuration config(n);
  for (int row = 0; row < n; ++row) {
    const int line_number = row + 2;
    const std::string_view line = take_line(text, pos, line_number);
    if (static_cast<int>(line.size()) != n) {
      throw ParseError(line_number, "expected " + std::to_string(n) + " cells, got " +
                                        std::to_string(line.size()));
    }
    const int i = n - 1 - row;  // top line is row i = n-1
    for (int j = 0; j < n; ++j) {
      switch (line[static_cast<std::size_t>(j)]) {
        case '.': break;
        case 'R': config.set(i, j, Cell::Red); break;
        case 'B': config.set(i, j, Cell::Blue); break;
        default:
          throw ParseError(line_number, std::string("illegal cell character '") +
                                            line[static_cast<std::size_t>(j)] + "'");
      }
    }
  }
  if (pos != text.size()) throw ParseError(n + 2, "trailing content after the grid");
  return config;
}

std::string serialize_grid(const Configuration& c) {
  const int n = c.n();
  std::string out = "N " + std::to_string(n) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1));
  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j < n; ++j) {
      const Cell cell = c.at(i, j);
      out.push_back(cell == Cell::Empty ? '.' : (cell == Cell::Red ? 'R' : 'B'));
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_ppm(const Configuration& c) {
  const int n = c.n();
  std::string out = "P6\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * 3);
  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j < n; ++j) {
      switch (c.at(i, j)) {
        case Cell::Empty:
          out.append("\xff\xff\xff", 3);
          break;
        case Cell::Red:
          out.append("\xff\x00\x00", 3);
          break;
        case Cell::Blue:
          out.append("\x00\x00\xff", 3);
          break;
      }
    }
  }
  return out;
}

std::string render(const Configuration& c, RenderFormat format) {
  return format == RenderFormat::Ascii ? serialize_grid(c) : render_ppm(c);
}

std::string format_speed(unsigned long long num, unsigned long long den) {
  if (den == 0) throw std::invalid_argument("speed denominator must be positive");
  unsigned long long whole = num / den;
  const unsigned __int128 scaled = static_cast<unsigned __int128>(num % den) * 1'000'000ULL;
  unsigned long long frac = static_cast<unsigned long long>(scaled / den);
  const unsigned __int128 remainder = scaled % den;
  const unsigned __int128 twice = remainder * 2;
  if (twice > den || (twice == den && (frac & 1ULL) != 0)) ++frac;
  if (frac == 1'000'000ULL) {
    frac = 0;
    ++whole;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%llu.%06llu", whole, frac);
  return buf;
}

ResultRecord make_result_record(const TrialResult& trial) {
  ResultRecord r;
  r.seed = trial.spec.seed;
  r.n = trial.spec.n;
  r.m = trial.red_count + trial.blue_count;
  r.red = trial.red_count;
  r.blue = trial.blue_count;
  r.sampler = std::string(to_string(trial.spec.sampler));
  r.verdict = trial.verdict.kind;
  r.t_org = trial.verdict.t_org;
  r.t_stuck = trial.verdict.t_stuck;
  r.period = trial.verdict.period;
  if (trial.verdict.period_moves && trial.verdict.period) {
    const unsigned long long den = static_cast<unsigned long long>(r.m) *
                                   static_cast<unsigned long long>(*trial.verdict.period);
    r.speed = std::make_pair(static_cast<unsigned long long>(*trial.verdict.period_moves), den);
  }
  r.collisions = trial.collisions;
  r.steps_spent = trial.verdict.steps_spent;
  r.monitor_pass = trial.monitor_pass;
  return r;
}

std::string csv_header() {
  return "seed,n,m,red,blue,sampler,verdict,t_org,t_stuck,period,speed,collisions,steps_spent,"
         "monitor_pass\n";
}

std::string to_csv_line(const ResultRecord& r) {
  std::string out;
  const auto cell = [&out](const std::string& v) {
    out += v;
    out.push_back(',');
  };
  cell(r.seed ? std::to_string(*r.seed) : "");
  cell(std::to_string(r.n));
  cell(std::to_string(r.m));
  cell(std::to_string(r.red));
  cell(std::to_string(r.blue));
  cell(r.sampler);
  cell(std::string(to_string(r.verdict)));
  cell(r.t_org ? std::to_string(*r.t_org) : "");
  cell(r.t_stuck ? std::to_string(*r.t_stuck) : "");
  cell(r.period ? std::to_string(*r.period) : "");
  cell(r.speed ? format_speed(r.speed->first, r.speed->second) : "");
  cell(r.collisions ? std::to_string(*r.collisions) : "");
  cell(std::to_string(r.steps_spent));
  out += r.monitor_pass ? (*r.monitor_pass ? "true" : "false") : "";
  out.push_back('\n');
  return out;
}

std::string monitor_record_json(const MonitorStepRecord& rec) {
  nlohmann::ordered_json j;
  j["t"] = rec.t;
  j["moved_blue"] = rec.stats.moved_blue;
  j["blocked_blue"] = rec.stats.blocked_blue;
  j["moved_red"] = rec.stats.moved_red;
  j["blocked_red"] = rec.stats.blocked_red;
  j["long_arc_count"] = rec.long_arcs;
  j["arc_static"] = rec.arc_static;
  j["long_arc_monotone"] = rec.long_arc_monotone;
  j["projection_step"] = rec.projection_step;
  j["circuit_no_long_arcs"] = rec.circuit_implies_no_long_arcs;
  j["long_arc_present"] = rec.long_arc_present;
  return j.dump();
}

}  // namespace bml
