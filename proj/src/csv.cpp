#include "swarm/csv.hpp"

#include <charconv>
#include <cstdio>

namespace swarm {

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string format_number(int v) { return std::to_string(v); }
std::string format_number(long v) { return std::to_string(v); }
std::string format_number(std::uint64_t v) { return std::to_string(v); }

void write_metrics_header(std::ostream& out) { out << kMetricsHeader << "\n"; }

void write_metrics_row(std::ostream& out, const MetricsRow& row) {
  out << format_number(row.run) << ',' << format_number(row.seed) << ','
      << format_number(row.episode.episode) << ','
      << format_number(row.episode.team_reward) << ','
      << format_number(row.episode.length) << ','
      << format_number(row.episode.detections) << ','
      << format_number(row.episode.crashes) << ','
      << format_number(row.episode.wall_ms) << "\n";
}

}  // namespace swarm
