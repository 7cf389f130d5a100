#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "swarm/trainer.hpp"

namespace swarm {

// Shortest round-trip decimal form (std::to_chars); the same double always
// prints the same bytes, which is what makes CSV outputs bit-reproducible.
std::string format_number(double v);
std::string format_number(int v);
std::string format_number(long v);
std::string format_number(std::uint64_t v);

// Training metrics schema, one row per episode. `wall_ms` is measured wall
// time and is the only column excluded from the bit-reproducibility
// guarantee.
inline constexpr const char* kMetricsHeader =
    "run,seed,episode,team_reward,length,detections,crashes,wall_ms";

struct MetricsRow {
  int run = 0;
  std::uint64_t seed = 0;
  EpisodeMetrics episode;
};

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricsRow& row);

}  // namespace swarm
