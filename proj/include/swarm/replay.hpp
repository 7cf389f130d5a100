#pragma once

#include <ostream>
#include <string>

#include "swarm/episode_log.hpp"

namespace swarm {

// Line-delimited episode trajectory for offline plotting. Preamble comment
// lines (leading '#') carry the config, the initial target positions and the
// episode outcome; then a CSV header and one row per (step, drone):
//
//   step,drone,x,y,heading,dir,speed,operative,battery,action,reward,detections
//
// `detections` is a ';'-joined list of target indices first reported by that
// drone on that step. Field order is stable across versions.
inline constexpr const char* kReplayHeader =
    "step,drone,x,y,heading,dir,speed,operative,battery,action,reward,detections";

void write_replay(std::ostream& out, const EpisodeLog& log);
void write_replay_file(const std::string& path, const EpisodeLog& log);

}  // namespace swarm
