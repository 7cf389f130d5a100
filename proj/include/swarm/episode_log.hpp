#pragma once

#include <vector>

#include "swarm/world.hpp"

namespace swarm {

struct StepRecord {
  int step = 0;  // 1-based
  std::vector<DroneState> drones;  // state after the step
  std::vector<Action> actions;     // joint action as submitted
  std::vector<double> rewards;
  std::vector<std::uint8_t> acted;  // operative at the start of the step
  std::vector<int> newly_detected;
  std::vector<int> detected_by;
};

struct EpisodeLog {
  WorldConfig config;
  std::vector<DroneState> initial_drones;
  std::vector<TargetState> initial_targets;
  std::vector<StepRecord> steps;
  DoneReason final_reason = DoneReason::Running;

  void start(const World& world);
  void record(const World& world, std::span<const Action> actions,
              const StepResult& result);
};

// The scalar reported in all result figures: detection bonus once per target
// at team level, plus every per-drone step cost and crash penalty.
double team_episode_reward(const EpisodeLog& log);

int crash_count(const EpisodeLog& log);
int detection_count(const EpisodeLog& log);

}  // namespace swarm
