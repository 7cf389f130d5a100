#include "swarm/episode_log.hpp"

namespace swarm {

void EpisodeLog::start(const World& world) {
  config = world.config();
  initial_drones = world.drones();
  initial_targets = world.targets();
  steps.clear();
  final_reason = DoneReason::Running;
}

void EpisodeLog::record(const World& world, std::span<const Action> actions,
                        const StepResult& result) {
  StepRecord rec;
  rec.step = world.steps_taken();
  rec.drones = world.drones();
  rec.actions.assign(actions.begin(), actions.end());
  rec.rewards = result.rewards;
  rec.newly_detected = result.newly_detected;
  rec.detected_by = result.detected_by;
  // A drone acted iff it was operative before the step: still flying now, or
  // grounded exactly this step (its reward carries the crash penalty).
  const int n = static_cast<int>(world.drones().size());
  rec.acted.assign(n, 0);
  const StepRecord* prev = steps.empty() ? nullptr : &steps.back();
  for (int i = 0; i < n; ++i) {
    const bool was_operative =
        prev ? prev->drones[i].operative : initial_drones[i].operative;
    rec.acted[i] = was_operative ? 1 : 0;
  }
  final_reason = result.reason;
  steps.push_back(std::move(rec));
}

double team_episode_reward(const EpisodeLog& log) {
  double total = 0.0;
  for (const auto& rec : log.steps) {
    total += log.config.r_detect *
             static_cast<double>(rec.newly_detected.size());
    int acted = 0;
    int crashed = 0;
    for (std::size_t i = 0; i < rec.acted.size(); ++i) {
      if (!rec.acted[i]) continue;
      ++acted;
      if (!rec.drones[i].operative) ++crashed;
    }
    total += log.config.r_step * acted;
    total += log.config.r_crash * crashed;
  }
  return total;
}

int crash_count(const EpisodeLog& log) {
  int crashes = 0;
  for (const auto& rec : log.steps)
    for (std::size_t i = 0; i < rec.acted.size(); ++i)
      if (rec.acted[i] && !rec.drones[i].operative) ++crashes;
  return crashes;
}

int detection_count(const EpisodeLog& log) {
  int n = 0;
  for (const auto& rec : log.steps)
    n += static_cast<int>(rec.newly_detected.size());
  return n;
}

}  // namespace swarm
