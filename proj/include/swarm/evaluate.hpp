#pragma once

#include <span>
#include <vector>

#include "swarm/episode_log.hpp"
#include "swarm/policies.hpp"
#include "swarm/run_config.hpp"
#include "swarm/trainer.hpp"

namespace swarm {

// Runs one episode to completion with a frozen policy; metrics cover team
// reward, length, detections and crashes.
EpisodeMetrics run_episode(World& world, Policy& policy, Rng& rng,
                           EpisodeLog* log = nullptr);

struct EvalSummary {
  int episodes = 0;
  double mean_reward = 0.0;
  double std_reward = 0.0;  // population standard deviation
  double mean_steps = 0.0;
  double detection_rate = 0.0;  // detected targets / (episodes * n_targets)
  double crash_rate = 0.0;      // crashes / (episodes * n_drones)
};

// Frozen-policy evaluation over independent episodes. Episode e draws its
// stream from splitmix64(seed + e), so results are deterministic end to end
// and independent of the thread count. Throws for episodes < 1 and for a
// learned policy whose agent count does not match the world.
EvalSummary evaluate(const WorldConfig& config, PolicyKind kind,
                     const std::vector<AgentNets>* nets, int episodes,
                     std::uint64_t seed, int threads, bool greedy = false,
                     std::vector<EpisodeMetrics>* per_episode = nullptr);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

struct SweepPoint {
  int value = 0;  // team size or target count
  EvalSummary summary;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  LinearFit fit;  // mean reward vs swept value
};

// Trains a fresh team per size (targets fixed at config.world.n_targets) and
// evaluates it. Point i derives its training seed from splitmix64(seed + 2i)
// and its evaluation seed from splitmix64(seed + 2i + 1).
SweepResult sweep_team_size(const RunConfig& config, std::span<const int> sizes);

// As above over target counts with the team size fixed. When
// config.checkpoint_in is set the networks are loaded instead of trained
// (one team serves every target count).
SweepResult sweep_target_count(const RunConfig& config,
                               std::span<const int> counts);

}  // namespace swarm
