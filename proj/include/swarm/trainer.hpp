#pragma once

#include <span>
#include <vector>

#include "swarm/checkpoint.hpp"
#include "swarm/episode_log.hpp"
#include "swarm/mlp.hpp"
#include "swarm/observation.hpp"
#include "swarm/run_config.hpp"
#include "swarm/world.hpp"

namespace swarm {

// One joint environment transition. All vectors have one slot per drone;
// `acted` marks the drones that were operative when the step was taken, and
// only those slots feed training.
struct Transition {
  std::vector<ObsVector> obs;
  std::vector<int> actions;
  std::vector<double> rewards;
  std::vector<ObsVector> next_obs;
  std::vector<std::uint8_t> acted;
  // Per agent: this transition carries the agent's last reward of the
  // episode (it crashed here, or the episode ended here).
  std::vector<std::uint8_t> agent_terminal;
  bool done = false;
};

struct SampleBuffer {
  std::vector<Transition> items;
  bool episode_done = false;
  DoneReason reason = DoneReason::Running;
  // Episode accumulators over the collected steps.
  int new_detections = 0;
  int acted_steps = 0;
  int crashes = 0;
};

// Independent per-agent learner. Parameters, gradients and optimizer state
// are never shared between agents.
struct AgentLearner {
  int index = 0;
  MlpParams actor;
  MlpParams critic;
  OptimizerState actor_opt;
  OptimizerState critic_opt;

  static AgentLearner init(int index, const LayerDims& actor_dims,
                           const LayerDims& critic_dims, Rng& rng);
};

// Backward recursion G <- gamma * G + r over the batch, seeded with 0 at a
// terminal tail and with the bootstrap value otherwise. Output is
// index-aligned with the rewards. Throws on an empty sequence or gamma
// outside [0, 1].
std::vector<double> compute_returns(std::span<const double> rewards,
                                    bool terminal, double bootstrap_value,
                                    double gamma);

// Steps the world up to batch_size times, sampling every operative drone's
// action from its own actor on its own observation. Stops early at episode
// end; the caller starts the next episode. Optionally appends to a log.
SampleBuffer collect_batch(World& world, std::vector<AgentLearner>& learners,
                           int batch_size, Rng& rng, EpisodeLog* log = nullptr);

struct TrainOptions {
  double gamma = 0.99;
  double lambda_pi = 1.0;
  double lambda_v = 1.0;
  double lambda_h = 0.001;
  OptimizerConfig optimizer;
};

// n-step returns from the agent's own reward slice and critic bootstrap,
// advantage-weighted actor gradients with the entropy term, squared-error
// critic gradients, then exactly one optimizer update per network.
void train_agent(AgentLearner& learner, const SampleBuffer& buffer,
                 const TrainOptions& options);

struct EpisodeMetrics {
  int episode = 0;
  double team_reward = 0.0;
  int length = 0;
  int detections = 0;
  int crashes = 0;
  long wall_ms = 0;
};

struct TrainingResult {
  std::vector<AgentLearner> learners;
  std::vector<EpisodeMetrics> metrics;
};

// The full decentralized training loop: per episode, alternate batch
// collection by the team and independent per-agent updates. Fully
// reproducible from config.seed. Writes periodic checkpoints when
// config.checkpoint_out is set and propagates checkpoint I/O failures.
TrainingResult run_training(const RunConfig& config);

std::vector<AgentNets> nets_of(const std::vector<AgentLearner>& learners);

}  // namespace swarm
