#include "swarm/trainer.hpp"

#include <chrono>
#include <stdexcept>

namespace swarm {

AgentLearner AgentLearner::init(int index, const LayerDims& actor_dims,
                                const LayerDims& critic_dims, Rng& rng) {
  AgentLearner learner;
  learner.index = index;
  learner.actor = MlpParams::init(actor_dims, rng);
  learner.critic = MlpParams::init(critic_dims, rng);
  learner.actor_opt = OptimizerState::init(learner.actor);
  learner.critic_opt = OptimizerState::init(learner.critic);
  return learner;
}

std::vector<double> compute_returns(std::span<const double> rewards,
                                    bool terminal, double bootstrap_value,
                                    double gamma) {
  if (rewards.empty())
    throw std::invalid_argument("compute_returns: empty reward sequence");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("compute_returns: gamma must be in [0, 1]");

  std::vector<double> returns(rewards.size());
  double g = terminal ? 0.0 : bootstrap_value;
  for (std::size_t j = rewards.size(); j-- > 0;) {
    g = gamma * g + rewards[j];
    returns[j] = g;
  }
  return returns;
}

SampleBuffer collect_batch(World& world, std::vector<AgentLearner>& learners,
                           int batch_size, Rng& rng, EpisodeLog* log) {
  if (batch_size < 1)
    throw std::invalid_argument("collect_batch: batch size must be >= 1");
  const int n = world.config().n_drones;
  if (static_cast<int>(learners.size()) != n)
    throw std::invalid_argument("collect_batch: learner count mismatch");

  SampleBuffer buffer;
  buffer.items.reserve(static_cast<std::size_t>(batch_size));

  for (int step = 0; step < batch_size && !world.done(); ++step) {
    Transition tr;
    tr.obs = observe_all(world);
    tr.actions.assign(n, 0);
    tr.acted.assign(n, 0);
    std::vector<Action> joint(static_cast<std::size_t>(n), Action::MoveNorth);
    for (int i = 0; i < n; ++i) {
      if (!world.drones()[i].operative) continue;
      tr.acted[i] = 1;
      const Eigen::VectorXd probs =
          actor_forward(learners[i].actor, tr.obs[i]);
      const int a = sample_action(probs, rng);
      tr.actions[i] = a;
      joint[i] = static_cast<Action>(a);
    }

    const StepResult result = world.step(joint, rng);
    tr.rewards = result.rewards;
    tr.next_obs = observe_all(world);
    tr.done = result.done;
    tr.agent_terminal.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      const bool crashed_now = tr.acted[i] && !world.drones()[i].operative;
      tr.agent_terminal[i] = (result.done || crashed_now) ? 1 : 0;
      if (crashed_now) ++buffer.crashes;
      if (tr.acted[i]) ++buffer.acted_steps;
    }
    buffer.new_detections += static_cast<int>(result.newly_detected.size());
    buffer.episode_done = result.done;
    buffer.reason = result.reason;
    if (log) log->record(world, joint, result);

    buffer.items.push_back(std::move(tr));
  }
  return buffer;
}

void train_agent(AgentLearner& learner, const SampleBuffer& buffer,
                 const TrainOptions& options) {
  const int i = learner.index;

  // The agent's slice: the steps it actually took. Crashing ends the slice,
  // so it is always a prefix of the buffer.
  std::vector<const Transition*> slice;
  slice.reserve(buffer.items.size());
  for (const auto& tr : buffer.items)
    if (tr.acted[i]) slice.push_back(&tr);
  if (slice.empty()) return;

  std::vector<double> rewards(slice.size());
  for (std::size_t j = 0; j < slice.size(); ++j)
    rewards[j] = slice[j]->rewards[i];

  const Transition& last = *slice.back();
  const bool terminal = last.agent_terminal[i] != 0;
  const double bootstrap =
      terminal ? 0.0 : critic_forward(learner.critic, last.next_obs[i]);
  const std::vector<double> returns =
      compute_returns(rewards, terminal, bootstrap, options.gamma);

  for (std::size_t j = 0; j < slice.size(); ++j) {
    const ObsVector& o = slice[j]->obs[i];
    const double value = critic_forward(learner.critic, o);
    const double advantage = returns[j] - value;
    accumulate_actor_grad(learner.actor, o, slice[j]->actions[i], advantage,
                          options.lambda_h, options.lambda_pi);
    accumulate_critic_grad(learner.critic, o, returns[j], options.lambda_v);
  }

  // One update per network per buffer.
  apply_update(learner.actor, learner.actor_opt, options.optimizer);
  apply_update(learner.critic, learner.critic_opt, options.optimizer);
}

std::vector<AgentNets> nets_of(const std::vector<AgentLearner>& learners) {
  std::vector<AgentNets> nets;
  nets.reserve(learners.size());
  for (const auto& l : learners) nets.push_back(AgentNets{l.actor, l.critic});
  return nets;
}

TrainingResult run_training(const RunConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Rng rng = make_stream(config.seed, 0);

  TrainingResult result;
  if (!config.checkpoint_in.empty()) {
    std::vector<AgentNets> nets = load_checkpoint(config.checkpoint_in);
    if (static_cast<int>(nets.size()) != config.world.n_drones)
      throw std::runtime_error(
          "run_training: checkpoint agent count does not match n_drones");
    for (int i = 0; i < config.world.n_drones; ++i) {
      AgentLearner learner;
      learner.index = i;
      learner.actor = std::move(nets[i].actor);
      learner.critic = std::move(nets[i].critic);
      learner.actor_opt = OptimizerState::init(learner.actor);
      learner.critic_opt = OptimizerState::init(learner.critic);
      result.learners.push_back(std::move(learner));
    }
  } else {
    const LayerDims actor_dims{kObsSize, 200, 100, kNumActions};
    const LayerDims critic_dims{kObsSize, 200, 100, 1};
    for (int i = 0; i < config.world.n_drones; ++i)
      result.learners.push_back(
          AgentLearner::init(i, actor_dims, critic_dims, rng));
  }

  TrainOptions options;
  options.gamma = config.gamma;
  options.lambda_pi = config.lambda_pi;
  options.lambda_v = config.lambda_v;
  options.lambda_h = config.lambda_h;
  options.optimizer = config.optimizer_config();

  World world(config.world, 0);
  for (int episode = 0; episode < config.episodes; ++episode) {
    world.reset(rng());

    double team_reward = 0.0;
    int detections = 0;
    int crashes = 0;
    int acted_steps = 0;
    while (!world.done()) {
      SampleBuffer buffer =
          collect_batch(world, result.learners, config.batch_size, rng);
      for (auto& learner : result.learners)
        train_agent(learner, buffer, options);
      detections += buffer.new_detections;
      crashes += buffer.crashes;
      acted_steps += buffer.acted_steps;
    }
    team_reward = config.world.r_detect * detections +
                  config.world.r_step * acted_steps +
                  config.world.r_crash * crashes;

    const auto now = std::chrono::steady_clock::now();
    EpisodeMetrics m;
    m.episode = episode;
    m.team_reward = team_reward;
    m.length = world.steps_taken();
    m.detections = detections;
    m.crashes = crashes;
    m.wall_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(now - t0).count());
    result.metrics.push_back(m);

    if (!config.checkpoint_out.empty() &&
        (episode + 1) % config.checkpoint_every == 0)
      save_checkpoint(config.checkpoint_out, nets_of(result.learners));
  }

  if (!config.checkpoint_out.empty())
    save_checkpoint(config.checkpoint_out, nets_of(result.learners));
  return result;
}

}  // namespace swarm
