#include "swarm/evaluate.hpp"

#include <cmath>
#include <stdexcept>

#include "swarm/parallel.hpp"

namespace swarm {

EpisodeMetrics run_episode(World& world, Policy& policy, Rng& rng,
                           EpisodeLog* log) {
  const int n = world.config().n_drones;
  policy.begin_episode();
  if (log) log->start(world);

  EpisodeMetrics m;
  int acted_steps = 0;
  std::vector<Action> joint(static_cast<std::size_t>(n), Action::MoveNorth);
  std::vector<std::uint8_t> was_operative(static_cast<std::size_t>(n), 0);
  while (!world.done()) {
    for (int i = 0; i < n; ++i) {
      was_operative[i] = world.drones()[i].operative ? 1 : 0;
      if (!was_operative[i]) continue;
      joint[i] = policy.act(observe(world, i), i, rng);
      ++acted_steps;
    }
    const StepResult result = world.step(joint, rng);
    if (log) log->record(world, joint, result);
    m.detections += static_cast<int>(result.newly_detected.size());
    for (int i = 0; i < n; ++i)
      if (was_operative[i] && !world.drones()[i].operative) ++m.crashes;
  }
  m.length = world.steps_taken();
  m.team_reward = world.config().r_detect * m.detections +
                  world.config().r_step * acted_steps +
                  world.config().r_crash * m.crashes;
  return m;
}

EvalSummary evaluate(const WorldConfig& config, PolicyKind kind,
                     const std::vector<AgentNets>* nets, int episodes,
                     std::uint64_t seed, int threads, bool greedy,
                     std::vector<EpisodeMetrics>* per_episode) {
  config.validate();
  if (episodes < 1)
    throw std::invalid_argument("evaluate: episodes must be >= 1");
  if (kind == PolicyKind::Learned) {
    if (nets == nullptr || static_cast<int>(nets->size()) != config.n_drones)
      throw std::invalid_argument(
          "evaluate: learned policy needs one network per drone");
  }

  std::vector<EpisodeMetrics> records(static_cast<std::size_t>(episodes));
  parallel_for(episodes, threads, [&](int e) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(e));
    World world(config, rng());
    auto policy = make_policy(kind, config, nets, greedy);
    records[e] = run_episode(world, *policy, rng);
    records[e].episode = e;
  });

  EvalSummary s;
  s.episodes = episodes;
  double sum = 0.0, steps = 0.0;
  long detections = 0, crashes = 0;
  for (const auto& r : records) {
    sum += r.team_reward;
    steps += r.length;
    detections += r.detections;
    crashes += r.crashes;
  }
  s.mean_reward = sum / episodes;
  s.mean_steps = steps / episodes;
  s.detection_rate = static_cast<double>(detections) /
                     (static_cast<double>(episodes) * config.n_targets);
  s.crash_rate = static_cast<double>(crashes) /
                 (static_cast<double>(episodes) * config.n_drones);
  double sq = 0.0;
  for (const auto& r : records) {
    const double d = r.team_reward - s.mean_reward;
    sq += d * d;
  }
  s.std_reward = std::sqrt(sq / episodes);

  if (per_episode) *per_episode = std::move(records);
  return s;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("least_squares: mismatched or empty input");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  if (sxx == 0.0) {
    fit.slope = 0.0;
    fit.intercept = my;
    fit.r2 = 0.0;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

SweepResult run_sweep(const RunConfig& config, std::span<const int> values,
                      bool vary_team_size) {
  if (values.empty())
    throw std::invalid_argument("sweep: empty value list");

  const bool load = !vary_team_size && !config.checkpoint_in.empty();
  std::vector<AgentNets> shared_nets;
  if (load) shared_nets = load_checkpoint(config.checkpoint_in);

  SweepResult result;
  result.points.resize(values.size());
  const int outer_threads =
      std::min(resolve_threads(config.threads), static_cast<int>(values.size()));
  parallel_for(static_cast<int>(values.size()), outer_threads, [&](int i) {
    RunConfig point = config;
    point.threads = 1;  // points already run in parallel
    point.checkpoint_in.clear();
    point.checkpoint_out.clear();
    if (vary_team_size)
      point.world.n_drones = values[i];
    else
      point.world.n_targets = values[i];
    point.world.validate();

    const std::uint64_t train_seed =
        splitmix64(config.seed + 2 * static_cast<std::uint64_t>(i));
    const std::uint64_t eval_seed =
        splitmix64(config.seed + 2 * static_cast<std::uint64_t>(i) + 1);

    std::vector<AgentNets> nets;
    if (load) {
      nets = shared_nets;
    } else {
      point.seed = train_seed;
      nets = nets_of(run_training(point).learners);
    }
    result.points[i].value = values[i];
    result.points[i].summary =
        evaluate(point.world, PolicyKind::Learned, &nets, point.eval_episodes,
                 eval_seed, point.threads, point.eval_argmax);
  });

  std::vector<double> xs, ys;
  for (const auto& p : result.points) {
    xs.push_back(static_cast<double>(p.value));
    ys.push_back(p.summary.mean_reward);
  }
  result.fit = xs.size() >= 2 ? least_squares(xs, ys)
                              : LinearFit{0.0, ys.empty() ? 0.0 : ys[0], 0.0};
  return result;
}

}  // namespace

SweepResult sweep_team_size(const RunConfig& config,
                            std::span<const int> sizes) {
  return run_sweep(config, sizes, true);
}

SweepResult sweep_target_count(const RunConfig& config,
                               std::span<const int> counts) {
  if (!config.checkpoint_in.empty()) {
    std::vector<AgentNets> nets = load_checkpoint(config.checkpoint_in);
    if (static_cast<int>(nets.size()) != config.world.n_drones)
      throw std::invalid_argument(
          "sweep: checkpoint agent count does not match n_drones");
  }
  return run_sweep(config, counts, false);
}

}  // namespace swarm
