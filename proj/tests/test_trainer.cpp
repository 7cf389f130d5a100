#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "swarm/trainer.hpp"

using namespace swarm;

namespace {

// Closed-form discounted-sum oracle:
//   G_j = sum_k gamma^(k-j) r_k + gamma^(m-j+1) * bootstrap.
std::vector<double> returns_oracle(const std::vector<double>& rewards,
                                   bool terminal, double bootstrap,
                                   double gamma) {
  const std::size_t m = rewards.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    double discount = 1.0;
    for (std::size_t k = j; k < m; ++k) {
      acc += discount * rewards[k];
      discount *= gamma;
    }
    if (!terminal) acc += discount * bootstrap;
    out[j] = acc;
  }
  return out;
}

RunConfig small_config() {
  RunConfig c;
  c.world.n_drones = 2;
  c.world.n_targets = 2;
  c.world.horizon = 40;
  c.episodes = 3;
  c.batch_size = 8;
  return c;
}

std::vector<AgentLearner> fresh_learners(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<AgentLearner> learners;
  for (int i = 0; i < n; ++i)
    learners.push_back(AgentLearner::init(i, LayerDims{12, 16, 12, 6},
                                          LayerDims{12, 16, 12, 1}, rng));
  return learners;
}

}  // namespace

TEST_CASE("compute_returns matches the worked examples") {
  SUBCASE("undiscounted suffix sums") {
    const std::vector<double> r{1.0, 1.0, 1.0};
    const auto g = compute_returns(r, true, 0.0, 1.0);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(3.0));
    CHECK(g[1] == doctest::Approx(2.0));
    CHECK(g[2] == doctest::Approx(1.0));
  }

  SUBCASE("single reward with bootstrap") {
    const std::vector<double> r{0.5};
    const auto g = compute_returns(r, false, 2.0, 0.99);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(2.48));
  }

  SUBCASE("gamma zero reduces to the immediate reward") {
    const std::vector<double> r{0.3, -0.7, 2.0};
    const auto g = compute_returns(r, false, 123.0, 0.0);
    CHECK(g[0] == doctest::Approx(0.3));
    CHECK(g[1] == doctest::Approx(-0.7));
    CHECK(g[2] == doctest::Approx(2.0));
  }
}

TEST_CASE("compute_returns equals the closed-form oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + uniform_int(rng, 64);
    std::vector<double> rewards(static_cast<std::size_t>(m));
    for (auto& r : rewards) r = uniform_real(rng, -500.0, 900.0);
    const bool terminal = bernoulli(rng, 0.5);
    const double bootstrap = uniform_real(rng, -100.0, 100.0);
    const double gammas[4] = {0.0, 0.5, 0.99, 1.0};
    const double gamma = gammas[uniform_int(rng, 4)];

    const auto got = compute_returns(rewards, terminal, bootstrap, gamma);
    const auto want = returns_oracle(rewards, terminal, bootstrap, gamma);
    for (int j = 0; j < m; ++j)
      REQUIRE(std::fabs(got[j] - want[j]) <= 1e-12 * std::max(1.0, std::fabs(want[j])));
  }
}

TEST_CASE("compute_returns rejects bad input") {
  CHECK_THROWS_AS(compute_returns({}, true, 0.0, 0.9), std::invalid_argument);
  const std::vector<double> r{1.0};
  CHECK_THROWS_AS(compute_returns(r, true, 0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(compute_returns(r, true, 0.0, -0.1), std::invalid_argument);
}

TEST_CASE("collect_batch fills and truncates correctly") {
  RunConfig c = small_config();
  World world(c.world, 123);
  auto learners = fresh_learners(2, 1);

  SUBCASE("long episode fills the batch") {
    Rng rng(2);
    const SampleBuffer buffer = collect_batch(world, learners, 8, rng);
    CHECK(buffer.items.size() == 8);
    for (const auto& tr : buffer.items) {
      CHECK(tr.obs.size() == 2);
      CHECK(tr.actions.size() == 2);
      CHECK(tr.rewards.size() == 2);
      CHECK(tr.next_obs.size() == 2);
    }
  }

  SUBCASE("terminal episode truncates the batch") {
    // Horizon 3: the third step ends the episode regardless of play.
    RunConfig short_c = small_config();
    short_c.world.horizon = 3;
    World sw(short_c.world, 9);
    Rng rng(3);
    const SampleBuffer b1 = collect_batch(sw, learners, 32, rng);
    CHECK(b1.items.size() <= 3);
    CHECK(b1.episode_done);
    CHECK(b1.items.back().done);
    CHECK(sw.done());
  }

  SUBCASE("frozen params and seeds reproduce the collection") {
    World w1(c.world, 77), w2(c.world, 77);
    Rng r1(5), r2(5);
    const SampleBuffer b1 = collect_batch(w1, learners, 8, r1);
    const SampleBuffer b2 = collect_batch(w2, learners, 8, r2);
    REQUIRE(b1.items.size() == b2.items.size());
    for (std::size_t s = 0; s < b1.items.size(); ++s) {
      CHECK(b1.items[s].actions == b2.items[s].actions);
      CHECK(b1.items[s].rewards == b2.items[s].rewards);
      CHECK(b1.items[s].obs == b2.items[s].obs);
    }
  }
}

TEST_CASE("train_agent applies exactly one update per network") {
  RunConfig c = small_config();
  World world(c.world, 123);
  auto learners = fresh_learners(2, 2);
  Rng rng(11);
  const SampleBuffer buffer = collect_batch(world, learners, 8, rng);

  TrainOptions opts;
  opts.gamma = 0.99;
  train_agent(learners[0], buffer, opts);
  CHECK(learners[0].actor_opt.step_count == 1);
  CHECK(learners[0].critic_opt.step_count == 1);
  CHECK(learners[0].actor.grad_norm() == 0.0);  // consumed
  // The other learner is untouched: no parameter sharing.
  CHECK(learners[1].actor_opt.step_count == 0);
}

TEST_CASE("zero-advantage batches reduce to the entropy-only update") {
  // Rig the critic to output exactly zero (zero weights) and make every
  // reward zero with a terminal tail; then G = V = 0 on every sample and the
  // actor update is driven by the entropy term alone.
  auto learners = fresh_learners(1, 3);
  learners[0].critic.w1.setZero();
  learners[0].critic.w2.setZero();
  learners[0].critic.w3.setZero();
  learners[0].critic.b1.setZero();
  learners[0].critic.b2.setZero();
  learners[0].critic.b3.setZero();

  SampleBuffer buffer;
  buffer.episode_done = true;
  Rng rng(4);
  for (int s = 0; s < 4; ++s) {
    Transition tr;
    ObsVector o{};
    for (auto& v : o) v = uniform_real(rng, 0.0, 1.0);
    tr.obs = {o};
    tr.next_obs = {o};
    tr.actions = {s % 6};
    tr.rewards = {0.0};
    tr.acted = {1};
    tr.agent_terminal = {static_cast<std::uint8_t>(s == 3 ? 1 : 0)};
    tr.done = s == 3;
    buffer.items.push_back(tr);
  }

  TrainOptions opts;
  opts.lambda_h = 0.001;

  // Reference: accumulate only the entropy gradients on a clone and update.
  AgentLearner reference = learners[0];
  for (const auto& tr : buffer.items)
    accumulate_actor_grad(reference.actor, tr.obs[0], tr.actions[0], 0.0,
                          opts.lambda_h, opts.lambda_pi);
  apply_update(reference.actor, reference.actor_opt, opts.optimizer);

  train_agent(learners[0], buffer, opts);
  CHECK((learners[0].actor.w1 - reference.actor.w1).norm() <= 1e-15);
  CHECK((learners[0].actor.w3 - reference.actor.w3).norm() <= 1e-15);
}

TEST_CASE("positive advantage raises the action probability") {
  auto learners = fresh_learners(1, 5);
  ObsVector o{};
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = 0.1 * (1.0 + i);

  SampleBuffer buffer;
  buffer.episode_done = true;
  Transition tr;
  tr.obs = {o};
  tr.next_obs = {o};
  tr.actions = {2};
  tr.rewards = {5.0};  // strongly positive return, critic starts near zero
  tr.acted = {1};
  tr.agent_terminal = {1};
  tr.done = true;
  buffer.items.push_back(tr);

  const double before = actor_forward(learners[0].actor, o)[2];
  TrainOptions opts;
  opts.lambda_h = 0.0;
  train_agent(learners[0], buffer, opts);
  const double after = actor_forward(learners[0].actor, o)[2];
  CHECK(after > before);
}

TEST_CASE("critic regression converges on constant-return data") {
  // Constant-return data means every sample carries the same target, so the
  // buffer holds a single terminal transition (a longer buffer would compound
  // the rewards through the backward recursion).
  Rng init_rng(6);
  std::vector<AgentLearner> learners{AgentLearner::init(
      0, LayerDims{12, 16, 12, 6}, LayerDims{12, 32, 24, 1}, init_rng)};
  ObsVector o{};
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = 0.05 * (1.0 + i);
  const double target = 0.5;

  SampleBuffer buffer;
  buffer.episode_done = true;
  Transition tr;
  tr.obs = {o};
  tr.next_obs = {o};
  tr.actions = {0};
  tr.rewards = {target};
  tr.acted = {1};
  tr.agent_terminal = {1};
  tr.done = true;
  buffer.items.push_back(tr);

  TrainOptions opts;
  for (int update = 0; update < 500; ++update)
    train_agent(learners[0], buffer, opts);
  const double v = critic_forward(learners[0].critic, o);
  CHECK(std::fabs(v - target) < 0.1 * std::fabs(target));
}

TEST_CASE("run_training basics") {
  SUBCASE("zero episodes returns initialized learners and empty metrics") {
    RunConfig c = small_config();
    c.episodes = 0;
    const TrainingResult result = run_training(c);
    CHECK(result.learners.size() == 2);
    CHECK(result.metrics.empty());
    CHECK(result.learners[0].actor.dims() == LayerDims{12, 200, 100, 6});
    CHECK(result.learners[0].critic.dims() == LayerDims{12, 200, 100, 1});
  }

  SUBCASE("identical seeds give identical metric streams") {
    RunConfig c = small_config();
    c.seed = 99;
    const TrainingResult a = run_training(c);
    const TrainingResult b = run_training(c);
    REQUIRE(a.metrics.size() == b.metrics.size());
    for (std::size_t i = 0; i < a.metrics.size(); ++i) {
      CHECK(a.metrics[i].team_reward == b.metrics[i].team_reward);
      CHECK(a.metrics[i].length == b.metrics[i].length);
      CHECK(a.metrics[i].detections == b.metrics[i].detections);
      CHECK(a.metrics[i].crashes == b.metrics[i].crashes);
    }
    // And identical final parameters.
    CHECK((a.learners[0].actor.w3 - b.learners[0].actor.w3).norm() == 0.0);
  }
}
