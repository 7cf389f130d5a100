#include "swarm/policies.hpp"

#include <algorithm>
#include <stdexcept>

#include "swarm/mlp.hpp"

namespace swarm {

namespace {

Action reverse_of(Action a) {
  switch (a) {
    case Action::MoveNorth: return Action::MoveSouth;
    case Action::MoveSouth: return Action::MoveNorth;
    case Action::MoveEast: return Action::MoveWest;
    case Action::MoveWest: return Action::MoveEast;
    default: return a;
  }
}

}  // namespace

const char* policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Learned: return "learned";
    case PolicyKind::Random: return "random";
    case PolicyKind::CollisionFree: return "collision-free";
  }
  return "?";
}

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "learned") return PolicyKind::Learned;
  if (name == "random") return PolicyKind::Random;
  if (name == "collision-free" || name == "collision_free")
    return PolicyKind::CollisionFree;
  throw std::invalid_argument("unknown policy '" + name +
                              "' (expected learned, random, collision-free)");
}

Action RandomPolicy::act(const ObsVector&, int, Rng& rng) {
  return static_cast<Action>(uniform_int(rng, kNumActions));
}

CollisionFreePolicy::CollisionFreePolicy(const WorldConfig& config,
                                         double threshold_m,
                                         bool include_rotations)
    : width_m_(config.width_m),
      height_m_(config.height_m),
      threshold_m_(threshold_m),
      include_rotations_(include_rotations) {}

void CollisionFreePolicy::begin_episode() { current_dir_.clear(); }

Action CollisionFreePolicy::act(const ObsVector& o, int agent, Rng& rng) {
  if (agent >= static_cast<int>(current_dir_.size()))
    current_dir_.resize(agent + 1, -1);

  // Distance to each wall, indexed by the move that approaches it.
  const double toward_wall[4] = {
      o[obs::kWallN] * height_m_, o[obs::kWallE] * width_m_,
      o[obs::kWallS] * height_m_, o[obs::kWallW] * width_m_};
  int nearest = 0;
  for (int k = 1; k < 4; ++k)
    if (toward_wall[k] < toward_wall[nearest]) nearest = k;

  int& dir = current_dir_[agent];
  if (toward_wall[nearest] < threshold_m_) {
    // Near a wall: keep reversing the travel direction until clear. With no
    // travel direction yet (episode start), head away from the nearest wall.
    const Action current = dir >= 0 ? static_cast<Action>(dir)
                                    : static_cast<Action>(nearest);
    dir = static_cast<int>(reverse_of(current));
    return static_cast<Action>(dir);
  }

  const int pool = include_rotations_ ? kNumActions : 4;
  const Action a = static_cast<Action>(uniform_int(rng, pool));
  if (is_move(a)) dir = static_cast<int>(a);
  return a;
}

LearnedPolicy::LearnedPolicy(const std::vector<AgentNets>* nets, bool greedy)
    : nets_(nets), greedy_(greedy) {
  if (nets_ == nullptr || nets_->empty())
    throw std::invalid_argument("LearnedPolicy: no networks");
}

Action LearnedPolicy::act(const ObsVector& obs, int agent, Rng& rng) {
  if (agent < 0 || agent >= static_cast<int>(nets_->size()))
    throw std::invalid_argument("LearnedPolicy: agent index out of range");
  const Eigen::VectorXd probs = actor_forward((*nets_)[agent].actor, obs);
  return static_cast<Action>(greedy_ ? argmax_action(probs)
                                     : sample_action(probs, rng));
}

std::unique_ptr<Policy> make_policy(PolicyKind kind, const WorldConfig& config,
                                    const std::vector<AgentNets>* nets,
                                    bool greedy) {
  switch (kind) {
    case PolicyKind::Random:
      return std::make_unique<RandomPolicy>();
    case PolicyKind::CollisionFree:
      return std::make_unique<CollisionFreePolicy>(config);
    case PolicyKind::Learned:
      return std::make_unique<LearnedPolicy>(nets, greedy);
  }
  throw std::logic_error("make_policy: unreachable");
}

}  // namespace swarm
