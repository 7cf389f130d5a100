#pragma once

#include <memory>
#include <vector>

#include "swarm/checkpoint.hpp"
#include "swarm/observation.hpp"
#include "swarm/world.hpp"

namespace swarm {

enum class PolicyKind { Learned, Random, CollisionFree };

const char* policy_kind_name(PolicyKind kind);
PolicyKind parse_policy_kind(const std::string& name);  // throws on unknown name

// Per-episode action source. Evaluation never mutates parameters, so act()
// is const apart from the policy's own episode-local state.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode() {}
  virtual Action act(const ObsVector& obs, int agent, Rng& rng) = 0;
};

// Uniform over all six actions.
class RandomPolicy final : public Policy {
 public:
  Action act(const ObsVector& obs, int agent, Rng& rng) override;
};

// Random moves, except that within threshold_m of the nearest wall the drone
// keeps reversing its current direction until clear.
class CollisionFreePolicy final : public Policy {
 public:
  CollisionFreePolicy(const WorldConfig& config, double threshold_m = 2.0,
                      bool include_rotations = false);

  void begin_episode() override;
  Action act(const ObsVector& obs, int agent, Rng& rng) override;

 private:
  double width_m_;
  double height_m_;
  double threshold_m_;
  bool include_rotations_;
  std::vector<int> current_dir_;  // last move per agent, -1 until first move
};

// Acts by sampling from each agent's actor distribution (or argmax when
// greedy). Holds a const view of the networks; safe to share across threads.
class LearnedPolicy final : public Policy {
 public:
  LearnedPolicy(const std::vector<AgentNets>* nets, bool greedy = false);

  Action act(const ObsVector& obs, int agent, Rng& rng) override;

 private:
  const std::vector<AgentNets>* nets_;
  bool greedy_;
};

std::unique_ptr<Policy> make_policy(PolicyKind kind, const WorldConfig& config,
                                    const std::vector<AgentNets>* nets,
                                    bool greedy);

}  // namespace swarm
