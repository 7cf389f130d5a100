#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarm/rng.hpp"

namespace swarm {

// The six commands a flying drone accepts: four compass moves at cruise
// speed and two 30-degree camera rotations.
enum class Action : int {
  MoveNorth = 0,
  MoveEast = 1,
  MoveSouth = 2,
  MoveWest = 3,
  RotateCw = 4,
  RotateCcw = 5,
};

inline constexpr int kNumActions = 6;

const char* action_name(Action a);
inline bool is_move(Action a) { return static_cast<int>(a) < 4; }

struct WorldConfig {
  double width_m = 60.0;
  double height_m = 45.0;
  double fov_deg = 60.0;
  double sensor_range_m = 10.0;
  double speed_mps = 1.0;
  double yaw_step_deg = 30.0;
  double sigma_d = 0.1;  // direction noise std, radians
  double sigma_v = 0.1;  // speed noise std, m/s
  double sigma_y = 0.1;  // yaw noise std, radians
  double p_mis = 0.05;   // per-target per-step misdetection probability
  int horizon = 900;
  double r_detect = 900.0;
  double r_step = -0.1;
  double r_crash = -500.0;
  int n_drones = 3;
  int n_targets = 3;
  double dt_s = 1.0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct DroneState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // camera orientation, radians in [-pi, pi)
  double dir = 0.0;      // movement direction, radians in [-pi, pi)
  double speed = 0.0;    // m/s
  bool operative = true;
  int battery_steps_left = 0;
};

struct TargetState {
  double x = 0.0;
  double y = 0.0;
  bool detected = false;  // latches true for the rest of the episode
};

enum class DoneReason {
  Running = 0,
  AllTargetsFound,
  AllDronesDown,
  HorizonReached,
};

const char* done_reason_name(DoneReason r);

struct StepResult {
  std::vector<double> rewards;      // one entry per drone
  std::vector<int> newly_detected;  // target indices, each counted once
  std::vector<int> detected_by;     // reporting drone, aligned with newly_detected
  bool done = false;
  DoneReason reason = DoneReason::Running;
};

// Applies one action to an operative drone. Moves translate the drone under
// direction/speed noise and leave the camera heading alone; rotations re-aim
// the camera under yaw noise, hold position and zero the speed. Battery drops
// by one either way. Throws std::logic_error for a non-operative drone.
void apply_action(DroneState& drone, Action action, const WorldConfig& config,
                  Rng& rng);

// The mission world: a rectangular arena, a team of drones and a set of
// static ground targets. All randomness flows through explicitly seeded
// generators; instances share no state and may run in parallel.
class World {
 public:
  World(const WorldConfig& config, std::uint64_t seed);

  // Re-places everything: drones on the fixed diagonal grid inside the 5x5 m
  // bottom-left square (1 m spacing, heading east, speed 0, full battery),
  // targets uniformly over the arena at least 2 m away from that square.
  // Identical seeds yield identical placements.
  void reset(std::uint64_t seed);

  // Advances one step: operative drones act, boundary violators crash (single
  // penalty, clamped to the wall, permanently grounded), survivors sense, and
  // every newly found target pays the detection bonus to every drone still
  // flying. Throws std::logic_error if the episode is already done.
  StepResult step(std::span<const Action> joint_action, Rng& rng);

  const WorldConfig& config() const { return config_; }
  const std::vector<DroneState>& drones() const { return drones_; }
  const std::vector<TargetState>& targets() const { return targets_; }
  int steps_taken() const { return steps_taken_; }
  bool done() const { return reason_ != DoneReason::Running; }
  DoneReason done_reason() const { return reason_; }
  int detected_count() const;
  int operative_count() const;

  // Scenario hooks for tests and tooling.
  void set_drone(int i, const DroneState& s);
  void set_target(int i, const TargetState& t);

 private:
  void refresh_done();

  WorldConfig config_;
  std::vector<DroneState> drones_;
  std::vector<TargetState> targets_;
  int steps_taken_ = 0;
  DoneReason reason_ = DoneReason::Running;
};

}  // namespace swarm
