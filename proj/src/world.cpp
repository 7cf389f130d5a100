#include "swarm/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swarm/sensing.hpp"

namespace swarm {

namespace {

// Side length of the launch square in the bottom-left corner.
constexpr double kStartSquare = 5.0;
// Minimum target distance from the launch square.
constexpr double kTargetClearance = 2.0;
// The diagonal launch grid has one cell per square metre.
constexpr int kMaxDrones = 25;

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument("WorldConfig: " + field + " " + what);
}

}  // namespace

const char* action_name(Action a) {
  switch (a) {
    case Action::MoveNorth: return "north";
    case Action::MoveEast: return "east";
    case Action::MoveSouth: return "south";
    case Action::MoveWest: return "west";
    case Action::RotateCw: return "cw";
    case Action::RotateCcw: return "ccw";
  }
  return "?";
}

const char* done_reason_name(DoneReason r) {
  switch (r) {
    case DoneReason::Running: return "running";
    case DoneReason::AllTargetsFound: return "all_targets_found";
    case DoneReason::AllDronesDown: return "all_drones_down";
    case DoneReason::HorizonReached: return "horizon_reached";
  }
  return "?";
}

void WorldConfig::validate() const {
  require(width_m > 0.0, "width_m", "must be > 0");
  require(height_m > 0.0, "height_m", "must be > 0");
  require(fov_deg > 0.0 && fov_deg < 360.0, "fov_deg", "must be in (0, 360)");
  require(sensor_range_m > 0.0, "sensor_range_m", "must be > 0");
  require(speed_mps > 0.0, "speed_mps", "must be > 0");
  require(yaw_step_deg > 0.0, "yaw_step_deg", "must be > 0");
  require(sigma_d >= 0.0, "sigma_d", "must be >= 0");
  require(sigma_v >= 0.0, "sigma_v", "must be >= 0");
  require(sigma_y >= 0.0, "sigma_y", "must be >= 0");
  require(p_mis >= 0.0 && p_mis <= 1.0, "p_mis", "must be in [0, 1]");
  require(horizon >= 1, "horizon", "must be >= 1");
  require(n_drones >= 1, "n_drones", "must be >= 1");
  require(n_drones <= kMaxDrones, "n_drones",
          "must be <= 25 (launch grid capacity)");
  require(n_targets >= 1, "n_targets", "must be >= 1");
  require(dt_s > 0.0, "dt_s", "must be > 0");
}

void apply_action(DroneState& drone, Action action, const WorldConfig& config,
                  Rng& rng) {
  if (!drone.operative)
    throw std::logic_error("apply_action: drone is not operative");

  if (is_move(action)) {
    double desired = 0.0;
    switch (action) {
      case Action::MoveNorth: desired = kPi / 2.0; break;
      case Action::MoveEast: desired = 0.0; break;
      case Action::MoveSouth: desired = -kPi / 2.0; break;
      case Action::MoveWest: desired = kPi; break;
      default: break;
    }
    const double dir = wrap_angle(desired + normal(rng, 0.0, config.sigma_d));
    const double speed =
        std::max(0.0, config.speed_mps + normal(rng, 0.0, config.sigma_v));
    drone.x += speed * std::cos(dir) * config.dt_s;
    drone.y += speed * std::sin(dir) * config.dt_s;
    drone.dir = dir;
    drone.speed = speed;
  } else {
    const double sign = action == Action::RotateCcw ? 1.0 : -1.0;
    const double delta =
        sign * deg2rad(config.yaw_step_deg) + normal(rng, 0.0, config.sigma_y);
    drone.heading = wrap_angle(drone.heading + delta);
    drone.speed = 0.0;  // hovers while re-aiming
  }
  drone.battery_steps_left -= 1;
}

World::World(const WorldConfig& config, std::uint64_t seed) : config_(config) {
  config_.validate();
  reset(seed);
}

void World::reset(std::uint64_t seed) {
  Rng rng(splitmix64(seed));

  drones_.assign(config_.n_drones, DroneState{});
  for (int k = 0; k < config_.n_drones; ++k) {
    const int diag = k / 5;
    const int pos = k % 5;
    DroneState& d = drones_[k];
    d.x = 0.5 + static_cast<double>((pos + diag) % 5);
    d.y = 0.5 + static_cast<double>(pos);
    d.heading = 0.0;  // east
    d.dir = 0.0;
    d.speed = 0.0;
    d.operative = true;
    d.battery_steps_left = config_.horizon;
  }

  targets_.assign(config_.n_targets, TargetState{});
  for (auto& t : targets_) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100000)
        throw std::runtime_error(
            "World::reset: arena too small to place targets clear of the "
            "launch square");
      const double x = uniform_real(rng, 0.0, config_.width_m);
      const double y = uniform_real(rng, 0.0, config_.height_m);
      const double dx = std::max(0.0, x - kStartSquare);
      const double dy = std::max(0.0, y - kStartSquare);
      if (std::hypot(dx, dy) >= kTargetClearance) {
        t.x = x;
        t.y = y;
        t.detected = false;
        break;
      }
    }
  }

  steps_taken_ = 0;
  reason_ = DoneReason::Running;
}

int World::detected_count() const {
  int n = 0;
  for (const auto& t : targets_) n += t.detected ? 1 : 0;
  return n;
}

int World::operative_count() const {
  int n = 0;
  for (const auto& d : drones_) n += d.operative ? 1 : 0;
  return n;
}

void World::set_drone(int i, const DroneState& s) {
  drones_.at(static_cast<std::size_t>(i)) = s;
  refresh_done();
}

void World::set_target(int i, const TargetState& t) {
  targets_.at(static_cast<std::size_t>(i)) = t;
  refresh_done();
}

void World::refresh_done() {
  if (detected_count() == config_.n_targets) {
    reason_ = DoneReason::AllTargetsFound;
  } else if (operative_count() == 0) {
    reason_ = DoneReason::AllDronesDown;
  } else if (steps_taken_ >= config_.horizon) {
    reason_ = DoneReason::HorizonReached;
  } else {
    reason_ = DoneReason::Running;
  }
}

StepResult World::step(std::span<const Action> joint_action, Rng& rng) {
  if (done()) throw std::logic_error("World::step: episode is already done");
  if (static_cast<int>(joint_action.size()) != config_.n_drones)
    throw std::invalid_argument("World::step: joint action size mismatch");

  StepResult result;
  result.rewards.assign(config_.n_drones, 0.0);
  ++steps_taken_;

  for (int i = 0; i < config_.n_drones; ++i) {
    DroneState& d = drones_[i];
    if (!d.operative) continue;  // grounded drones are ignored
    apply_action(d, joint_action[i], config_, rng);
    result.rewards[i] += config_.r_step;
    const bool out = d.x < 0.0 || d.x > config_.width_m || d.y < 0.0 ||
                     d.y > config_.height_m;
    if (out) {
      d.x = std::clamp(d.x, 0.0, config_.width_m);
      d.y = std::clamp(d.y, 0.0, config_.height_m);
      d.operative = false;
      d.speed = 0.0;
      result.rewards[i] += config_.r_crash;
    }
  }

  const SensorModel sensor = sensor_from_config(config_);
  for (int i = 0; i < config_.n_drones; ++i) {
    if (!drones_[i].operative) continue;
    for (int t : sense(drones_[i], targets_, sensor, rng)) {
      targets_[t].detected = true;
      result.newly_detected.push_back(t);
      result.detected_by.push_back(i);
    }
  }
  if (!result.newly_detected.empty()) {
    const double bonus =
        config_.r_detect * static_cast<double>(result.newly_detected.size());
    for (int i = 0; i < config_.n_drones; ++i)
      if (drones_[i].operative) result.rewards[i] += bonus;
  }

  refresh_done();
  result.done = done();
  result.reason = reason_;
  return result;
}

}  // namespace swarm
