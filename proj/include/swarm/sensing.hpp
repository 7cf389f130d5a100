#pragma once

#include <numbers>
#include <vector>

#include "swarm/rng.hpp"
#include "swarm/world.hpp"

namespace swarm {

inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

// Wraps an angle to [-pi, pi).
double wrap_angle(double a);

// Onboard camera: a closed circular sector in front of the drone plus a
// constant per-observation misdetection probability.
struct SensorModel {
  double fov_half_angle = kPi / 6.0;  // radians
  double range_m = 10.0;
  double p_mis = 0.05;
};

inline SensorModel sensor_from_config(const WorldConfig& cfg) {
  return SensorModel{deg2rad(cfg.fov_deg) / 2.0, cfg.sensor_range_m, cfg.p_mis};
}

// True iff the target lies within range and within the half-angle of the
// drone's heading. Both boundaries count as inside.
bool sector_contains(double drone_x, double drone_y, double heading,
                     double target_x, double target_y, const SensorModel& model);

inline bool sector_contains(const DroneState& drone, const TargetState& target,
                            const SensorModel& model) {
  return sector_contains(drone.x, drone.y, drone.heading, target.x, target.y,
                         model);
}

// Indices of previously undetected targets inside the sector that pass this
// step's independent Bernoulli(1 - p_mis) report draw. Already-detected
// targets are never reported and consume no randomness.
std::vector<int> sense(const DroneState& drone,
                       const std::vector<TargetState>& targets,
                       const SensorModel& model, Rng& rng);

}  // namespace swarm
