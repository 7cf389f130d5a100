#include "swarm/observation.hpp"

#include <cmath>

namespace swarm {

ObsVector encode(const DroneState& drone, int detected_count,
                 const WorldConfig& config) {
  ObsVector o{};
  o[obs::kX] = drone.x / config.width_m;
  o[obs::kY] = drone.y / config.height_m;
  o[obs::kHeadingCos] = std::cos(drone.heading);
  o[obs::kHeadingSin] = std::sin(drone.heading);
  o[obs::kVelX] = drone.speed * std::cos(drone.dir) / config.speed_mps;
  o[obs::kVelY] = drone.speed * std::sin(drone.dir) / config.speed_mps;
  o[obs::kBattery] = static_cast<double>(drone.battery_steps_left) /
                     static_cast<double>(config.horizon);
  o[obs::kDetected] = static_cast<double>(detected_count) /
                      static_cast<double>(config.n_targets);
  o[obs::kWallN] = (config.height_m - drone.y) / config.height_m;
  o[obs::kWallE] = (config.width_m - drone.x) / config.width_m;
  o[obs::kWallS] = drone.y / config.height_m;
  o[obs::kWallW] = drone.x / config.width_m;
  return o;
}

ObsVector observe(const World& world, int drone) {
  return encode(world.drones().at(static_cast<std::size_t>(drone)),
                world.detected_count(), world.config());
}

std::vector<ObsVector> observe_all(const World& world) {
  std::vector<ObsVector> all;
  all.reserve(world.drones().size());
  for (int i = 0; i < static_cast<int>(world.drones().size()); ++i)
    all.push_back(observe(world, i));
  return all;
}

}  // namespace swarm
