#pragma once

#include <array>
#include <vector>

#include "swarm/world.hpp"

namespace swarm {

// Fixed-length per-agent network input. Built only from information the
// agent can observe locally: its own pose and battery, the arena geometry,
// and the team's detected-target count (mission progress is broadcast by the
// ground station; drones never observe each other).
//
// Layout:
//   [0] x / width            [1] y / height
//   [2] cos(heading)         [3] sin(heading)
//   [4] velocity_x / cruise  [5] velocity_y / cruise
//   [6] battery / horizon    [7] detected / n_targets
//   [8] north wall distance  [9] east wall distance
//  [10] south wall distance [11] west wall distance   (all wall distances in [0,1])
inline constexpr int kObsSize = 12;

using ObsVector = std::array<double, kObsSize>;

namespace obs {
inline constexpr int kX = 0;
inline constexpr int kY = 1;
inline constexpr int kHeadingCos = 2;
inline constexpr int kHeadingSin = 3;
inline constexpr int kVelX = 4;
inline constexpr int kVelY = 5;
inline constexpr int kBattery = 6;
inline constexpr int kDetected = 7;
inline constexpr int kWallN = 8;
inline constexpr int kWallE = 9;
inline constexpr int kWallS = 10;
inline constexpr int kWallW = 11;
}  // namespace obs

ObsVector encode(const DroneState& drone, int detected_count,
                 const WorldConfig& config);

ObsVector observe(const World& world, int drone);
std::vector<ObsVector> observe_all(const World& world);

}  // namespace swarm
