#include "swarm/sensing.hpp"

#include <cmath>

namespace swarm {

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

bool sector_contains(double drone_x, double drone_y, double heading,
                     double target_x, double target_y,
                     const SensorModel& model) {
  const double dx = target_x - drone_x;
  const double dy = target_y - drone_y;
  if (std::hypot(dx, dy) > model.range_m) return false;
  const double bearing = std::atan2(dy, dx);
  const double offset = wrap_angle(bearing - heading);
  return std::abs(offset) <= model.fov_half_angle;
}

std::vector<int> sense(const DroneState& drone,
                       const std::vector<TargetState>& targets,
                       const SensorModel& model, Rng& rng) {
  std::vector<int> reported;
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) {
    const TargetState& t = targets[i];
    if (t.detected) continue;
    if (!sector_contains(drone, t, model)) continue;
    if (bernoulli(rng, 1.0 - model.p_mis)) reported.push_back(i);
  }
  return reported;
}

}  // namespace swarm
