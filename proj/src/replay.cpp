#include "swarm/replay.hpp"

#include <fstream>
#include <stdexcept>

#include "swarm/csv.hpp"

namespace swarm {

void write_replay(std::ostream& out, const EpisodeLog& log) {
  const WorldConfig& c = log.config;
  out << "# swarm replay v1\n";
  out << "# config"
      << " width_m=" << format_number(c.width_m)
      << " height_m=" << format_number(c.height_m)
      << " fov_deg=" << format_number(c.fov_deg)
      << " sensor_range_m=" << format_number(c.sensor_range_m)
      << " speed_mps=" << format_number(c.speed_mps)
      << " yaw_step_deg=" << format_number(c.yaw_step_deg)
      << " sigma_d=" << format_number(c.sigma_d)
      << " sigma_v=" << format_number(c.sigma_v)
      << " sigma_y=" << format_number(c.sigma_y)
      << " p_mis=" << format_number(c.p_mis)
      << " horizon=" << format_number(c.horizon)
      << " n_drones=" << format_number(c.n_drones)
      << " n_targets=" << format_number(c.n_targets) << "\n";
  for (std::size_t t = 0; t < log.initial_targets.size(); ++t) {
    const auto& target = log.initial_targets[t];
    out << "# target," << t << ',' << format_number(target.x) << ','
        << format_number(target.y) << "\n";
  }
  out << "# outcome," << done_reason_name(log.final_reason) << ','
      << format_number(team_episode_reward(log)) << ','
      << log.steps.size() << "\n";

  out << kReplayHeader << "\n";
  for (const auto& rec : log.steps) {
    for (std::size_t i = 0; i < rec.drones.size(); ++i) {
      const DroneState& d = rec.drones[i];
      out << rec.step << ',' << i << ',' << format_number(d.x) << ','
          << format_number(d.y) << ',' << format_number(d.heading) << ','
          << format_number(d.dir) << ',' << format_number(d.speed) << ','
          << (d.operative ? 1 : 0) << ',' << d.battery_steps_left << ','
          << (rec.acted[i] ? action_name(rec.actions[i]) : "-") << ','
          << format_number(rec.rewards[i]) << ',';
      bool first = true;
      for (std::size_t k = 0; k < rec.newly_detected.size(); ++k) {
        if (rec.detected_by[k] != static_cast<int>(i)) continue;
        if (!first) out << ';';
        out << rec.newly_detected[k];
        first = false;
      }
      out << "\n";
    }
  }
}

void write_replay_file(const std::string& path, const EpisodeLog& log) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw std::runtime_error("replay: cannot open '" + path + "' for writing");
  write_replay(out, log);
  if (!out) throw std::runtime_error("replay: write to '" + path + "' failed");
}

}  // namespace swarm
