#pragma once

#include <span>
#include <string>

#include "swarm/run_config.hpp"

namespace swarm {

// CLI entry points. Each writes its CSV outputs under config.output_dir,
// reports errors on stderr and returns a process exit status.

// Trains config.runs teams (run r uses seed splitmix64(config.seed + r)),
// writing metrics_run<r>.csv per run, metrics_aggregate.csv with per-episode
// mean/std across runs, and checkpoints when configured.
int cmd_train(const RunConfig& config);

// Evaluates one policy over config.eval_episodes episodes; writes
// eval_<policy>.csv (summary) and eval_<policy>_episodes.csv (per episode).
int cmd_eval(const RunConfig& config, const std::string& policy_name);

// kind is "team-size" or "target-count"; writes sweep_<kind>.csv.
int cmd_sweep(const RunConfig& config, const std::string& kind,
              std::span<const int> values);

// Replays one episode with the checkpointed policy and writes the trajectory
// log (default <output_dir>/replay.csv).
int cmd_replay(const RunConfig& config, const std::string& out_path = "");

}  // namespace swarm
