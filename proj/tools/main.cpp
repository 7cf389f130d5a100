// Command-line front end: train, eval, sweep, replay.
//
// Option precedence: command-line flags > SWARM_* environment variables >
// --config file > built-in defaults.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "swarm/commands.hpp"
#include "swarm/run_config.hpp"

namespace {

// Pre-scan for --config so file values become the defaults that flags and
// environment variables then override.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" || arg == "-c") {
      if (i + 1 < argc) return argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      return arg.substr(9);
    }
  }
  return "";
}

void add_config_flags(CLI::App& app, swarm::RunConfig& c) {
  auto opt = [&](const char* flag, auto& field, const char* help,
                 const char* env) {
    app.add_option(flag, field, help)->envname(env);
  };
  opt("--width-m", c.world.width_m, "arena width in metres", "SWARM_WIDTH_M");
  opt("--height-m", c.world.height_m, "arena height in metres",
      "SWARM_HEIGHT_M");
  opt("--fov-deg", c.world.fov_deg, "camera field of view in degrees",
      "SWARM_FOV_DEG");
  opt("--sensor-range-m", c.world.sensor_range_m, "detection range in metres",
      "SWARM_SENSOR_RANGE_M");
  opt("--speed-mps", c.world.speed_mps, "cruise speed in m/s",
      "SWARM_SPEED_MPS");
  opt("--yaw-step-deg", c.world.yaw_step_deg, "rotation step in degrees",
      "SWARM_YAW_STEP_DEG");
  opt("--sigma-d", c.world.sigma_d, "direction noise std (rad)",
      "SWARM_SIGMA_D");
  opt("--sigma-v", c.world.sigma_v, "speed noise std (m/s)", "SWARM_SIGMA_V");
  opt("--sigma-y", c.world.sigma_y, "yaw noise std (rad)", "SWARM_SIGMA_Y");
  opt("--p-mis", c.world.p_mis, "misdetection probability", "SWARM_P_MIS");
  opt("--horizon", c.world.horizon, "maximum episode length",
      "SWARM_HORIZON");
  opt("--r-detect", c.world.r_detect, "detection reward", "SWARM_R_DETECT");
  opt("--r-step", c.world.r_step, "per-step reward", "SWARM_R_STEP");
  opt("--r-crash", c.world.r_crash, "crash penalty", "SWARM_R_CRASH");
  opt("--n-drones", c.world.n_drones, "team size", "SWARM_N_DRONES");
  opt("--n-targets", c.world.n_targets, "number of targets",
      "SWARM_N_TARGETS");
  opt("--dt-s", c.world.dt_s, "seconds per step", "SWARM_DT_S");

  opt("--gamma", c.gamma, "discount factor", "SWARM_GAMMA");
  opt("--learning-rate", c.learning_rate, "optimizer learning rate",
      "SWARM_LEARNING_RATE");
  opt("--batch-size", c.batch_size, "samples per update", "SWARM_BATCH_SIZE");
  opt("--lambda-pi", c.lambda_pi, "policy loss weight", "SWARM_LAMBDA_PI");
  opt("--lambda-v", c.lambda_v, "value loss weight", "SWARM_LAMBDA_V");
  opt("--lambda-h", c.lambda_h, "entropy loss weight", "SWARM_LAMBDA_H");
  opt("--episodes", c.episodes, "training episodes", "SWARM_EPISODES");
  opt("--eval-episodes", c.eval_episodes, "evaluation episodes",
      "SWARM_EVAL_EPISODES");
  opt("--seed", c.seed, "master seed", "SWARM_SEED");
  opt("--runs", c.runs, "independent training runs", "SWARM_RUNS");

  opt("--checkpoint-in", c.checkpoint_in, "checkpoint to load",
      "SWARM_CHECKPOINT_IN");
  opt("--checkpoint-out", c.checkpoint_out, "checkpoint to write",
      "SWARM_CHECKPOINT_OUT");
  opt("--output-dir", c.output_dir, "directory for CSV outputs",
      "SWARM_OUTPUT_DIR");
  opt("--checkpoint-every", c.checkpoint_every,
      "episodes between periodic checkpoints", "SWARM_CHECKPOINT_EVERY");
  opt("--threads", c.threads, "worker cap (0 = hardware)", "SWARM_THREADS");
  opt("--optimizer", c.optimizer, "adam or sgd", "SWARM_OPTIMIZER");
  opt("--grad-clip", c.grad_clip, "global-norm gradient clip (0 disables)",
      "SWARM_GRAD_CLIP");
  app.add_flag("--eval-argmax", c.eval_argmax,
               "greedy action selection during evaluation")
      ->envname("SWARM_EVAL_ARGMAX");
}

}  // namespace

int main(int argc, char** argv) {
  swarm::RunConfig config;
  const std::string config_path = find_config_path(argc, argv);
  if (!config_path.empty()) {
    try {
      config = swarm::parse_config_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "swarm: " << e.what() << "\n";
      return 1;
    }
  }

  CLI::App app{"Decentralized drone-swarm target search: simulator, "
               "per-agent actor-critic training, baselines and experiment "
               "harness"};
  app.require_subcommand(1);
  std::string config_flag;
  app.add_option("--config,-c", config_flag,
                 "key = value config file (already applied)");
  add_config_flags(app, config);

  auto* train = app.add_subcommand("train", "train a team and write metrics");
  train->fallthrough();

  auto* eval = app.add_subcommand("eval", "evaluate a frozen policy");
  eval->fallthrough();
  std::string policy = "learned";
  eval->add_option("--policy", policy, "learned, random or collision-free");

  auto* sweep = app.add_subcommand("sweep", "train/evaluate across a sweep");
  sweep->fallthrough();
  std::string sweep_kind = "team-size";
  std::vector<int> sweep_values;
  sweep->add_option("--kind", sweep_kind, "team-size or target-count");
  sweep->add_option("--values", sweep_values,
                    "swept values, e.g. --values 2 3 4 5 6");

  auto* replay = app.add_subcommand("replay",
                                    "write one episode trajectory log");
  replay->fallthrough();
  std::string replay_out;
  replay->add_option("--out", replay_out, "trajectory output path");

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) return swarm::cmd_train(config);
  if (eval->parsed()) return swarm::cmd_eval(config, policy);
  if (sweep->parsed()) {
    if (sweep_values.empty()) {
      std::cerr << "sweep: error: --values must not be empty\n";
      return 1;
    }
    return swarm::cmd_sweep(config, sweep_kind, sweep_values);
  }
  if (replay->parsed()) return swarm::cmd_replay(config, replay_out);
  return 1;
}
