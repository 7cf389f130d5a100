#pragma once

#include <cstdint>
#include <string>

#include "swarm/mlp.hpp"
#include "swarm/world.hpp"

namespace swarm {

// Everything a command needs: the world, the learning hyperparameters and
// the I/O knobs. Defaults are the published training configuration.
struct RunConfig {
  WorldConfig world;

  double gamma = 0.99;
  double learning_rate = 1e-4;
  int batch_size = 32;
  double lambda_pi = 1.0;
  double lambda_v = 1.0;
  double lambda_h = 0.001;

  int episodes = 500;
  int eval_episodes = 500;
  std::uint64_t seed = 1;
  int runs = 1;

  std::string checkpoint_in;
  std::string checkpoint_out;
  std::string output_dir = ".";
  int checkpoint_every = 50;

  int threads = 0;  // 0 = hardware concurrency
  std::string optimizer = "adam";  // "adam" or "sgd"
  double grad_clip = 5.0;          // 0 disables
  bool eval_argmax = false;

  // Throws std::invalid_argument naming the offending key.
  void validate() const;

  OptimizerConfig optimizer_config() const;
};

// Parses the documented `key = value` file format: one key per line, `#`
// starts a comment, blank lines allowed. File values override defaults.
// Throws std::runtime_error for a missing file and std::invalid_argument
// (naming the key or line) for malformed lines, unknown keys and
// out-of-range values.
RunConfig parse_config_file(const std::string& path);

// Applies a single override; same validation and errors as the file parser.
void apply_key_value(RunConfig& config, const std::string& key,
                     const std::string& value);

}  // namespace swarm
