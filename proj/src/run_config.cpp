#include "swarm/run_config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace swarm {

namespace {

[[noreturn]] void bad_key(const std::string& key) {
  throw std::invalid_argument("config: unknown key '" + key + "'");
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::invalid_argument("config: malformed value '" + value +
                              "' for key '" + key + "'");
}

[[noreturn]] void out_of_range(const std::string& key, const char* expected) {
  throw std::invalid_argument("config: value out of range for key '" + key +
                              "' (expected " + expected + ")");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  } catch (const std::out_of_range&) {
    bad_value(key, value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) bad_value(key, value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) bad_value(key, value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, last - begin + 1);
}

}  // namespace

void RunConfig::validate() const {
  world.validate();
  if (!(gamma >= 0.0 && gamma <= 1.0)) out_of_range("gamma", "0..1");
  if (!(learning_rate > 0.0)) out_of_range("learning_rate", "> 0");
  if (batch_size < 1) out_of_range("batch_size", ">= 1");
  if (lambda_pi < 0.0) out_of_range("lambda_pi", ">= 0");
  if (lambda_v < 0.0) out_of_range("lambda_v", ">= 0");
  if (lambda_h < 0.0) out_of_range("lambda_h", ">= 0");
  if (episodes < 0) out_of_range("episodes", ">= 0");
  if (eval_episodes < 0) out_of_range("eval_episodes", ">= 0");
  if (runs < 1) out_of_range("runs", ">= 1");
  if (checkpoint_every < 1) out_of_range("checkpoint_every", ">= 1");
  if (threads < 0) out_of_range("threads", ">= 0");
  if (optimizer != "adam" && optimizer != "sgd")
    out_of_range("optimizer", "adam or sgd");
  if (grad_clip < 0.0) out_of_range("grad_clip", ">= 0");
}

OptimizerConfig RunConfig::optimizer_config() const {
  OptimizerConfig c;
  c.learning_rate = learning_rate;
  c.plain_sgd = optimizer == "sgd";
  c.grad_clip = grad_clip;
  return c;
}

void apply_key_value(RunConfig& c, const std::string& key,
                     const std::string& value) {
  // Arena and dynamics.
  if (key == "width_m") {
    c.world.width_m = parse_double(key, value);
    if (c.world.width_m <= 0.0) out_of_range(key, "> 0");
  } else if (key == "height_m") {
    c.world.height_m = parse_double(key, value);
    if (c.world.height_m <= 0.0) out_of_range(key, "> 0");
  } else if (key == "fov_deg") {
    c.world.fov_deg = parse_double(key, value);
    if (!(c.world.fov_deg > 0.0 && c.world.fov_deg < 360.0))
      out_of_range(key, "(0, 360)");
  } else if (key == "sensor_range_m") {
    c.world.sensor_range_m = parse_double(key, value);
    if (c.world.sensor_range_m <= 0.0) out_of_range(key, "> 0");
  } else if (key == "speed_mps") {
    c.world.speed_mps = parse_double(key, value);
    if (c.world.speed_mps <= 0.0) out_of_range(key, "> 0");
  } else if (key == "yaw_step_deg") {
    c.world.yaw_step_deg = parse_double(key, value);
    if (c.world.yaw_step_deg <= 0.0) out_of_range(key, "> 0");
  } else if (key == "sigma_d") {
    c.world.sigma_d = parse_double(key, value);
    if (c.world.sigma_d < 0.0) out_of_range(key, ">= 0");
  } else if (key == "sigma_v") {
    c.world.sigma_v = parse_double(key, value);
    if (c.world.sigma_v < 0.0) out_of_range(key, ">= 0");
  } else if (key == "sigma_y") {
    c.world.sigma_y = parse_double(key, value);
    if (c.world.sigma_y < 0.0) out_of_range(key, ">= 0");
  } else if (key == "p_mis") {
    c.world.p_mis = parse_double(key, value);
    if (!(c.world.p_mis >= 0.0 && c.world.p_mis <= 1.0))
      out_of_range(key, "0..1");
  } else if (key == "horizon") {
    c.world.horizon = static_cast<int>(parse_int(key, value));
    if (c.world.horizon < 1) out_of_range(key, ">= 1");
  } else if (key == "r_detect") {
    c.world.r_detect = parse_double(key, value);
  } else if (key == "r_step") {
    c.world.r_step = parse_double(key, value);
  } else if (key == "r_crash") {
    c.world.r_crash = parse_double(key, value);
  } else if (key == "n_drones") {
    c.world.n_drones = static_cast<int>(parse_int(key, value));
    if (c.world.n_drones < 1 || c.world.n_drones > 25)
      out_of_range(key, "1..25");
  } else if (key == "n_targets") {
    c.world.n_targets = static_cast<int>(parse_int(key, value));
    if (c.world.n_targets < 1) out_of_range(key, ">= 1");
  } else if (key == "dt_s") {
    c.world.dt_s = parse_double(key, value);
    if (c.world.dt_s <= 0.0) out_of_range(key, "> 0");
  }
  // Learning.
  else if (key == "gamma") {
    c.gamma = parse_double(key, value);
    if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) out_of_range(key, "0..1");
  } else if (key == "learning_rate") {
    c.learning_rate = parse_double(key, value);
    if (c.learning_rate <= 0.0) out_of_range(key, "> 0");
  } else if (key == "batch_size") {
    c.batch_size = static_cast<int>(parse_int(key, value));
    if (c.batch_size < 1) out_of_range(key, ">= 1");
  } else if (key == "lambda_pi") {
    c.lambda_pi = parse_double(key, value);
    if (c.lambda_pi < 0.0) out_of_range(key, ">= 0");
  } else if (key == "lambda_v") {
    c.lambda_v = parse_double(key, value);
    if (c.lambda_v < 0.0) out_of_range(key, ">= 0");
  } else if (key == "lambda_h") {
    c.lambda_h = parse_double(key, value);
    if (c.lambda_h < 0.0) out_of_range(key, ">= 0");
  } else if (key == "episodes") {
    c.episodes = static_cast<int>(parse_int(key, value));
    if (c.episodes < 0) out_of_range(key, ">= 0");
  } else if (key == "eval_episodes") {
    c.eval_episodes = static_cast<int>(parse_int(key, value));
    if (c.eval_episodes < 0) out_of_range(key, ">= 0");
  } else if (key == "seed") {
    c.seed = parse_u64(key, value);
  } else if (key == "runs") {
    c.runs = static_cast<int>(parse_int(key, value));
    if (c.runs < 1) out_of_range(key, ">= 1");
  }
  // I/O.
  else if (key == "checkpoint_in") {
    c.checkpoint_in = value;
  } else if (key == "checkpoint_out") {
    c.checkpoint_out = value;
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "checkpoint_every") {
    c.checkpoint_every = static_cast<int>(parse_int(key, value));
    if (c.checkpoint_every < 1) out_of_range(key, ">= 1");
  } else if (key == "threads") {
    c.threads = static_cast<int>(parse_int(key, value));
    if (c.threads < 0) out_of_range(key, ">= 0");
  } else if (key == "optimizer") {
    if (value != "adam" && value != "sgd") out_of_range(key, "adam or sgd");
    c.optimizer = value;
  } else if (key == "grad_clip") {
    c.grad_clip = parse_double(key, value);
    if (c.grad_clip < 0.0) out_of_range(key, ">= 0");
  } else if (key == "eval_argmax") {
    c.eval_argmax = parse_bool(key, value);
  } else {
    bad_key(key);
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("config: cannot open file '" + path + "'");

  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: malformed line " +
                                  std::to_string(line_no) + " in '" + path +
                                  "': expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config: malformed line " +
                                  std::to_string(line_no) + " in '" + path +
                                  "': empty key");
    apply_key_value(config, key, value);
  }
  return config;
}

}  // namespace swarm
