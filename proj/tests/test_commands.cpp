#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "swarm/commands.hpp"

using namespace swarm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name) : path(name) { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

RunConfig tiny_config(const fs::path& out) {
  RunConfig c;
  c.world.n_drones = 2;
  c.world.n_targets = 2;
  c.world.horizon = 30;
  c.episodes = 2;
  c.eval_episodes = 4;
  c.seed = 5;
  c.output_dir = out.string();
  return c;
}

}  // namespace

TEST_CASE("train with zero episodes succeeds and writes header-only metrics") {
  TempDir dir("cmd_test_train0");
  RunConfig c = tiny_config(dir.path);
  c.episodes = 0;
  CHECK(cmd_train(c) == 0);
  const std::string metrics = slurp(dir.path / "metrics_run0.csv");
  CHECK(metrics == "run,seed,episode,team_reward,length,detections,crashes,"
                   "wall_ms\n");
  const std::string agg = slurp(dir.path / "metrics_aggregate.csv");
  CHECK(agg == "episode,mean_reward,std_reward\n");
}

TEST_CASE("eval of the random policy reports a negative mean") {
  TempDir dir("cmd_test_evalr");
  RunConfig c = tiny_config(dir.path);
  c.eval_episodes = 30;
  CHECK(cmd_eval(c, "random") == 0);
  const std::string summary = slurp(dir.path / "eval_random.csv");
  // Second line, fourth column.
  std::istringstream in(summary);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::istringstream cells(row);
  std::string cell;
  for (int i = 0; i < 4; ++i) std::getline(cells, cell, ',');
  CHECK(std::stod(cell) < 0.0);
}

TEST_CASE("commands report errors with nonzero status") {
  TempDir dir("cmd_test_errors");
  RunConfig c = tiny_config(dir.path);
  CHECK(cmd_eval(c, "psychic") == 1);
  const std::vector<int> values{2, 3};
  CHECK(cmd_sweep(c, "altitude", values) == 1);
  CHECK(cmd_replay(c) == 1);  // no checkpoint_in
  RunConfig bad = c;
  bad.world.n_targets = 0;
  CHECK(cmd_train(bad) == 1);
}

TEST_CASE("train then replay round-trips through the checkpoint") {
  TempDir dir("cmd_test_roundtrip");
  RunConfig c = tiny_config(dir.path);
  c.checkpoint_out = (dir.path / "team.bin").string();
  REQUIRE(cmd_train(c) == 0);
  REQUIRE(fs::exists(dir.path / "team.bin"));

  RunConfig r = c;
  r.checkpoint_in = c.checkpoint_out;
  CHECK(cmd_replay(r) == 0);
  const std::string replay = slurp(dir.path / "replay.csv");
  CHECK(replay.rfind("# swarm replay v1\n", 0) == 0);
}
