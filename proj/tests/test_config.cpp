#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <string>

#include "swarm/csv.hpp"
#include "swarm/run_config.hpp"

using namespace swarm;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "swarm_test_config_" + std::to_string(counter++) + ".tmp";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("empty config file yields the published defaults") {
  TempFile f("");
  const RunConfig c = parse_config_file(f.path);
  CHECK(c.gamma == 0.99);
  CHECK(c.learning_rate == 1e-4);
  CHECK(c.batch_size == 32);
  CHECK(c.lambda_pi == 1.0);
  CHECK(c.lambda_v == 1.0);
  CHECK(c.lambda_h == 0.001);
  CHECK(c.world.horizon == 900);
  CHECK(c.world.sigma_d == 0.1);
  CHECK(c.world.sigma_v == 0.1);
  CHECK(c.world.sigma_y == 0.1);
  CHECK(c.world.p_mis == 0.05);
  CHECK(c.world.width_m == 60.0);
  CHECK(c.world.height_m == 45.0);
  CHECK(c.world.fov_deg == 60.0);
  CHECK(c.world.sensor_range_m == 10.0);
  CHECK(c.world.r_detect == 900.0);
  CHECK(c.world.r_step == -0.1);
  CHECK(c.world.r_crash == -500.0);
}

TEST_CASE("config file parsing") {
  SUBCASE("values, comments and blank lines") {
    TempFile f("# experiment\nseed = 123\n\ngamma = 0.5  # inline comment\n"
               "n_drones=4\ncheckpoint_out = ckpt.bin\n");
    const RunConfig c = parse_config_file(f.path);
    CHECK(c.seed == 123);
    CHECK(c.gamma == 0.5);
    CHECK(c.world.n_drones == 4);
    CHECK(c.checkpoint_out == "ckpt.bin");
  }

  SUBCASE("missing file") {
    CHECK_THROWS_WITH_AS(parse_config_file("no_such_file.cfg"),
                         doctest::Contains("no_such_file.cfg"),
                         std::runtime_error);
  }

  SUBCASE("malformed line") {
    TempFile f("gamma 0.5\n");
    CHECK_THROWS_WITH_AS(parse_config_file(f.path),
                         doctest::Contains("line 1"), std::invalid_argument);
  }

  SUBCASE("unknown key names the key") {
    TempFile f("gammma = 0.5\n");
    CHECK_THROWS_WITH_AS(parse_config_file(f.path),
                         doctest::Contains("gammma"), std::invalid_argument);
  }

  SUBCASE("out-of-range value names the key") {
    TempFile f("gamma = 1.5\n");
    CHECK_THROWS_WITH_AS(parse_config_file(f.path),
                         doctest::Contains("gamma"), std::invalid_argument);
  }

  SUBCASE("malformed number names the key") {
    TempFile f("batch_size = many\n");
    CHECK_THROWS_WITH_AS(parse_config_file(f.path),
                         doctest::Contains("batch_size"),
                         std::invalid_argument);
  }
}

TEST_CASE("flag-style overrides beat file values") {
  TempFile f("seed = 3\n");
  RunConfig c = parse_config_file(f.path);
  CHECK(c.seed == 3);
  apply_key_value(c, "seed", "7");  // what a --seed flag does
  CHECK(c.seed == 7);
}

TEST_CASE("apply_key_value rejects bad overrides") {
  RunConfig c;
  CHECK_THROWS_AS(apply_key_value(c, "p_mis", "2.0"), std::invalid_argument);
  CHECK_THROWS_AS(apply_key_value(c, "optimizer", "lbfgs"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_key_value(c, "nope", "1"), std::invalid_argument);
  apply_key_value(c, "optimizer", "sgd");
  CHECK(c.optimizer == "sgd");
  CHECK(c.optimizer_config().plain_sgd);
}

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(900.0) == "900");
  CHECK(format_number(-500.1) == "-500.1");
  CHECK(format_number(static_cast<std::uint64_t>(42)) == "42");
  Rng rng(60);
  for (int i = 0; i < 1000; ++i) {
    const double v = uniform_real(rng, -1e6, 1e6);
    CHECK(std::stod(format_number(v)) == v);  // round-trips exactly
  }
}
