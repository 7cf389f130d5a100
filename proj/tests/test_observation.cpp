#include <doctest.h>

#include <cmath>

#include "swarm/observation.hpp"

using namespace swarm;

TEST_CASE("encode normalizes the centre-of-arena state") {
  WorldConfig c;
  DroneState d;
  d.x = 30.0;
  d.y = 22.5;
  d.heading = 0.0;
  d.dir = 0.0;
  d.speed = 0.0;
  d.battery_steps_left = 900;
  const ObsVector o = encode(d, 0, c);

  CHECK(o[obs::kX] == doctest::Approx(0.5));
  CHECK(o[obs::kY] == doctest::Approx(0.5));
  CHECK(o[obs::kHeadingCos] == doctest::Approx(1.0));
  CHECK(o[obs::kHeadingSin] == doctest::Approx(0.0));
  CHECK(o[obs::kVelX] == doctest::Approx(0.0));
  CHECK(o[obs::kVelY] == doctest::Approx(0.0));
  CHECK(o[obs::kBattery] == doctest::Approx(1.0));
  CHECK(o[obs::kDetected] == doctest::Approx(0.0));
  CHECK(o[obs::kWallN] == doctest::Approx(0.5));
  CHECK(o[obs::kWallE] == doctest::Approx(0.5));
  CHECK(o[obs::kWallS] == doctest::Approx(0.5));
  CHECK(o[obs::kWallW] == doctest::Approx(0.5));
}

TEST_CASE("wall distances vanish at the origin corner") {
  WorldConfig c;
  DroneState d;
  d.x = 0.0;
  d.y = 0.0;
  d.battery_steps_left = 900;
  const ObsVector o = encode(d, 0, c);
  CHECK(o[obs::kWallS] == 0.0);
  CHECK(o[obs::kWallW] == 0.0);
  CHECK(o[obs::kWallN] == doctest::Approx(1.0));
  CHECK(o[obs::kWallE] == doctest::Approx(1.0));
}

TEST_CASE("encode is pure") {
  WorldConfig c;
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    DroneState d;
    d.x = uniform_real(rng, 0.0, c.width_m);
    d.y = uniform_real(rng, 0.0, c.height_m);
    d.heading = uniform_real(rng, -3.14, 3.14);
    d.dir = uniform_real(rng, -3.14, 3.14);
    d.speed = uniform_real(rng, 0.0, 1.5);
    d.battery_steps_left = uniform_int(rng, 901);
    const int detected = uniform_int(rng, c.n_targets + 1);
    CHECK(encode(d, detected, c) == encode(d, detected, c));
  }
}

TEST_CASE("encode output is finite and ranged") {
  WorldConfig c;
  Rng rng(18);
  for (int i = 0; i < 500; ++i) {
    DroneState d;
    d.x = uniform_real(rng, 0.0, c.width_m);
    d.y = uniform_real(rng, 0.0, c.height_m);
    d.heading = uniform_real(rng, -3.14, 3.14);
    d.dir = uniform_real(rng, -3.14, 3.14);
    d.speed = std::max(0.0, 1.0 + normal(rng, 0.0, 0.1));
    d.battery_steps_left = uniform_int(rng, 901);
    const ObsVector o = encode(d, uniform_int(rng, 4), c);
    for (double v : o) CHECK(std::isfinite(v));
    for (int k = obs::kWallN; k <= obs::kWallW; ++k) {
      CHECK(o[k] >= 0.0);
      CHECK(o[k] <= 1.0);
    }
    CHECK(o[obs::kBattery] >= 0.0);
    CHECK(o[obs::kBattery] <= 1.0);
    CHECK(o[obs::kDetected] >= 0.0);
    CHECK(o[obs::kDetected] <= 1.0);
  }
}

TEST_CASE("translating east touches only x-dependent components") {
  WorldConfig c;
  DroneState d;
  d.x = 20.0;
  d.y = 15.0;
  d.heading = 0.7;
  d.dir = -0.3;
  d.speed = 1.1;
  d.battery_steps_left = 500;

  const ObsVector before = encode(d, 1, c);
  d.x += 1.0;
  const ObsVector after = encode(d, 1, c);

  CHECK(after[obs::kX] == doctest::Approx(before[obs::kX] + 1.0 / c.width_m));
  CHECK(after[obs::kWallE] ==
        doctest::Approx(before[obs::kWallE] - 1.0 / c.width_m));
  CHECK(after[obs::kWallW] ==
        doctest::Approx(before[obs::kWallW] + 1.0 / c.width_m));
  // Everything not a function of x is untouched.
  CHECK(after[obs::kY] == before[obs::kY]);
  CHECK(after[obs::kHeadingCos] == before[obs::kHeadingCos]);
  CHECK(after[obs::kHeadingSin] == before[obs::kHeadingSin]);
  CHECK(after[obs::kVelX] == before[obs::kVelX]);
  CHECK(after[obs::kVelY] == before[obs::kVelY]);
  CHECK(after[obs::kBattery] == before[obs::kBattery]);
  CHECK(after[obs::kDetected] == before[obs::kDetected]);
  CHECK(after[obs::kWallN] == before[obs::kWallN]);
  CHECK(after[obs::kWallS] == before[obs::kWallS]);
}
