#pragma once

#include <string>
#include <vector>

#include "swarm/mlp.hpp"

namespace swarm {

struct AgentNets {
  MlpParams actor;
  MlpParams critic;
};

// Binary checkpoint, little-endian throughout:
//   magic "SWARMNET" (8 bytes)
//   u32 format version (currently 1)
//   u32 agent count
//   u32 layer-size count, then that many u32 actor layer sizes
//   u32 layer-size count, then that many u32 critic layer sizes
//   per agent: actor block then critic block, each w1 (row-major), b1,
//   w2, b2, w3, b3 as f64.
// Round-trips bit-exactly. Both functions throw std::runtime_error on I/O
// or format errors.
void save_checkpoint(const std::string& path, const std::vector<AgentNets>& nets);
std::vector<AgentNets> load_checkpoint(const std::string& path);

}  // namespace swarm
