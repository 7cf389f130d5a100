#include "swarm/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace swarm {

namespace {

constexpr char kMagic[8] = {'S', 'W', 'A', 'R', 'M', 'N', 'E', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double d) {
  const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct Reader {
  const std::string& data;
  std::size_t pos = 0;

  void need(std::size_t n) {
    if (pos + n > data.size())
      throw std::runtime_error("checkpoint: truncated file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 8;
    return std::bit_cast<double>(v);
  }
};

void put_matrix(std::string& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
}

void put_vector(std::string& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) put_f64(out, v[i]);
}

void put_params(std::string& out, const MlpParams& p) {
  put_matrix(out, p.w1);
  put_vector(out, p.b1);
  put_matrix(out, p.w2);
  put_vector(out, p.b2);
  put_matrix(out, p.w3);
  put_vector(out, p.b3);
}

void put_dims(std::string& out, const LayerDims& d) {
  put_u32(out, 4);
  put_u32(out, static_cast<std::uint32_t>(d.input));
  put_u32(out, static_cast<std::uint32_t>(d.hidden1));
  put_u32(out, static_cast<std::uint32_t>(d.hidden2));
  put_u32(out, static_cast<std::uint32_t>(d.output));
}

LayerDims read_dims(Reader& r) {
  if (r.u32() != 4)
    throw std::runtime_error("checkpoint: unexpected layer count");
  LayerDims d;
  d.input = static_cast<int>(r.u32());
  d.hidden1 = static_cast<int>(r.u32());
  d.hidden2 = static_cast<int>(r.u32());
  d.output = static_cast<int>(r.u32());
  return d;
}

MlpParams read_params(Reader& r, const LayerDims& d) {
  Rng dummy(0);
  MlpParams p = MlpParams::init(d, dummy);
  auto fill_matrix = [&](Eigen::MatrixXd& m) {
    for (Eigen::Index row = 0; row < m.rows(); ++row)
      for (Eigen::Index col = 0; col < m.cols(); ++col) m(row, col) = r.f64();
  };
  auto fill_vector = [&](Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = r.f64();
  };
  fill_matrix(p.w1);
  fill_vector(p.b1);
  fill_matrix(p.w2);
  fill_vector(p.b2);
  fill_matrix(p.w3);
  fill_vector(p.b3);
  p.zero_grad();
  return p;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<AgentNets>& nets) {
  if (nets.empty())
    throw std::runtime_error("checkpoint: nothing to save");
  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(nets.size()));
  put_dims(buf, nets.front().actor.dims());
  put_dims(buf, nets.front().critic.dims());
  for (const auto& agent : nets) {
    if (!(agent.actor.dims() == nets.front().actor.dims()) ||
        !(agent.critic.dims() == nets.front().critic.dims()))
      throw std::runtime_error("checkpoint: inconsistent layer sizes");
    put_params(buf, agent.actor);
    put_params(buf, agent.critic);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("checkpoint: cannot open '" + path +
                             "' for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("checkpoint: write to '" + path + "' failed");
}

std::vector<AgentNets> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  Reader r{data};
  r.need(sizeof(kMagic));
  if (std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("checkpoint: bad magic in '" + path + "'");
  r.pos = sizeof(kMagic);
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw std::runtime_error("checkpoint: unsupported format version " +
                             std::to_string(version));
  const std::uint32_t n_agents = r.u32();
  if (n_agents == 0 || n_agents > 10000)
    throw std::runtime_error("checkpoint: implausible agent count");
  const LayerDims actor_dims = read_dims(r);
  const LayerDims critic_dims = read_dims(r);

  std::vector<AgentNets> nets;
  nets.reserve(n_agents);
  for (std::uint32_t a = 0; a < n_agents; ++a) {
    AgentNets agent{read_params(r, actor_dims), read_params(r, critic_dims)};
    nets.push_back(std::move(agent));
  }
  if (r.pos != data.size())
    throw std::runtime_error("checkpoint: trailing bytes in '" + path + "'");
  return nets;
}

}  // namespace swarm
