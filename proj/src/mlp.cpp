#include "swarm/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace swarm {

namespace {

Eigen::MatrixXd glorot(int rows, int cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Eigen::MatrixXd m(rows, cols);
  // Row-major fill so the draw order matches the checkpoint layout.
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = uniform_real(rng, -limit, limit);
  return m;
}

struct Trace {
  Eigen::VectorXd input;
  Eigen::VectorXd z1, a1;  // pre/post first hidden layer
  Eigen::VectorXd z2, a2;
  Eigen::VectorXd out;     // linear output (logits or value)
};

Trace forward_trace(const MlpParams& p, std::span<const double> input) {
  if (static_cast<int>(input.size()) != p.w1.cols())
    throw std::invalid_argument("mlp: input size mismatch");
  Eigen::VectorXd x(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!std::isfinite(input[i]))
      throw std::invalid_argument("mlp: non-finite input");
    x[static_cast<Eigen::Index>(i)] = input[i];
  }
  Trace t;
  t.input = std::move(x);
  t.z1 = p.w1 * t.input + p.b1;
  t.a1 = t.z1.cwiseMax(0.0);
  t.z2 = p.w2 * t.a1 + p.b2;
  t.a2 = t.z2.cwiseMax(0.0);
  t.out = p.w3 * t.a2 + p.b3;
  return t;
}

// Backpropagates d(loss)/d(out) through the trace into the accumulators.
void backward(MlpParams& p, const Trace& t, const Eigen::VectorXd& dout) {
  p.gw3.noalias() += dout * t.a2.transpose();
  p.gb3 += dout;
  // ReLU gate: pass gradient only where the pre-activation was positive.
  Eigen::VectorXd dz2 = (p.w3.transpose() * dout).eval();
  for (Eigen::Index i = 0; i < dz2.size(); ++i)
    if (t.z2[i] <= 0.0) dz2[i] = 0.0;
  p.gw2.noalias() += dz2 * t.a1.transpose();
  p.gb2 += dz2;
  Eigen::VectorXd dz1 = (p.w2.transpose() * dz2).eval();
  for (Eigen::Index i = 0; i < dz1.size(); ++i)
    if (t.z1[i] <= 0.0) dz1[i] = 0.0;
  p.gw1.noalias() += dz1 * t.input.transpose();
  p.gb1 += dz1;
}

void clip_gradients(MlpParams& p, double max_norm) {
  if (max_norm <= 0.0) return;
  const double norm = p.grad_norm();
  if (norm <= max_norm || norm == 0.0) return;
  const double scale = max_norm / norm;
  p.gw1 *= scale;
  p.gw2 *= scale;
  p.gw3 *= scale;
  p.gb1 *= scale;
  p.gb2 *= scale;
  p.gb3 *= scale;
}

template <typename T>
void adam_step(T& param, const T& grad, T& m, T& v, long t,
               const OptimizerConfig& c) {
  m = c.beta1 * m + (1.0 - c.beta1) * grad;
  v = c.beta2 * v + (1.0 - c.beta2) * grad.cwiseProduct(grad);
  const double mc = 1.0 - std::pow(c.beta1, static_cast<double>(t));
  const double vc = 1.0 - std::pow(c.beta2, static_cast<double>(t));
  param.array() -= c.learning_rate * (m.array() / mc) /
                   ((v.array() / vc).sqrt() + c.epsilon);
}

}  // namespace

MlpParams MlpParams::init(const LayerDims& d, Rng& rng) {
  if (d.input < 1 || d.hidden1 < 1 || d.hidden2 < 1 || d.output < 1)
    throw std::invalid_argument("mlp: layer sizes must be >= 1");
  MlpParams p;
  p.w1 = glorot(d.hidden1, d.input, rng);
  p.w2 = glorot(d.hidden2, d.hidden1, rng);
  p.w3 = glorot(d.output, d.hidden2, rng);
  p.b1 = Eigen::VectorXd::Zero(d.hidden1);
  p.b2 = Eigen::VectorXd::Zero(d.hidden2);
  p.b3 = Eigen::VectorXd::Zero(d.output);
  p.gw1 = Eigen::MatrixXd::Zero(d.hidden1, d.input);
  p.gw2 = Eigen::MatrixXd::Zero(d.hidden2, d.hidden1);
  p.gw3 = Eigen::MatrixXd::Zero(d.output, d.hidden2);
  p.gb1 = Eigen::VectorXd::Zero(d.hidden1);
  p.gb2 = Eigen::VectorXd::Zero(d.hidden2);
  p.gb3 = Eigen::VectorXd::Zero(d.output);
  return p;
}

LayerDims MlpParams::dims() const {
  return LayerDims{static_cast<int>(w1.cols()), static_cast<int>(w1.rows()),
                   static_cast<int>(w2.rows()), static_cast<int>(w3.rows())};
}

void MlpParams::zero_grad() {
  gw1.setZero();
  gw2.setZero();
  gw3.setZero();
  gb1.setZero();
  gb2.setZero();
  gb3.setZero();
}

double MlpParams::grad_norm() const {
  const double sq = gw1.squaredNorm() + gw2.squaredNorm() + gw3.squaredNorm() +
                    gb1.squaredNorm() + gb2.squaredNorm() + gb3.squaredNorm();
  return std::sqrt(sq);
}

bool MlpParams::finite() const {
  return w1.allFinite() && w2.allFinite() && w3.allFinite() &&
         b1.allFinite() && b2.allFinite() && b3.allFinite();
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double shift = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - shift).exp();
  return e / e.sum();
}

double entropy(const Eigen::VectorXd& probs) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i)
    if (probs[i] > 0.0) h -= probs[i] * std::log(probs[i]);
  return h;
}

Eigen::VectorXd actor_forward(const MlpParams& params,
                              std::span<const double> input) {
  return softmax(forward_trace(params, input).out);
}

double critic_forward(const MlpParams& params, std::span<const double> input) {
  const Trace t = forward_trace(params, input);
  if (t.out.size() != 1)
    throw std::invalid_argument("mlp: critic output must be scalar");
  return t.out[0];
}

int sample_action(const Eigen::VectorXd& probs, Rng& rng) {
  const double u = uniform_real(rng, 0.0, 1.0);
  double cum = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size() - 1);  // guard against rounding
}

int argmax_action(const Eigen::VectorXd& probs) {
  Eigen::Index best = 0;
  probs.maxCoeff(&best);
  return static_cast<int>(best);
}

void accumulate_actor_grad(MlpParams& params, std::span<const double> input,
                           int action, double advantage, double entropy_weight,
                           double policy_weight) {
  if (!std::isfinite(advantage))
    throw std::invalid_argument("mlp: non-finite advantage");
  const Trace t = forward_trace(params, input);
  if (action < 0 || action >= t.out.size())
    throw std::invalid_argument("mlp: action index out of range");

  // Stable log-probabilities via the shifted log-sum-exp.
  const double shift = t.out.maxCoeff();
  const Eigen::ArrayXd shifted = t.out.array() - shift;
  const double lse = std::log(shifted.exp().sum());
  const Eigen::VectorXd logp = (shifted - lse).matrix();
  const Eigen::VectorXd p = logp.array().exp().matrix();
  const double h = -(p.array() * logp.array()).sum();

  // d/dlogits of  policy_weight * (-logp[a] * advantage)  -  entropy_weight * H
  Eigen::VectorXd dout = policy_weight * advantage * p;
  dout[action] -= policy_weight * advantage;
  dout += entropy_weight * (p.array() * (logp.array() + h)).matrix();

  backward(params, t, dout);
}

void accumulate_critic_grad(MlpParams& params, std::span<const double> input,
                            double target_return, double value_weight) {
  if (!std::isfinite(target_return))
    throw std::invalid_argument("mlp: non-finite return");
  const Trace t = forward_trace(params, input);
  if (t.out.size() != 1)
    throw std::invalid_argument("mlp: critic output must be scalar");
  // d/dV of value_weight * (G - V)^2
  Eigen::VectorXd dout(1);
  dout[0] = -2.0 * value_weight * (target_return - t.out[0]);
  backward(params, t, dout);
}

OptimizerState OptimizerState::init(const MlpParams& p) {
  OptimizerState s;
  s.m_w1 = Eigen::MatrixXd::Zero(p.w1.rows(), p.w1.cols());
  s.m_w2 = Eigen::MatrixXd::Zero(p.w2.rows(), p.w2.cols());
  s.m_w3 = Eigen::MatrixXd::Zero(p.w3.rows(), p.w3.cols());
  s.v_w1 = s.m_w1;
  s.v_w2 = s.m_w2;
  s.v_w3 = s.m_w3;
  s.m_b1 = Eigen::VectorXd::Zero(p.b1.size());
  s.m_b2 = Eigen::VectorXd::Zero(p.b2.size());
  s.m_b3 = Eigen::VectorXd::Zero(p.b3.size());
  s.v_b1 = s.m_b1;
  s.v_b2 = s.m_b2;
  s.v_b3 = s.m_b3;
  return s;
}

void apply_update(MlpParams& p, OptimizerState& s, const OptimizerConfig& c) {
  clip_gradients(p, c.grad_clip);
  s.step_count += 1;
  if (c.plain_sgd) {
    p.w1 -= c.learning_rate * p.gw1;
    p.w2 -= c.learning_rate * p.gw2;
    p.w3 -= c.learning_rate * p.gw3;
    p.b1 -= c.learning_rate * p.gb1;
    p.b2 -= c.learning_rate * p.gb2;
    p.b3 -= c.learning_rate * p.gb3;
  } else {
    const long t = s.step_count;
    adam_step(p.w1, p.gw1, s.m_w1, s.v_w1, t, c);
    adam_step(p.w2, p.gw2, s.m_w2, s.v_w2, t, c);
    adam_step(p.w3, p.gw3, s.m_w3, s.v_w3, t, c);
    adam_step(p.b1, p.gb1, s.m_b1, s.v_b1, t, c);
    adam_step(p.b2, p.gb2, s.m_b2, s.v_b2, t, c);
    adam_step(p.b3, p.gb3, s.m_b3, s.v_b3, t, c);
  }
  p.zero_grad();
}

}  // namespace swarm
