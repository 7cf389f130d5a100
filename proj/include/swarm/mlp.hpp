#pragma once

#include <Eigen/Dense>
#include <span>

#include "swarm/rng.hpp"

namespace swarm {

// Dense 3-layer network (two ReLU hidden layers, linear output). The actor
// adds a softmax on top; the critic reads the single linear output. Forward
// and backward passes are hand-written; gradients are accumulated into the
// matching g* tensors until apply_update consumes them.
struct LayerDims {
  int input = 12;
  int hidden1 = 200;
  int hidden2 = 100;
  int output = 6;

  bool operator==(const LayerDims&) const = default;
};

struct MlpParams {
  Eigen::MatrixXd w1, w2, w3;  // (out x in) per layer
  Eigen::VectorXd b1, b2, b3;
  Eigen::MatrixXd gw1, gw2, gw3;  // gradient accumulators, same shapes
  Eigen::VectorXd gb1, gb2, gb3;

  // Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases.
  static MlpParams init(const LayerDims& dims, Rng& rng);

  LayerDims dims() const;
  void zero_grad();
  double grad_norm() const;  // global L2 norm over all accumulators
  bool finite() const;
};

// Numerically stable softmax (log-sum-exp shifted); strictly positive output
// summing to 1.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

double entropy(const Eigen::VectorXd& probs);

// Probability vector over actions. Throws std::invalid_argument on
// shape-mismatched or non-finite input.
Eigen::VectorXd actor_forward(const MlpParams& params, std::span<const double> input);

// Scalar state-value estimate (linear output, no squashing).
double critic_forward(const MlpParams& params, std::span<const double> input);

int sample_action(const Eigen::VectorXd& probs, Rng& rng);
int argmax_action(const Eigen::VectorXd& probs);

// Adds the gradient of
//   policy_weight * (-log pi(action) * advantage) - entropy_weight * H(pi)
// to the accumulators. Descent on this loss raises the log-probability of
// positive-advantage actions and raises entropy.
void accumulate_actor_grad(MlpParams& params, std::span<const double> input,
                           int action, double advantage, double entropy_weight,
                           double policy_weight = 1.0);

// Adds the gradient of value_weight * (target_return - V(input))^2.
void accumulate_critic_grad(MlpParams& params, std::span<const double> input,
                            double target_return, double value_weight = 1.0);

struct OptimizerConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool plain_sgd = false;  // skip the adaptive moments
  double grad_clip = 5.0;  // global-norm clip before the update; <= 0 disables
};

struct OptimizerState {
  Eigen::MatrixXd m_w1, m_w2, m_w3, v_w1, v_w2, v_w3;
  Eigen::VectorXd m_b1, m_b2, m_b3, v_b1, v_b2, v_b3;
  long step_count = 0;

  static OptimizerState init(const MlpParams& params);
};

// One optimizer step from the accumulated gradients; accumulators are zeroed.
void apply_update(MlpParams& params, OptimizerState& state,
                  const OptimizerConfig& config);

}  // namespace swarm
