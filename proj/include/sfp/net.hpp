#pragma once

#include <cstdint>
#include <vector>

#include "sfp/core.hpp"
#include "sfp/rng.hpp"

namespace sfp {

/// One dense layer; weights row-major [out][in].
struct Layer {
  int in = 0;
  int out = 0;
  Vec w;
  Vec b;
};

/// Fully connected stack: tanh on hidden layers, linear output.
struct NetworkParams {
  std::vector<Layer> layers;

  int input_dim() const { return layers.empty() ? 0 : layers.front().in; }
  int output_dim() const { return layers.empty() ? 0 : layers.back().out; }
  std::size_t num_params() const;
};

// Scaled-uniform fan-in init: w ~ U(-sqrt(6/fan_in), sqrt(6/fan_in)),
// biases zero. Deterministic in seed.
NetworkParams net_init(std::uint64_t seed, int input_dim,
                       const std::vector<int>& hidden, int output_dim);

Vec net_forward(const NetworkParams& p, const Vec& input);

struct Batch {
  std::vector<Vec> inputs;
  std::vector<Vec> targets;
};

// loss = mean over batch of ||net(x) - target||^2, with exact reverse-mode
// gradients of that mean in a params-shaped structure.
struct LossGrad {
  double loss = 0.0;
  NetworkParams grads;
};
LossGrad net_loss_grad(const NetworkParams& p, const Batch& batch);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct OptimizerState {
  NetworkParams m;
  NetworkParams v;
  long step = 0;
};

OptimizerState adam_init(const NetworkParams& p);

// Bias-corrected adaptive-moment update, in place.
void adam_step(NetworkParams& p, OptimizerState& state,
               const NetworkParams& grads, const AdamConfig& cfg);

// Time featurization shared by every model variant: the raw scalar plus
// sin/cos at two frequencies.
inline constexpr int kTimeFeatures = 5;
void append_time_features(Vec& input, double t);

}  // namespace sfp
