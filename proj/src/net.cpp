#include "sfp/net.hpp"

#include <cmath>
#include <stdexcept>

namespace sfp {

std::size_t NetworkParams::num_params() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += l.w.size() + l.b.size();
  return n;
}

NetworkParams net_init(std::uint64_t seed, int input_dim,
                       const std::vector<int>& hidden, int output_dim) {
  if (input_dim < 1 || output_dim < 1) {
    throw std::invalid_argument("net_init: zero-width input or output");
  }
  for (int h : hidden) {
    if (h < 1) throw std::invalid_argument("net_init: zero-width hidden layer");
  }
  Rng rng(seed);
  NetworkParams p;
  int in = input_dim;
  std::vector<int> outs(hidden);
  outs.push_back(output_dim);
  for (int out : outs) {
    Layer l;
    l.in = in;
    l.out = out;
    const double bound = std::sqrt(6.0 / in);
    l.w.resize(static_cast<std::size_t>(out) * in);
    for (double& w : l.w) w = rng.uniform(-bound, bound);
    l.b.assign(out, 0.0);
    p.layers.push_back(std::move(l));
    in = out;
  }
  return p;
}

namespace {

void affine(const Layer& l, const Vec& x, Vec& y) {
  y.assign(l.out, 0.0);
  for (int r = 0; r < l.out; ++r) {
    const double* wr = l.w.data() + static_cast<std::size_t>(r) * l.in;
    double acc = l.b[r];
    for (int c = 0; c < l.in; ++c) acc += wr[c] * x[c];
    y[r] = acc;
  }
}

}  // namespace

Vec net_forward(const NetworkParams& p, const Vec& input) {
  if (static_cast<int>(input.size()) != p.input_dim()) {
    throw std::invalid_argument("net_forward: input dimension mismatch");
  }
  Vec x(input), y;
  const std::size_t last = p.layers.size() - 1;
  for (std::size_t li = 0; li < p.layers.size(); ++li) {
    affine(p.layers[li], x, y);
    if (li != last) {
      for (double& v : y) v = std::tanh(v);
    }
    x.swap(y);
  }
  return x;
}

LossGrad net_loss_grad(const NetworkParams& p, const Batch& batch) {
  if (batch.inputs.empty()) {
    throw std::invalid_argument("net_loss_grad: empty batch");
  }
  if (batch.inputs.size() != batch.targets.size()) {
    throw std::invalid_argument("net_loss_grad: inputs/targets size mismatch");
  }
  LossGrad out;
  out.grads.layers.reserve(p.layers.size());
  for (const Layer& l : p.layers) {
    Layer g;
    g.in = l.in;
    g.out = l.out;
    g.w.assign(l.w.size(), 0.0);
    g.b.assign(l.b.size(), 0.0);
    out.grads.layers.push_back(std::move(g));
  }

  const std::size_t nl = p.layers.size();
  const double inv_batch = 1.0 / batch.inputs.size();
  std::vector<Vec> acts(nl + 1);  // acts[0] = input, acts[i] = layer i-1 output
  Vec delta, delta_prev;

  for (std::size_t s = 0; s < batch.inputs.size(); ++s) {
    const Vec& input = batch.inputs[s];
    const Vec& target = batch.targets[s];
    if (static_cast<int>(input.size()) != p.input_dim() ||
        static_cast<int>(target.size()) != p.output_dim()) {
      throw std::invalid_argument("net_loss_grad: sample dimension mismatch");
    }
    acts[0] = input;
    for (std::size_t li = 0; li < nl; ++li) {
      affine(p.layers[li], acts[li], acts[li + 1]);
      if (li != nl - 1) {
        for (double& v : acts[li + 1]) v = std::tanh(v);
      }
    }

    const Vec& y = acts[nl];
    delta.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = y[i] - target[i];
      out.loss += r * r * inv_batch;
      delta[i] = 2.0 * r * inv_batch;
    }

    for (std::size_t li = nl; li-- > 0;) {
      const Layer& l = p.layers[li];
      Layer& g = out.grads.layers[li];
      const Vec& x = acts[li];
      for (int r = 0; r < l.out; ++r) {
        const double d = delta[r];
        g.b[r] += d;
        double* gw = g.w.data() + static_cast<std::size_t>(r) * l.in;
        for (int c = 0; c < l.in; ++c) gw[c] += d * x[c];
      }
      if (li == 0) break;
      delta_prev.assign(l.in, 0.0);
      for (int r = 0; r < l.out; ++r) {
        const double d = delta[r];
        const double* wr = l.w.data() + static_cast<std::size_t>(r) * l.in;
        for (int c = 0; c < l.in; ++c) delta_prev[c] += d * wr[c];
      }
      // Through the tanh of the producing layer: x holds tanh(pre).
      for (int c = 0; c < l.in; ++c) delta_prev[c] *= 1.0 - x[c] * x[c];
      delta.swap(delta_prev);
    }
  }
  return out;
}

OptimizerState adam_init(const NetworkParams& p) {
  OptimizerState st;
  auto zeros_like = [](const NetworkParams& src) {
    NetworkParams z;
    z.layers.reserve(src.layers.size());
    for (const Layer& l : src.layers) {
      Layer zl;
      zl.in = l.in;
      zl.out = l.out;
      zl.w.assign(l.w.size(), 0.0);
      zl.b.assign(l.b.size(), 0.0);
      z.layers.push_back(std::move(zl));
    }
    return z;
  };
  st.m = zeros_like(p);
  st.v = zeros_like(p);
  st.step = 0;
  return st;
}

void adam_step(NetworkParams& p, OptimizerState& state,
               const NetworkParams& grads, const AdamConfig& cfg) {
  if (grads.layers.size() != p.layers.size() ||
      state.m.layers.size() != p.layers.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  state.step += 1;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t li = 0; li < p.layers.size(); ++li) {
    Layer& l = p.layers[li];
    const Layer& g = grads.layers[li];
    Layer& m = state.m.layers[li];
    Layer& v = state.v.layers[li];
    if (g.w.size() != l.w.size() || g.b.size() != l.b.size()) {
      throw std::invalid_argument("adam_step: layer shape mismatch");
    }
    auto update = [&](Vec& pv, Vec& mv, Vec& vv, const Vec& gv) {
      for (std::size_t i = 0; i < pv.size(); ++i) {
        mv[i] = cfg.beta1 * mv[i] + (1.0 - cfg.beta1) * gv[i];
        vv[i] = cfg.beta2 * vv[i] + (1.0 - cfg.beta2) * gv[i] * gv[i];
        const double mhat = mv[i] / c1;
        const double vhat = vv[i] / c2;
        pv[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
      }
    };
    update(l.w, m.w, v.w, g.w);
    update(l.b, m.b, v.b, g.b);
  }
}

void append_time_features(Vec& input, double t) {
  input.push_back(t);
  input.push_back(std::sin(2.0 * M_PI * t));
  input.push_back(std::cos(2.0 * M_PI * t));
  input.push_back(std::sin(4.0 * M_PI * t));
  input.push_back(std::cos(4.0 * M_PI * t));
}

}  // namespace sfp
