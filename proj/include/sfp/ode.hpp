#pragma once

#include "sfp/core.hpp"

namespace sfp {

// Fixed-step integrators over a velocity field v(x, t). Euler is the policy
// execution path; RK4 is the higher-order oracle used for verification.

template <typename Field>
void euler_step(const Field& field, Vec& x, double t, double dt) {
  const Vec v = field(x, t);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += v[i] * dt;
}

template <typename Field>
void rk4_step(const Field& field, Vec& x, double t, double dt) {
  const std::size_t n = x.size();
  const Vec k1 = field(x, t);
  Vec tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
  const Vec k2 = field(tmp, t + 0.5 * dt);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
  const Vec k3 = field(tmp, t + 0.5 * dt);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
  const Vec k4 = field(tmp, t + dt);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

// Integrate from t0 to t1 in round((t1 - t0) / dt) uniform RK4 steps.
template <typename Field>
Vec rk4_integrate(const Field& field, Vec x, double t0, double t1, double dt) {
  const int steps = static_cast<int>((t1 - t0) / dt + 0.5);
  const double h = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) rk4_step(field, x, t0 + s * h, h);
  return x;
}

}  // namespace sfp
