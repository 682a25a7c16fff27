#pragma once

#include <utility>

#include "sfp/core.hpp"
#include "sfp/rng.hpp"

namespace sfp {

/// Stabilizing conditional flow hyperparameters: gain k and the standard
/// deviation of the initial action distribution.
struct FlowConfig {
  double k = 5.0;
  double sigma0 = 0.05;

  void validate() const;  // k >= 0, sigma0 > 0 (training-side check)
};

/// Latent-variable (extended state) flow hyperparameters. sigma_r is derived,
/// never stored, so it cannot go stale.
struct LatentFlowConfig {
  double sigma0 = 0.01;
  double sigma1 = 0.2;
  double k = 5.0;

  void validate() const;    // requires sigma1 >= sigma0 * exp(-k)
  double sigma_r() const;   // sqrt(sigma1^2 - sigma0^2 * exp(-2k))
};

/// Isotropic Gaussian over actions: one std shared by every dimension.
struct Gaussian {
  Vec mean;
  double std = 0.0;
};

/// Joint Gaussian over the extended state (a, z): per-dimension 2x2
/// covariance blocks, identical across dimensions.
struct Gaussian2 {
  Vec mean_a;
  Vec mean_z;
  double s11 = 0.0;
  double s12 = 0.0;
  double s22 = 0.0;
};

// xi_dot(t) - k * (a - xi(t))
Vec conditional_velocity(const Trajectory& xi, const Vec& a, double t,
                         const FlowConfig& cfg);

// N(xi(t), (sigma0 * exp(-k t))^2)
Gaussian conditional_marginal(const Trajectory& xi, double t,
                              const FlowConfig& cfg);

Vec sample_conditional(const Trajectory& xi, double t, const FlowConfig& cfg,
                       Rng& rng);

// Extended-state flow map and its pieces.
std::pair<Vec, Vec> latent_flow_forward(const Trajectory& xi, const Vec& a0,
                                        const Vec& z0, double t,
                                        const LatentFlowConfig& cfg);
std::pair<Vec, Vec> latent_flow_inverse(const Trajectory& xi, const Vec& a,
                                        const Vec& z, double t,
                                        const LatentFlowConfig& cfg);
std::pair<Vec, Vec> latent_conditional_velocity(const Trajectory& xi,
                                                const Vec& a, const Vec& z,
                                                double t,
                                                const LatentFlowConfig& cfg);
Gaussian2 latent_joint(const Trajectory& xi, double t,
                       const LatentFlowConfig& cfg);

// Draw (a, z) from latent_joint by pushing the independent initial samples
// a0 ~ N(xi(0), sigma0^2), z0 ~ N(0, I) through the forward map.
std::pair<Vec, Vec> sample_latent_joint(const Trajectory& xi, double t,
                                        const LatentFlowConfig& cfg, Rng& rng);

}  // namespace sfp
