#include "sfp/flows.hpp"

#include <cmath>
#include <stdexcept>

namespace sfp {

void FlowConfig::validate() const {
  if (k < 0.0) throw std::invalid_argument("flow: k must be >= 0");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("flow: sigma0 must be > 0");
}

void LatentFlowConfig::validate() const {
  if (k < 0.0) throw std::invalid_argument("latent flow: k must be >= 0");
  if (!(sigma0 > 0.0)) {
    throw std::invalid_argument("latent flow: sigma0 must be > 0");
  }
  if (!(sigma1 > 0.0)) {
    throw std::invalid_argument("latent flow: sigma1 must be > 0");
  }
  if (sigma1 < sigma0 * std::exp(-k)) {
    throw std::invalid_argument(
        "latent flow: requires sigma1 >= sigma0 * exp(-k)");
  }
}

double LatentFlowConfig::sigma_r() const {
  validate();
  const double s = sigma1 * sigma1 - sigma0 * sigma0 * std::exp(-2.0 * k);
  return std::sqrt(std::max(0.0, s));
}

namespace {

void require_dim(const Vec& v, int dim, const char* what) {
  if (static_cast<int>(v.size()) != dim) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

Vec conditional_velocity(const Trajectory& xi, const Vec& a, double t,
                         const FlowConfig& cfg) {
  require_dim(a, xi.dim(), "conditional_velocity");
  const Vec mean = xi.value(t);
  Vec v = xi.derivative(t);
  for (int i = 0; i < xi.dim(); ++i) v[i] -= cfg.k * (a[i] - mean[i]);
  return v;
}

Gaussian conditional_marginal(const Trajectory& xi, double t,
                              const FlowConfig& cfg) {
  return Gaussian{xi.value(t), cfg.sigma0 * std::exp(-cfg.k * t)};
}

Vec sample_conditional(const Trajectory& xi, double t, const FlowConfig& cfg,
                       Rng& rng) {
  const Gaussian g = conditional_marginal(xi, t, cfg);
  Vec a(g.mean);
  for (double& x : a) x += g.std * rng.normal();
  return a;
}

std::pair<Vec, Vec> latent_flow_forward(const Trajectory& xi, const Vec& a0,
                                        const Vec& z0, double t,
                                        const LatentFlowConfig& cfg) {
  const int d = xi.dim();
  require_dim(a0, d, "latent_flow_forward a0");
  require_dim(z0, d, "latent_flow_forward z0");
  const Vec xt = xi.value(t);
  const Vec x0 = xi.value(0.0);
  const double decay = std::exp(-cfg.k * t);
  const double sr = cfg.sigma_r();
  const double zc = 1.0 - (1.0 - cfg.sigma1) * t;
  Vec a(d), z(d);
  for (int i = 0; i < d; ++i) {
    a[i] = xt[i] + (a0[i] - x0[i]) * decay + sr * t * z0[i];
    z[i] = zc * z0[i] + t * xt[i];
  }
  return {std::move(a), std::move(z)};
}

std::pair<Vec, Vec> latent_flow_inverse(const Trajectory& xi, const Vec& a,
                                        const Vec& z, double t,
                                        const LatentFlowConfig& cfg) {
  const int d = xi.dim();
  require_dim(a, d, "latent_flow_inverse a");
  require_dim(z, d, "latent_flow_inverse z");
  const Vec xt = xi.value(t);
  const Vec x0 = xi.value(0.0);
  const double grow = std::exp(cfg.k * t);
  const double sr = cfg.sigma_r();
  const double zc = 1.0 - (1.0 - cfg.sigma1) * t;
  Vec a0(d), z0(d);
  for (int i = 0; i < d; ++i) {
    z0[i] = (z[i] - t * xt[i]) / zc;
    a0[i] = x0[i] + (a[i] - xt[i] - sr * t * z0[i]) * grow;
  }
  return {std::move(a0), std::move(z0)};
}

std::pair<Vec, Vec> latent_conditional_velocity(const Trajectory& xi,
                                                const Vec& a, const Vec& z,
                                                double t,
                                                const LatentFlowConfig& cfg) {
  const int d = xi.dim();
  require_dim(a, d, "latent_conditional_velocity a");
  require_dim(z, d, "latent_conditional_velocity z");
  const Vec xt = xi.value(t);
  const Vec xdot = xi.derivative(t);
  const double sr = cfg.sigma_r();
  const double zc = 1.0 - (1.0 - cfg.sigma1) * t;
  const double a_gain = sr * (1.0 + cfg.k * t) / zc;
  const double z_gain = (1.0 - cfg.sigma1) / zc;
  Vec va(d), vz(d);
  for (int i = 0; i < d; ++i) {
    const double z_resid = z[i] - t * xt[i];
    va[i] = xdot[i] - cfg.k * (a[i] - xt[i]) + a_gain * z_resid;
    vz[i] = xt[i] + t * xdot[i] - z_gain * z_resid;
  }
  return {std::move(va), std::move(vz)};
}

Gaussian2 latent_joint(const Trajectory& xi, double t,
                       const LatentFlowConfig& cfg) {
  const Vec xt = xi.value(t);
  const double decay2 = std::exp(-2.0 * cfg.k * t);
  const double sr = cfg.sigma_r();
  const double zc = 1.0 - (1.0 - cfg.sigma1) * t;
  Gaussian2 g;
  g.mean_a = xt;
  g.mean_z.resize(xt.size());
  for (std::size_t i = 0; i < xt.size(); ++i) g.mean_z[i] = t * xt[i];
  g.s11 = cfg.sigma0 * cfg.sigma0 * decay2 + sr * sr * t * t;
  g.s12 = sr * t * zc;
  g.s22 = zc * zc;
  return g;
}

std::pair<Vec, Vec> sample_latent_joint(const Trajectory& xi, double t,
                                        const LatentFlowConfig& cfg,
                                        Rng& rng) {
  cfg.validate();
  const int d = xi.dim();
  const Vec x0 = xi.value(0.0);
  Vec a0(d), z0(d);
  for (int i = 0; i < d; ++i) {
    a0[i] = x0[i] + cfg.sigma0 * rng.normal();
    z0[i] = rng.normal();
  }
  return latent_flow_forward(xi, a0, z0, t, cfg);
}

}  // namespace sfp
