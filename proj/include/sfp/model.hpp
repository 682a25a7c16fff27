#pragma once

#include <string>

#include "sfp/core.hpp"
#include "sfp/flows.hpp"
#include "sfp/net.hpp"

namespace sfp {

enum class Variant { plain, latent, baseline };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// A trained velocity field plus everything needed to run it: dimensions,
/// the flow configuration it was trained against, and the variant tag.
/// The baseline variant operates on flattened trajectory vectors of
/// traj_len waypoints; the latent variant on the extended state (a, z).
struct VelocityModel {
  Variant variant = Variant::plain;
  int action_dim = 0;
  int obs_dim = 0;
  int history_len = 0;
  int traj_len = 0;  // baseline only
  double t_pred_seconds = 0.0;
  FlowConfig flow;
  double sigma1 = 0.0;  // latent only
  NetworkParams params;

  // Dimension of the integration state: action_dim (plain),
  // 2 * action_dim (latent), traj_len * action_dim (baseline).
  int state_dim() const;
  int input_dim() const;

  Vec encode_input(const Vec& state, double t, const Vec& history_flat) const;
  // One network evaluation: velocity of the integration state.
  Vec velocity(const Vec& state, double t, const Vec& history_flat) const;
};

void model_save(const VelocityModel& m, const std::string& path);
VelocityModel model_load(const std::string& path);

}  // namespace sfp
