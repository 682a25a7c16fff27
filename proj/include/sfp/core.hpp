#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sfp {

using Vec = std::vector<double>;

/// Action path xi on normalized time [0,1], stored as uniformly spaced
/// waypoints. Piecewise-linear between waypoints; derivatives are central
/// differences at grid nodes (one-sided at the ends) and the segment slope
/// inside segments.
class Trajectory {
 public:
  Trajectory() = default;
  // waypoints: M >= 2 actions of equal dimension at times m/(M-1).
  explicit Trajectory(std::vector<Vec> waypoints);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(waypoints_.size()); }
  const std::vector<Vec>& waypoints() const { return waypoints_; }

  Vec value(double t) const;       // xi(t)
  Vec derivative(double t) const;  // xi_dot(t)

  const Vec& front() const { return waypoints_.front(); }
  const Vec& back() const { return waypoints_.back(); }

 private:
  std::vector<Vec> waypoints_;
  int dim_ = 0;
};

/// Last K observations, oldest first. Episodes shorter than K are padded by
/// repeating the earliest observation.
class ObservationHistory {
 public:
  ObservationHistory() = default;
  ObservationHistory(std::vector<Vec> observations, int history_len);

  int history_len() const { return static_cast<int>(observations_.size()); }
  int obs_dim() const { return obs_dim_; }
  const std::vector<Vec>& observations() const { return observations_; }

  // Flat [K * obs_dim] encoding fed to the network.
  const Vec& flat() const { return flat_; }

 private:
  std::vector<Vec> observations_;
  Vec flat_;
  int obs_dim_ = 0;
};

struct Demonstration {
  ObservationHistory history;
  Trajectory trajectory;
};

struct Dataset {
  std::vector<Demonstration> demos;
  int action_dim = 0;
  int obs_dim = 0;
  int history_len = 0;
  double t_pred_seconds = 0.0;

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// Receding-horizon execution parameters. Times are in seconds; dt is the
/// normalized flow-time step.
struct ChunkParams {
  double t_pred = 0.0;
  double t_chunk = 0.0;
  double dt = 0.0;

  void validate() const;
  // (t_chunk / t_pred) / dt, required to be integral within 1e-9.
  int steps_per_chunk() const;
};

void dataset_save(const Dataset& ds, const std::string& path);
Dataset dataset_load(const std::string& path);

}  // namespace sfp
