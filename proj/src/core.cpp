#include "sfp/core.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sfp {

using nlohmann::json;

namespace {

void require_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

void require_time_in_unit(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("time " + std::to_string(t) +
                            " outside [0, 1]");
  }
}

}  // namespace

Trajectory::Trajectory(std::vector<Vec> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw std::invalid_argument("trajectory needs at least 2 waypoints");
  }
  dim_ = static_cast<int>(waypoints_.front().size());
  if (dim_ == 0) throw std::invalid_argument("trajectory dimension is 0");
  for (const Vec& w : waypoints_) {
    if (static_cast<int>(w.size()) != dim_) {
      throw std::invalid_argument("trajectory waypoint dimension mismatch");
    }
    require_finite(w, "trajectory waypoint");
  }
}

Vec Trajectory::value(double t) const {
  require_time_in_unit(t);
  const int segments = size() - 1;
  const double u = t * segments;
  int m = static_cast<int>(std::floor(u));
  if (m >= segments) m = segments - 1;
  const double frac = u - m;
  const Vec& a = waypoints_[m];
  const Vec& b = waypoints_[m + 1];
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = a[i] + frac * (b[i] - a[i]);
  return out;
}

Vec Trajectory::derivative(double t) const {
  require_time_in_unit(t);
  const int segments = size() - 1;
  const double u = t * segments;
  const double nearest = std::round(u);
  Vec out(dim_);
  if (std::abs(u - nearest) < 1e-9) {
    const int m = static_cast<int>(nearest);
    const int lo = m == 0 ? 0 : m - 1;
    const int hi = m == segments ? segments : m + 1;
    const double span = static_cast<double>(hi - lo) / segments;
    for (int i = 0; i < dim_; ++i) {
      out[i] = (waypoints_[hi][i] - waypoints_[lo][i]) / span;
    }
  } else {
    const int m = static_cast<int>(std::floor(u));
    for (int i = 0; i < dim_; ++i) {
      out[i] = (waypoints_[m + 1][i] - waypoints_[m][i]) * segments;
    }
  }
  return out;
}

ObservationHistory::ObservationHistory(std::vector<Vec> observations,
                                       int history_len) {
  if (history_len < 1) throw std::invalid_argument("history_len must be >= 1");
  if (observations.empty()) {
    throw std::invalid_argument("history needs at least one observation");
  }
  obs_dim_ = static_cast<int>(observations.front().size());
  for (const Vec& o : observations) {
    if (static_cast<int>(o.size()) != obs_dim_) {
      throw std::invalid_argument("observation dimension mismatch");
    }
    require_finite(o, "observation");
  }
  // Pad by repeating the earliest observation; keep the most recent K.
  const int n = static_cast<int>(observations.size());
  observations_.reserve(history_len);
  for (int i = 0; i < history_len; ++i) {
    const int src = std::max(0, n - history_len + i);
    observations_.push_back(observations[src]);
  }
  flat_.reserve(static_cast<std::size_t>(history_len) * obs_dim_);
  for (const Vec& o : observations_) {
    flat_.insert(flat_.end(), o.begin(), o.end());
  }
}

void Dataset::validate() const {
  if (demos.empty()) throw std::invalid_argument("dataset: demos is empty");
  if (action_dim < 1) throw std::invalid_argument("dataset: action_dim < 1");
  if (obs_dim < 1) throw std::invalid_argument("dataset: obs_dim < 1");
  if (history_len < 1) throw std::invalid_argument("dataset: history_len < 1");
  if (!(t_pred_seconds > 0.0)) {
    throw std::invalid_argument("dataset: t_pred_seconds must be positive");
  }
  for (std::size_t i = 0; i < demos.size(); ++i) {
    const Demonstration& d = demos[i];
    if (d.trajectory.dim() != action_dim) {
      throw std::invalid_argument("dataset: demo " + std::to_string(i) +
                                  " action_dim mismatch");
    }
    if (d.history.obs_dim() != obs_dim ||
        d.history.history_len() != history_len) {
      throw std::invalid_argument("dataset: demo " + std::to_string(i) +
                                  " history shape mismatch");
    }
  }
}

void ChunkParams::validate() const {
  if (!(t_pred > 0.0)) throw std::invalid_argument("chunk: t_pred must be > 0");
  if (!(t_chunk > 0.0 && t_chunk <= t_pred)) {
    throw std::invalid_argument("chunk: need 0 < t_chunk <= t_pred");
  }
  if (!(dt > 0.0 && dt <= 1.0)) {
    throw std::invalid_argument("chunk: need 0 < dt <= 1");
  }
  const double steps = (t_chunk / t_pred) / dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 || std::round(steps) < 1.0) {
    throw std::invalid_argument(
        "chunk: (t_chunk / t_pred) / dt must be a positive integer");
  }
}

int ChunkParams::steps_per_chunk() const {
  validate();
  return static_cast<int>(std::round((t_chunk / t_pred) / dt));
}

void dataset_save(const Dataset& ds, const std::string& path) {
  ds.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  json header = {{"action_dim", ds.action_dim},
                 {"obs_dim", ds.obs_dim},
                 {"history_len", ds.history_len},
                 {"t_pred_seconds", ds.t_pred_seconds},
                 {"num_demos", ds.demos.size()}};
  out << header.dump() << '\n';
  for (const Demonstration& d : ds.demos) {
    json rec = {{"history", d.history.observations()},
                {"waypoints", d.trajectory.waypoints()}};
    out << rec.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

json parse_line(const std::string& line, int lineno) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                             ": " + e.what());
  }
}

template <typename T>
T get_field(const json& j, const char* field, int lineno) {
  if (!j.contains(field)) {
    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                             ": missing field '" + field + "'");
  }
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                             ": field '" + field + "': " + e.what());
  }
}

}  // namespace

Dataset dataset_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("parse error at line 1: empty file");
  }
  const json header = parse_line(line, 1);
  Dataset ds;
  ds.action_dim = get_field<int>(header, "action_dim", 1);
  ds.obs_dim = get_field<int>(header, "obs_dim", 1);
  ds.history_len = get_field<int>(header, "history_len", 1);
  ds.t_pred_seconds = get_field<double>(header, "t_pred_seconds", 1);
  const auto num_demos = get_field<std::size_t>(header, "num_demos", 1);

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const json rec = parse_line(line, lineno);
    auto history = get_field<std::vector<Vec>>(rec, "history", lineno);
    auto waypoints = get_field<std::vector<Vec>>(rec, "waypoints", lineno);
    Demonstration demo;
    try {
      demo.history = ObservationHistory(std::move(history), ds.history_len);
      demo.trajectory = Trajectory(std::move(waypoints));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                               ": " + e.what());
    }
    if (demo.trajectory.dim() != ds.action_dim) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                               ": field 'waypoints': action_dim mismatch");
    }
    if (demo.history.obs_dim() != ds.obs_dim) {
      throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                               ": field 'history': obs_dim mismatch");
    }
    ds.demos.push_back(std::move(demo));
  }
  if (ds.demos.size() != num_demos) {
    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                             ": field 'num_demos': header says " +
                             std::to_string(num_demos) + ", found " +
                             std::to_string(ds.demos.size()));
  }
  ds.validate();
  return ds;
}

}  // namespace sfp
