#include "pathcast/simulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pathcast {

double DeterministicRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

void validate_config(const ScenarioConfig& config, const std::map<std::string, PathMap>& maps) {
  if (!(config.duration > 0.0)) {
    throw std::invalid_argument("scenario: duration must be positive");
  }
  if (!(config.frame_rate > 0.0)) {
    throw std::invalid_argument("scenario: frame_rate must be positive");
  }
  if (!(config.dropout_prob >= 0.0 && config.dropout_prob < 1.0)) {
    throw std::invalid_argument("scenario: dropout_prob must lie in [0, 1)");
  }
  if (!(config.noise_sigma >= 0.0)) {
    throw std::invalid_argument("scenario: noise_sigma must be non-negative");
  }
  for (const VehicleSpec& v : config.vehicles) {
    if (maps.find(v.path_id) == maps.end()) {
      throw std::invalid_argument("scenario: unknown path '" + v.path_id + "'");
    }
    if (!(v.speed >= 0.0)) {
      throw std::invalid_argument("scenario: vehicle speed must be non-negative");
    }
    if (v.spawn_frame < 0) {
      throw std::invalid_argument("scenario: spawn_frame must be non-negative");
    }
  }
}

}  // namespace

ScenarioResult generate_scenario(const ScenarioConfig& config,
                                 const std::map<std::string, PathMap>& maps) {
  validate_config(config, maps);

  std::vector<const PathMap*> paths;
  std::vector<double> path_lengths;
  paths.reserve(config.vehicles.size());
  for (const VehicleSpec& v : config.vehicles) {
    const PathMap& map = maps.at(v.path_id);
    paths.push_back(&map);
    path_lengths.push_back(polyline_length(map.points()));
  }

  const auto n_frames =
      std::max<std::int64_t>(1, std::llround(config.duration * config.frame_rate));
  DeterministicRng rng(config.seed);

  ScenarioResult result;
  result.frames.reserve(static_cast<std::size_t>(n_frames));
  std::vector<bool> pair_reported(config.vehicles.size() * config.vehicles.size(), false);

  for (std::int64_t frame = 0; frame < n_frames; ++frame) {
    // True (noiseless) centers of the vehicles active this frame.
    std::vector<int> active;
    std::vector<PixelPoint> centers;
    for (std::size_t i = 0; i < config.vehicles.size(); ++i) {
      const VehicleSpec& v = config.vehicles[i];
      if (frame < v.spawn_frame) {
        continue;
      }
      const double s =
          v.speed * static_cast<double>(frame - v.spawn_frame) / config.frame_rate;
      if (s > path_lengths[i]) {
        continue;  // despawned at route completion
      }
      const PixelPoint center = point_at_arc_length(paths[i]->points(), s);
      active.push_back(static_cast<int>(i));
      centers.push_back(center);
      result.states.push_back({frame, static_cast<int>(i), center});
    }

    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const std::size_t key = static_cast<std::size_t>(active[a]) * config.vehicles.size() +
                                static_cast<std::size_t>(active[b]);
        if (pair_reported[key]) {
          continue;
        }
        if (distance(centers[a], centers[b]) <= config.collision_distance) {
          pair_reported[key] = true;
          result.events.push_back(
              {active[a], active[b], frame, lerp(centers[a], centers[b], 0.5)});
        }
      }
    }

    DetectionFrame detections;
    detections.frame = frame;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const VehicleSpec& v = config.vehicles[static_cast<std::size_t>(active[k])];
      PixelPoint center = centers[k];
      if (config.noise_sigma > 0.0) {
        center.x += config.noise_sigma * rng.gaussian();
        center.y += config.noise_sigma * rng.gaussian();
      }
      if (config.dropout_prob > 0.0 && rng.uniform() < config.dropout_prob) {
        continue;
      }
      detections.detections.push_back(
          {frame, {center.x - v.length / 2.0, center.y - v.width / 2.0,
                   center.x + v.length / 2.0, center.y + v.width / 2.0}});
    }
    if (config.false_positive_rate > 0.0 && rng.uniform() < config.false_positive_rate) {
      const double x = rng.uniform() * config.frame_size;
      const double y = rng.uniform() * config.frame_size;
      detections.detections.push_back({frame, {x - 15.0, y - 7.5, x + 15.0, y + 7.5}});
    }
    result.frames.push_back(std::move(detections));
  }
  return result;
}

TraversalLog record_traversal(const std::string& path_id, const ScenarioConfig& config,
                              const std::map<std::string, PathMap>& maps) {
  if (config.vehicles.size() != 1 || config.vehicles.front().path_id != path_id) {
    throw std::invalid_argument(
        "record_traversal: config must hold exactly one vehicle on the recorded path");
  }
  ScenarioConfig run = config;
  const VehicleSpec& v = run.vehicles.front();
  if (v.speed > 0.0) {
    const double route_length = polyline_length(maps.at(path_id).points());
    const double needed = (static_cast<double>(v.spawn_frame) / run.frame_rate) +
                          route_length / v.speed + 2.0 / run.frame_rate;
    run.duration = std::max(run.duration, needed);
  }

  const ScenarioResult result = generate_scenario(run, maps);
  TraversalLog log;
  log.path_id = path_id;
  log.scenario_id = "seed-" + std::to_string(run.seed);
  for (const DetectionFrame& frame : result.frames) {
    for (const Detection& d : frame.detections) {
      log.centroids.push_back(d.centroid());
    }
  }
  if (log.centroids.empty()) {
    throw std::runtime_error("record_traversal: traversal produced no detections");
  }
  return log;
}

}  // namespace pathcast
