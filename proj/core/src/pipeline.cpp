#include "pathcast/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace pathcast {

void validate(const PipelineConfig& config) {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(config.d_path) || !positive(config.d_trk) || !positive(config.d_collision) ||
      !positive(config.delta_t) || !positive(config.horizon_t)) {
    throw std::invalid_argument("PipelineConfig: thresholds must be positive and finite");
  }
  if (config.n_future < 1) {
    throw std::invalid_argument("PipelineConfig: n_future must be >= 1");
  }
  if (config.downsample_stride < 1) {
    throw std::invalid_argument("PipelineConfig: downsample_stride must be >= 1");
  }
  if (config.downsample_count < 2) {
    throw std::invalid_argument("PipelineConfig: downsample_count must be >= 2");
  }
  if (config.n_r < 2) {
    throw std::invalid_argument("PipelineConfig: n_r must be >= 2");
  }
}

std::vector<FrameReport> run_pipeline(std::span<const DetectionFrame> stream,
                                      const std::map<std::string, PathMap>& maps,
                                      const PipelineConfig& config) {
  validate(config);
  Tracker tracker(config.d_trk);
  std::vector<FrameReport> reports;
  reports.reserve(stream.size());

  for (const DetectionFrame& frame : stream) {
    const auto started = std::chrono::steady_clock::now();
    FrameReport report;
    report.frame = frame.frame;

    const std::vector<Tracker::Assignment> assignments = tracker.step(frame.detections);

    std::map<int, std::vector<PredictedTrajectory>> predictions;
    for (const Tracker::Assignment& assignment : assignments) {
      const PixelPoint centroid = frame.detections[assignment.detection].centroid();
      AssociationSet set;
      set.frame = frame.frame;
      set.vehicle = assignment.vehicle_id;
      set.entries = associate(maps, centroid, config.d_path);

      Track* track = tracker.active_track(assignment.vehicle_id);
      track->history.push_back(set);
      report.tracks.push_back({assignment.vehicle_id, centroid, set.entries});

      const DownsampledHistory h =
          downsample_history(track->history, config.downsample_stride, config.downsample_count);
      if (h.entries.size() < 2) {
        continue;
      }
      std::vector<PredictedTrajectory> trajectories =
          estimate_future(h, maps, config.n_future);
      if (trajectories.empty()) {
        continue;
      }
      for (const PredictedTrajectory& t : trajectories) {
        report.predictions.push_back({t.vehicle, t.path_id, t.index_velocity, t.points.size(),
                                      t.low_confidence, t.points.front(), t.points.back()});
      }
      predictions.emplace(assignment.vehicle_id, std::move(trajectories));
    }

    report.collisions =
        collision_summary(predictions, config.d_collision, config.delta_t, config.horizon_t);

    report.processing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

constexpr double kTruthMatchRadius = 50.0;  // px; track-to-true-vehicle matching

struct LatchedWarning {
  std::int64_t frame = 0;
  PixelPoint centroid1;
  PixelPoint centroid2;
};

// Nearest true vehicle to `p` at a frame, or -1 when none lies within the
// match radius.
int match_true_vehicle(const std::vector<TrueState>& states, std::int64_t frame, PixelPoint p) {
  int best = -1;
  double best_d = kTruthMatchRadius;
  for (const TrueState& s : states) {
    if (s.frame != frame) {
      continue;
    }
    const double d = distance(s.center, p);
    if (d <= best_d) {
      best_d = d;
      best = s.vehicle;
    }
  }
  return best;
}

}  // namespace

EvaluationResult evaluate(std::span<const ScenarioRun> runs, double warn_threshold) {
  EvaluationResult result;
  double lead_sum = 0.0;

  for (const ScenarioRun& run : runs) {
    // First threshold crossing per tracker pair.
    std::map<std::pair<int, int>, LatchedWarning> latched;
    for (const FrameReport& report : run.reports) {
      for (const CollisionReport& c : report.collisions) {
        if (c.probability < warn_threshold) {
          continue;
        }
        const std::pair<int, int> key{c.vehicle1, c.vehicle2};
        if (latched.count(key) != 0) {
          continue;
        }
        LatchedWarning warning;
        warning.frame = report.frame;
        for (const TrackSnapshot& t : report.tracks) {
          if (t.vehicle_id == c.vehicle1) warning.centroid1 = t.centroid;
          if (t.vehicle_id == c.vehicle2) warning.centroid2 = t.centroid;
        }
        latched.emplace(key, warning);
      }
    }

    std::map<std::pair<int, int>, std::int64_t> events_by_pair;
    for (const GroundTruthEvent& e : run.events) {
      events_by_pair.emplace(std::pair<int, int>{e.vehicle_a, e.vehicle_b}, e.frame);
    }

    // Resolve each warned tracker pair to a true vehicle pair by position.
    std::map<std::pair<int, int>, std::int64_t> earliest_warn;  // true pair -> frame
    std::set<std::pair<int, int>> false_pairs;                  // mapped pairs without events
    int unmatched_warnings = 0;
    for (const auto& [key, warning] : latched) {
      const int a = match_true_vehicle(run.states, warning.frame, warning.centroid1);
      const int b = match_true_vehicle(run.states, warning.frame, warning.centroid2);
      if (a < 0 || b < 0 || a == b) {
        ++unmatched_warnings;
        continue;
      }
      const std::pair<int, int> true_pair{std::min(a, b), std::max(a, b)};
      if (events_by_pair.count(true_pair) != 0) {
        auto [it, inserted] = earliest_warn.emplace(true_pair, warning.frame);
        if (!inserted) {
          it->second = std::min(it->second, warning.frame);
        }
      } else {
        false_pairs.insert(true_pair);
      }
    }

    for (const auto& [pair, event_frame] : events_by_pair) {
      const auto warn = earliest_warn.find(pair);
      if (warn != earliest_warn.end() && warn->second < event_frame) {
        ++result.true_positives;
        lead_sum += static_cast<double>(event_frame - warn->second) / run.frame_rate;
      } else {
        ++result.false_negatives;
      }
    }
    result.false_positives += static_cast<int>(false_pairs.size()) + unmatched_warnings;
  }

  if (result.true_positives + result.false_negatives > 0) {
    result.recall = static_cast<double>(result.true_positives) /
                    static_cast<double>(result.true_positives + result.false_negatives);
  }
  if (result.true_positives + result.false_positives > 0) {
    result.precision = static_cast<double>(result.true_positives) /
                       static_cast<double>(result.true_positives + result.false_positives);
  }
  if (result.true_positives > 0) {
    result.mean_lead_time = lead_sum / static_cast<double>(result.true_positives);
  }
  return result;
}

}  // namespace pathcast
