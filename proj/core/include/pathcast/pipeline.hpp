#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pathcast/association.hpp"
#include "pathcast/collision.hpp"
#include "pathcast/pathmap.hpp"
#include "pathcast/predictor.hpp"
#include "pathcast/simulator.hpp"
#include "pathcast/tracker.hpp"

namespace pathcast {

/// Every tunable of the online pipeline, with library-wide defaults.
struct PipelineConfig {
  double d_path = 15.0;              // path association threshold, px
  double d_trk = 50.0;               // tracking match threshold, px
  double d_collision = 30.0;         // spatial collision threshold, px
  double delta_t = 0.3;              // temporal collision tolerance, s
  double horizon_t = 2.0;            // prediction horizon duration, s
  std::size_t n_future = 40;         // future points per hypothesis
  std::size_t downsample_stride = 5; // history stride in frames (L)
  std::size_t downsample_count = 4;  // retained history samples (K)
  std::size_t n_r = 500;             // resampled points per path map
};

/// Throws std::invalid_argument when any tunable is out of range.
void validate(const PipelineConfig& config);

struct TrackSnapshot {
  int vehicle_id = 0;
  PixelPoint centroid;
  std::vector<PathAssociation> associations;
};

struct PredictionSummary {
  int vehicle = 0;
  std::string path_id;
  double index_velocity = 0.0;
  std::size_t n_points = 0;
  bool low_confidence = false;
  PixelPoint first;  // first and last predicted points
  PixelPoint last;
};

/// Everything the pipeline derived for one frame. processing_ms is the
/// in-memory stage latency (excluding I/O); it is not serialized so report
/// files stay byte-identical across runs.
struct FrameReport {
  std::int64_t frame = 0;
  std::vector<TrackSnapshot> tracks;
  std::vector<PredictionSummary> predictions;
  std::vector<CollisionReport> collisions;
  double processing_ms = 0.0;
};

/// Runs tracking, association, prediction, and collision estimation over an
/// ordered detection stream. Deterministic for fixed inputs and config.
std::vector<FrameReport> run_pipeline(std::span<const DetectionFrame> stream,
                                      const std::map<std::string, PathMap>& maps,
                                      const PipelineConfig& config);

/// One scenario's pipeline output aligned with its ground truth.
struct ScenarioRun {
  std::string scenario_id;
  std::vector<FrameReport> reports;
  std::vector<GroundTruthEvent> events;
  std::vector<TrueState> states;  // needed to match warned pairs by position
  double frame_rate = 20.0;
};

struct EvaluationResult {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  double recall = 0.0;          // TP / (TP + FN) when defined
  double precision = 0.0;       // TP / (TP + FP) when defined
  double mean_lead_time = 0.0;  // seconds, averaged over true positives
};

/// Scores warnings against ground truth. An event counts as predicted when
/// some frame strictly before it reports the pair at or above the warning
/// threshold; a pair's first threshold crossing is latched and defines the
/// lead time. Warned pairs are matched to ground-truth vehicles by position
/// at warning time (nearest true center within 50 px), which tolerates
/// recycled track ids. Warned pairs matching no event count once per pair
/// per scenario as false positives.
EvaluationResult evaluate(std::span<const ScenarioRun> runs, double warn_threshold);

}  // namespace pathcast
