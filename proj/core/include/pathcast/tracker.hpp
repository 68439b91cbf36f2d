#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "pathcast/association.hpp"
#include "pathcast/geometry.hpp"

namespace pathcast {

/// Axis-aligned detection box; x1 < x2 and y1 < y2.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
};

/// Midpoint of a bounding box. Throws std::invalid_argument on an inverted
/// or degenerate box.
PixelPoint centroid_of(const BoundingBox& box);

/// One frame-stamped detection.
struct Detection {
  std::int64_t frame = 0;
  BoundingBox bbox;

  PixelPoint centroid() const { return centroid_of(bbox); }
};

/// All detections of one frame.
struct DetectionFrame {
  std::int64_t frame = 0;
  std::vector<Detection> detections;
};

struct TrackPoint {
  std::int64_t frame = 0;
  PixelPoint position;
};

/// Persistent identity of one tracked vehicle. When an id is recycled a new
/// Track record is opened, so records never mix two physical lifetimes.
struct Track {
  int vehicle_id = 0;
  std::vector<TrackPoint> trajectory;
  std::vector<AssociationSet> history;  // appended by the pipeline stage
  bool active = false;
};

/// Greedy nearest-centroid tracker with id recycling.
///
/// Detections are processed in input order; each one matches the nearest
/// still-unmatched active track when the distance is at most d_trk,
/// otherwise a new track opens under the smallest recycled id (or a fresh
/// one). Tracks that match nothing in a frame are deactivated immediately
/// and their ids become recyclable. Single-owner: one instance per stream.
class Tracker {
 public:
  struct Assignment {
    std::size_t detection = 0;  // position in the step() input
    int vehicle_id = 0;
  };

  explicit Tracker(double d_trk);

  /// Processes one frame. All detections must carry the same frame index,
  /// strictly greater than any frame processed before.
  std::vector<Assignment> step(std::span<const Detection> detections);

  /// Every track record opened so far, in creation order.
  const std::vector<Track>& tracks() const noexcept { return tracks_; }
  std::vector<Track>& tracks() noexcept { return tracks_; }

  /// Record of the currently active track with this vehicle id, or nullptr.
  Track* active_track(int vehicle_id);

  std::size_t active_count() const noexcept { return active_.size(); }

 private:
  struct ActiveEntry {
    int vehicle_id = 0;
    PixelPoint last;
    std::size_t track_index = 0;
    bool matched = false;
  };

  int take_id();

  double d_trk_;
  std::vector<ActiveEntry> active_;
  std::set<int> recycled_;
  std::vector<Track> tracks_;
  int next_fresh_id_ = 0;
  std::int64_t last_frame_ = 0;
  bool seen_frame_ = false;
};

/// Folds step() over an ordered detection stream and returns all tracks.
std::vector<Track> track_stream(std::span<const DetectionFrame> frames, double d_trk);

}  // namespace pathcast
