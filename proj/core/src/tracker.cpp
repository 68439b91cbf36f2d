#include "pathcast/tracker.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pathcast {

PixelPoint centroid_of(const BoundingBox& box) {
  if (!(box.x1 < box.x2) || !(box.y1 < box.y2)) {
    throw std::invalid_argument("centroid_of: bounding box must satisfy x1<x2 and y1<y2");
  }
  return {(box.x1 + box.x2) / 2.0, (box.y1 + box.y2) / 2.0};
}

Tracker::Tracker(double d_trk) : d_trk_(d_trk) {
  if (!(d_trk > 0.0)) {
    throw std::invalid_argument("Tracker: d_trk must be positive");
  }
}

int Tracker::take_id() {
  if (!recycled_.empty()) {
    const int id = *recycled_.begin();
    recycled_.erase(recycled_.begin());
    return id;
  }
  return next_fresh_id_++;
}

Track* Tracker::active_track(int vehicle_id) {
  for (const ActiveEntry& entry : active_) {
    if (entry.vehicle_id == vehicle_id) {
      return &tracks_[entry.track_index];
    }
  }
  return nullptr;
}

std::vector<Tracker::Assignment> Tracker::step(std::span<const Detection> detections) {
  std::int64_t frame = 0;
  if (!detections.empty()) {
    frame = detections.front().frame;
    for (const Detection& d : detections) {
      if (d.frame != frame) {
        throw std::invalid_argument("Tracker::step: detections must share one frame index");
      }
    }
    if (seen_frame_ && frame <= last_frame_) {
      throw std::invalid_argument("Tracker::step: frame indices must be strictly increasing");
    }
  }

  for (ActiveEntry& entry : active_) {
    entry.matched = false;
  }
  const std::size_t carried = active_.size();  // entries created this frame stay matched

  std::vector<Assignment> assignments;
  assignments.reserve(detections.size());
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const PixelPoint c = detections[i].centroid();

    std::size_t best = carried;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < carried; ++k) {
      if (active_[k].matched) {
        continue;
      }
      const double d2 = squared_distance(c, active_[k].last);
      // Equal distances resolve to the lowest vehicle id.
      if (d2 < best_d2 ||
          (d2 == best_d2 && best < carried && active_[k].vehicle_id < active_[best].vehicle_id)) {
        best_d2 = d2;
        best = k;
      }
    }

    if (best < carried && best_d2 <= d_trk_ * d_trk_) {
      ActiveEntry& entry = active_[best];
      entry.matched = true;
      entry.last = c;
      tracks_[entry.track_index].trajectory.push_back({frame, c});
      assignments.push_back({i, entry.vehicle_id});
    } else {
      const int id = take_id();
      Track track;
      track.vehicle_id = id;
      track.trajectory.push_back({frame, c});
      track.active = true;
      tracks_.push_back(std::move(track));
      active_.push_back({id, c, tracks_.size() - 1, true});
      assignments.push_back({i, id});
    }
  }

  // Deactivate tracks that matched nothing this frame and recycle their ids.
  std::vector<ActiveEntry> still_active;
  still_active.reserve(active_.size());
  for (const ActiveEntry& entry : active_) {
    if (entry.matched) {
      still_active.push_back(entry);
    } else {
      tracks_[entry.track_index].active = false;
      recycled_.insert(entry.vehicle_id);
    }
  }
  active_ = std::move(still_active);

  if (!detections.empty()) {
    last_frame_ = frame;
    seen_frame_ = true;
  }
  return assignments;
}

std::vector<Track> track_stream(std::span<const DetectionFrame> frames, double d_trk) {
  Tracker tracker(d_trk);
  for (const DetectionFrame& frame : frames) {
    tracker.step(frame.detections);
  }
  return tracker.tracks();
}

}  // namespace pathcast
