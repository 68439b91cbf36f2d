#include "pathcast/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace pathcast {

DownsampledHistory downsample_history(std::span<const AssociationSet> history, std::size_t stride,
                                      std::size_t count) {
  if (stride < 1) {
    throw std::invalid_argument("downsample_history: stride must be >= 1");
  }
  DownsampledHistory out;
  if (history.empty() || count == 0) {
    return out;
  }
  out.vehicle = history.back().vehicle;
  out.entries.reserve(std::min(count, history.size()));
  std::size_t pos = history.size();
  while (pos > 0 && out.entries.size() < count) {
    --pos;  // newest remaining entry
    out.entries.push_back(history[pos]);
    if (pos < stride) {
      break;
    }
    pos -= stride - 1;
  }
  return out;
}

std::vector<std::string> consistent_paths(const DownsampledHistory& h) {
  std::vector<std::string> result;
  if (h.entries.empty()) {
    return result;
  }
  for (const PathAssociation& a : h.entries.front().entries) {
    result.push_back(a.path_id);
  }
  std::sort(result.begin(), result.end());
  for (std::size_t k = 1; k < h.entries.size(); ++k) {
    std::vector<std::string> keep;
    for (const std::string& p : result) {
      const auto& entries = h.entries[k].entries;
      const bool present = std::any_of(entries.begin(), entries.end(),
                                       [&](const PathAssociation& a) { return a.path_id == p; });
      if (present) {
        keep.push_back(p);
      }
    }
    result = std::move(keep);
    if (result.empty()) {
      break;
    }
  }
  return result;
}

namespace {

std::optional<double> index_on_path(const AssociationSet& entry, const std::string& path_id) {
  for (const PathAssociation& a : entry.entries) {
    if (a.path_id == path_id) {
      return static_cast<double>(a.index);
    }
  }
  return std::nullopt;
}

// Point at a fractional index: linear interpolation inside [0, N-1], linear
// extension along the terminal segment direction at the mean point spacing
// beyond either end.
PixelPoint sample_at_index(const PathMap& map, double index) {
  const std::vector<PixelPoint>& pts = map.points();
  const std::size_t n = pts.size();
  if (n == 1) {
    return pts.front();
  }
  const double last = static_cast<double>(n - 1);
  if (index >= 0.0 && index <= last) {
    const std::size_t k = static_cast<std::size_t>(index);
    if (k >= n - 1) {
      return pts.back();
    }
    return lerp(pts[k], pts[k + 1], index - static_cast<double>(k));
  }

  const double mean_spacing = polyline_length(pts) / last;
  if (index > last) {
    // Walk back over any zero-length trailing segments to find a direction.
    std::size_t tail = n - 1;
    while (tail > 0 && distance(pts[tail - 1], pts[tail]) == 0.0) {
      --tail;
    }
    if (tail == 0) {
      return pts.back();
    }
    const double seg = distance(pts[tail - 1], pts[tail]);
    const PixelPoint dir = (pts[tail] - pts[tail - 1]) * (1.0 / seg);
    return pts.back() + dir * (mean_spacing * (index - last));
  }
  std::size_t head = 0;
  while (head + 1 < n && distance(pts[head], pts[head + 1]) == 0.0) {
    ++head;
  }
  if (head + 1 >= n) {
    return pts.front();
  }
  const double seg = distance(pts[head], pts[head + 1]);
  const PixelPoint dir = (pts[head + 1] - pts[head]) * (1.0 / seg);
  return pts.front() + dir * (mean_spacing * index);  // index < 0 walks backward
}

}  // namespace

std::vector<PredictedTrajectory> estimate_future(const DownsampledHistory& h,
                                                 const std::map<std::string, PathMap>& maps,
                                                 std::size_t n) {
  if (n < 1) {
    throw std::invalid_argument("estimate_future: horizon count must be >= 1");
  }
  std::vector<PredictedTrajectory> result;
  if (h.entries.size() < 2) {
    return result;  // prediction declines without at least two observations
  }

  std::vector<std::string> paths = consistent_paths(h);
  bool low_confidence = false;
  if (paths.empty()) {
    // Degrade to the newest entry's associations alone rather than dropping
    // the vehicle; junction handoffs routinely empty the intersection.
    for (const PathAssociation& a : h.entries.front().entries) {
      paths.push_back(a.path_id);
    }
    std::sort(paths.begin(), paths.end());
    low_confidence = true;
  }

  for (const std::string& path_id : paths) {
    const auto map_it = maps.find(path_id);
    if (map_it == maps.end()) {
      throw std::invalid_argument("estimate_future: unknown path '" + path_id + "'");
    }
    const PathMap& map = map_it->second;

    // Index deltas between retained steps, newer minus older. In the
    // fallback a path may be missing from some entries; deltas then span
    // wider gaps and are normalized per retained step.
    double delta_sum = 0.0;
    std::size_t delta_count = 0;
    std::optional<double> newer_index;
    std::size_t newer_pos = 0;
    for (std::size_t k = 0; k < h.entries.size(); ++k) {
      const std::optional<double> idx = index_on_path(h.entries[k], path_id);
      if (!idx) {
        continue;
      }
      if (newer_index) {
        const double gap = static_cast<double>(k - newer_pos);
        delta_sum += (*newer_index - *idx) / gap;
        ++delta_count;
      }
      newer_index = idx;
      newer_pos = k;
    }
    const double velocity = delta_count > 0 ? delta_sum / static_cast<double>(delta_count) : 0.0;
    const double last_index = *index_on_path(h.entries.front(), path_id);

    PredictedTrajectory trajectory;
    trajectory.vehicle = h.vehicle;
    trajectory.path_id = path_id;
    trajectory.index_velocity = velocity;
    trajectory.low_confidence = low_confidence;
    trajectory.points.reserve(n);
    for (std::size_t step = 1; step <= n; ++step) {
      const double index = last_index + static_cast<double>(step) * velocity;
      trajectory.points.push_back(sample_at_index(map, index));
    }
    result.push_back(std::move(trajectory));
  }
  return result;
}

}  // namespace pathcast
