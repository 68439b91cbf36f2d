#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pathcast/association.hpp"
#include "pathcast/pathmap.hpp"

namespace pathcast {

/// Association history thinned to every `stride`-th record, newest first.
struct DownsampledHistory {
  int vehicle = 0;
  std::vector<AssociationSet> entries;  // entry 0 is the most recent
};

/// Keeps every `stride`-th record walking backward from the newest entry
/// until `count` records are collected or the history runs out. Short
/// histories simply yield fewer entries.
DownsampledHistory downsample_history(std::span<const AssociationSet> history, std::size_t stride,
                                      std::size_t count);

/// Path ids present in every retained entry, sorted. Only persistently
/// associated paths survive the intersection.
std::vector<std::string> consistent_paths(const DownsampledHistory& h);

/// Future positions of one vehicle along one candidate path, obtained by
/// extrapolating the path index at the estimated index-space velocity.
struct PredictedTrajectory {
  int vehicle = 0;
  std::string path_id;
  std::vector<PixelPoint> points;     // horizon count when prediction succeeds
  double index_velocity = 0.0;        // path indices per retained history step
  bool low_confidence = false;        // set when the intersection fallback applied
};

/// Predicts `n` future points per consistent path: index deltas between
/// consecutive retained entries (newer minus older) average into the
/// index-space velocity, future fractional indices extrapolate from the
/// newest index, and each index maps to a point by linear interpolation on
/// the path (or linear extension past either end at the path's mean point
/// spacing).
///
/// When the consistent set is empty the newest entry's paths are used alone
/// and the result is flagged low-confidence. Fewer than two retained entries
/// yield an empty result (prediction declines). Pure; one trajectory per
/// path, sorted by path id.
std::vector<PredictedTrajectory> estimate_future(const DownsampledHistory& h,
                                                 const std::map<std::string, PathMap>& maps,
                                                 std::size_t n);

}  // namespace pathcast
