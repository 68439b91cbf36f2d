#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pathcast/geometry.hpp"
#include "pathcast/pathmap.hpp"

namespace pathcast {

/// Nearest point of one path to a vehicle centroid, retained only when the
/// distance is within the association threshold.
struct PathAssociation {
  std::string path_id;
  std::size_t index = 0;   // position in the path's point array
  double distance = 0.0;   // pixels; always <= the d_path used to produce it

  friend bool operator==(const PathAssociation&, const PathAssociation&) = default;
};

/// All path associations of one vehicle at one frame. Entries are sorted by
/// path id with at most one entry per path.
struct AssociationSet {
  std::int64_t frame = 0;
  int vehicle = 0;
  std::vector<PathAssociation> entries;
};

/// Queries every path's spatial index with the centroid `c` and keeps the
/// (path, nearest index, distance) tuples whose distance is at most `d_path`
/// (boundary inclusive). An empty result means the vehicle is off all paths.
/// Pure function; entries come back sorted by path id.
std::vector<PathAssociation> associate(const std::map<std::string, PathMap>& maps, PixelPoint c,
                                       double d_path);

}  // namespace pathcast
