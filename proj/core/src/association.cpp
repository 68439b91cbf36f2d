#include "pathcast/association.hpp"

#include <stdexcept>

namespace pathcast {

std::vector<PathAssociation> associate(const std::map<std::string, PathMap>& maps, PixelPoint c,
                                       double d_path) {
  if (!(d_path >= 0.0)) {
    throw std::invalid_argument("associate: d_path must be non-negative");
  }
  std::vector<PathAssociation> entries;
  for (const auto& [path_id, map] : maps) {
    const KdTree::NearestResult hit = map.index().nearest(c);
    if (hit.distance <= d_path) {
      entries.push_back({path_id, hit.index, hit.distance});
    }
  }
  return entries;
}

}  // namespace pathcast
