#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pathcast/geometry.hpp"

namespace pathcast {

/// Immutable 2-D k-d tree over an array of points.
///
/// The tree is built once by recursive median split on alternating axes, so
/// its height is floor(log2(N)) + 1 and queries run in O(log N) on average.
/// Queries return indices into the point array given at construction.
/// Distance ties always resolve to the lowest index, and the radius boundary
/// is inclusive; both predicates are evaluated on squared distances in double
/// precision, which makes results bit-for-bit reproducible against a linear
/// scan using the same rule. A finished tree may be queried concurrently from
/// any number of threads.
class KdTree {
 public:
  struct NearestResult {
    std::size_t index;
    double distance;
  };

  /// Builds the tree. Throws std::invalid_argument on an empty set or
  /// non-finite coordinates. Duplicate points are permitted.
  explicit KdTree(std::vector<PixelPoint> points);

  std::size_t size() const noexcept { return layout_points_.size(); }

  /// Index and exact Euclidean distance of the point closest to `query`.
  NearestResult nearest(PixelPoint query) const;

  /// Ascending indices of all points within `radius` of `query`, boundary
  /// inclusive. Throws std::invalid_argument on a negative or non-finite
  /// radius.
  std::vector<std::size_t> within_radius(PixelPoint query, double radius) const;

  /// Number of levels, counting a single node as height 1.
  std::size_t height() const noexcept { return height_; }

  /// Original point indices in tree layout order (node of any subtree sits
  /// at the midpoint of its range). Exposed for structural audits.
  const std::vector<std::uint32_t>& layout_indices() const noexcept { return layout_index_; }

 private:
  void build(std::size_t lo, std::size_t hi, int axis, std::size_t depth);
  void nearest_impl(std::size_t lo, std::size_t hi, int axis, PixelPoint query,
                    double& best_d2, std::uint32_t& best_index) const;
  void radius_impl(std::size_t lo, std::size_t hi, int axis, PixelPoint query,
                   double radius_sq, double radius, std::vector<std::size_t>& out) const;

  std::vector<PixelPoint> layout_points_;     // points rearranged into tree layout
  std::vector<std::uint32_t> layout_index_;   // layout position -> original index
  std::size_t height_ = 0;
};

}  // namespace pathcast
