#include "pathcast/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pathcast {

namespace {

std::vector<PixelPoint> apply_permutation(const std::vector<PixelPoint>& pts,
                                          const std::vector<std::uint32_t>& order) {
  std::vector<PixelPoint> out(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out[i] = pts[order[i]];
  }
  return out;
}

}  // namespace

KdTree::KdTree(std::vector<PixelPoint> points) : layout_points_(std::move(points)) {
  if (layout_points_.empty()) {
    throw std::invalid_argument("KdTree: point set must be non-empty");
  }
  for (const PixelPoint& p : layout_points_) {
    if (!is_finite(p)) {
      throw std::invalid_argument("KdTree: point coordinates must be finite");
    }
  }
  layout_index_.resize(layout_points_.size());
  std::iota(layout_index_.begin(), layout_index_.end(), 0u);
  build(0, layout_points_.size(), 0, 1);
  // build() permutes only the index array; rearrange the points to match so
  // queries touch memory in layout order.
  layout_points_ = apply_permutation(layout_points_, layout_index_);
}

void KdTree::build(std::size_t lo, std::size_t hi, int axis, std::size_t depth) {
  height_ = std::max(height_, depth);
  if (hi - lo <= 1) {
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  auto first = layout_index_.begin() + static_cast<std::ptrdiff_t>(lo);
  auto nth = layout_index_.begin() + static_cast<std::ptrdiff_t>(mid);
  auto last = layout_index_.begin() + static_cast<std::ptrdiff_t>(hi);
  // Tie-break on the original index: a strict total order keeps the tree
  // deterministic for duplicate coordinates.
  std::nth_element(first, nth, last, [&](std::uint32_t a, std::uint32_t b) {
    const PixelPoint& pa = layout_points_[a];
    const PixelPoint& pb = layout_points_[b];
    const double ca = axis == 0 ? pa.x : pa.y;
    const double cb = axis == 0 ? pb.x : pb.y;
    if (ca != cb) return ca < cb;
    return a < b;
  });
  build(lo, mid, 1 - axis, depth + 1);
  build(mid + 1, hi, 1 - axis, depth + 1);
}

KdTree::NearestResult KdTree::nearest(PixelPoint query) const {
  double best_d2 = std::numeric_limits<double>::infinity();
  std::uint32_t best_index = 0;
  nearest_impl(0, layout_points_.size(), 0, query, best_d2, best_index);
  return {best_index, std::sqrt(best_d2)};
}

void KdTree::nearest_impl(std::size_t lo, std::size_t hi, int axis, PixelPoint query,
                          double& best_d2, std::uint32_t& best_index) const {
  if (lo >= hi) {
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const PixelPoint node = layout_points_[mid];
  const std::uint32_t index = layout_index_[mid];
  const double d2 = squared_distance(query, node);
  if (d2 < best_d2 || (d2 == best_d2 && index < best_index)) {
    best_d2 = d2;
    best_index = index;
  }
  const double diff = axis == 0 ? query.x - node.x : query.y - node.y;
  // Descend the side containing the query first; visit the far side only
  // when the splitting plane is not farther than the best match so far.
  // The comparison stays inclusive so an equally distant lower index on the
  // far side is never pruned away.
  if (diff < 0.0) {
    nearest_impl(lo, mid, 1 - axis, query, best_d2, best_index);
    if (diff * diff <= best_d2) {
      nearest_impl(mid + 1, hi, 1 - axis, query, best_d2, best_index);
    }
  } else {
    nearest_impl(mid + 1, hi, 1 - axis, query, best_d2, best_index);
    if (diff * diff <= best_d2) {
      nearest_impl(lo, mid, 1 - axis, query, best_d2, best_index);
    }
  }
}

std::vector<std::size_t> KdTree::within_radius(PixelPoint query, double radius) const {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("KdTree: radius must be finite and non-negative");
  }
  std::vector<std::size_t> out;
  radius_impl(0, layout_points_.size(), 0, query, radius * radius, radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::radius_impl(std::size_t lo, std::size_t hi, int axis, PixelPoint query,
                         double radius_sq, double radius, std::vector<std::size_t>& out) const {
  if (lo >= hi) {
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const PixelPoint node = layout_points_[mid];
  if (squared_distance(query, node) <= radius_sq) {
    out.push_back(layout_index_[mid]);
  }
  const double diff = axis == 0 ? query.x - node.x : query.y - node.y;
  // Inclusive boundaries on both subtree tests keep points at exactly the
  // radius in the result set.
  if (diff <= radius) {
    radius_impl(lo, mid, 1 - axis, query, radius_sq, radius, out);
  }
  if (-diff <= radius) {
    radius_impl(mid + 1, hi, 1 - axis, query, radius_sq, radius, out);
  }
}

}  // namespace pathcast
