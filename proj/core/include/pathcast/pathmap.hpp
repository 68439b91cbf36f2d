#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathcast/geometry.hpp"
#include "pathcast/kdtree.hpp"

namespace pathcast {

/// Time-ordered centroid log of one vehicle traversing one route in one
/// recording scenario.
struct TraversalLog {
  std::string path_id;
  std::string scenario_id;
  std::vector<PixelPoint> centroids;
};

/// Ordered fixed-resolution polyline for one route plus its spatial index.
/// Immutable after construction; copies share the index.
class PathMap {
 public:
  /// Throws std::invalid_argument on an empty point list or non-finite
  /// coordinates.
  PathMap(std::string path_id, std::vector<PixelPoint> points);

  const std::string& id() const noexcept { return id_; }
  const std::vector<PixelPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const KdTree& index() const noexcept { return *index_; }

 private:
  std::string id_;
  std::vector<PixelPoint> points_;
  std::shared_ptr<const KdTree> index_;
};

/// Total chord length of a polyline.
double polyline_length(std::span<const PixelPoint> points);

/// Point at arc-length position `s` along the polyline, clamped to the ends.
PixelPoint point_at_arc_length(std::span<const PixelPoint> points, double s);

/// Resamples a polyline to exactly `n` points at equal arc-length intervals.
/// The first and last input points are preserved exactly. Throws
/// std::invalid_argument when the input has fewer than two points, zero total
/// arc length, or n < 2.
std::vector<PixelPoint> resample_polyline(std::span<const PixelPoint> points, std::size_t n);

/// Builds the route representation from one or more traversal logs sharing a
/// path id: each log is resampled to `n_r` points and the results averaged
/// pointwise. Throws std::invalid_argument on an empty log set, mixed path
/// ids, or any degenerate log.
PathMap build_path_map(std::span<const TraversalLog> logs, std::size_t n_r);

/// Writes the map as a CSV path file (`x,y` header, one point per row).
/// Values use shortest round-trip formatting, so reading the file back
/// reproduces the map exactly. Throws std::runtime_error on I/O failure.
void write_path_file(const PathMap& map, const std::filesystem::path& destination);

/// Reads a CSV path file. Returns std::nullopt when the file holds no data
/// rows (the caller excludes such paths). Throws ParseError on a malformed
/// row and std::runtime_error when the file cannot be opened. The path id is
/// the filename stem.
std::optional<PathMap> read_path_file(const std::filesystem::path& source);

/// Reads every `*.csv` path file in a directory, skipping empty paths.
std::map<std::string, PathMap> load_path_directory(const std::filesystem::path& directory);

}  // namespace pathcast
