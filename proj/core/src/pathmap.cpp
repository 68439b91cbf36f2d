#include "pathcast/pathmap.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "pathcast/errors.hpp"

namespace pathcast {

PathMap::PathMap(std::string path_id, std::vector<PixelPoint> points)
    : id_(std::move(path_id)), points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("PathMap '" + id_ + "': point list must be non-empty");
  }
  for (const PixelPoint& p : points_) {
    if (!is_finite(p)) {
      throw std::invalid_argument("PathMap '" + id_ + "': coordinates must be finite");
    }
  }
  index_ = std::make_shared<const KdTree>(points_);
}

double polyline_length(std::span<const PixelPoint> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += distance(points[i - 1], points[i]);
  }
  return total;
}

PixelPoint point_at_arc_length(std::span<const PixelPoint> points, double s) {
  if (points.empty()) {
    throw std::invalid_argument("point_at_arc_length: empty polyline");
  }
  if (s <= 0.0) {
    return points.front();
  }
  double walked = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double seg = distance(points[i - 1], points[i]);
    if (walked + seg >= s && seg > 0.0) {
      return lerp(points[i - 1], points[i], (s - walked) / seg);
    }
    walked += seg;
  }
  return points.back();
}

std::vector<PixelPoint> resample_polyline(std::span<const PixelPoint> points, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("resample_polyline: target count must be >= 2");
  }
  if (points.size() < 2) {
    throw std::invalid_argument("resample_polyline: polyline needs at least 2 points");
  }
  std::vector<double> cumulative(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + distance(points[i - 1], points[i]);
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    throw std::invalid_argument("resample_polyline: polyline has zero arc length");
  }

  std::vector<PixelPoint> out;
  out.reserve(n);
  out.push_back(points.front());
  std::size_t seg = 0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double target = total * static_cast<double>(j) / static_cast<double>(n - 1);
    while (seg + 2 < points.size() && cumulative[seg + 1] < target) {
      ++seg;
    }
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    if (seg_len > 0.0) {
      out.push_back(lerp(points[seg], points[seg + 1], (target - cumulative[seg]) / seg_len));
    } else {
      out.push_back(points[seg]);
    }
  }
  out.push_back(points.back());
  return out;
}

PathMap build_path_map(std::span<const TraversalLog> logs, std::size_t n_r) {
  if (logs.empty()) {
    throw std::invalid_argument("build_path_map: log set must be non-empty");
  }
  const std::string& path_id = logs.front().path_id;
  for (const TraversalLog& log : logs) {
    if (log.path_id != path_id) {
      throw std::invalid_argument("build_path_map: mixed path ids '" + path_id + "' and '" +
                                  log.path_id + "'");
    }
  }
  std::vector<PixelPoint> mean(n_r, PixelPoint{0.0, 0.0});
  for (const TraversalLog& log : logs) {
    const std::vector<PixelPoint> resampled = resample_polyline(log.centroids, n_r);
    for (std::size_t i = 0; i < n_r; ++i) {
      mean[i] = mean[i] + resampled[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(logs.size());
  for (PixelPoint& p : mean) {
    p = p * inv;
  }
  return PathMap(path_id, std::move(mean));
}

namespace {

void append_double(std::string& line, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  line.append(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  return s;
}

}  // namespace

void write_path_file(const PathMap& map, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_path_file: cannot open '" + destination.string() + "'");
  }
  std::string line = "x,y\n";
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const PixelPoint& p : map.points()) {
    line.clear();
    append_double(line, p.x);
    line.push_back(',');
    append_double(line, p.y);
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  if (!out) {
    throw std::runtime_error("write_path_file: write failed for '" + destination.string() + "'");
  }
}

std::optional<PathMap> read_path_file(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_path_file: cannot open '" + source.string() + "'");
  }
  std::string line;
  std::size_t line_number = 0;
  std::vector<PixelPoint> points;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view row = trim(line);
    if (line_number == 1) {
      if (row != "x,y") {
        throw ParseError(source.string(), line_number, "expected header 'x,y'");
      }
      continue;
    }
    if (row.empty()) {
      continue;
    }
    const std::size_t comma = row.find(',');
    double x = 0.0;
    double y = 0.0;
    if (comma == std::string_view::npos || !parse_double(trim(row.substr(0, comma)), x) ||
        !parse_double(trim(row.substr(comma + 1)), y)) {
      throw ParseError(source.string(), line_number, "malformed data row '" + std::string(row) + "'");
    }
    points.push_back({x, y});
  }
  if (points.empty()) {
    return std::nullopt;  // zero data rows: the caller excludes this path
  }
  return PathMap(source.stem().string(), std::move(points));
}

std::map<std::string, PathMap> load_path_directory(const std::filesystem::path& directory) {
  std::map<std::string, PathMap> maps;
  if (!std::filesystem::is_directory(directory)) {
    throw std::runtime_error("load_path_directory: '" + directory.string() +
                             "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    if (std::optional<PathMap> map = read_path_file(file)) {
      maps.emplace(map->id(), std::move(*map));
    }
  }
  return maps;
}

}  // namespace pathcast
