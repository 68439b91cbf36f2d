#include "svg.hpp"

#include <fstream>
#include <map>
#include <vector>

namespace pathcast::cli {

namespace {

const char* kTrackColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                              "#8c564b", "#e377c2", "#17becf", "#bcbd22"};

void write_polyline(std::ostream& out, std::span<const PixelPoint> points, const char* color,
                    double width, double scale) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\" points=\"";
  for (const PixelPoint& p : points) {
    out << p.x * scale << ',' << p.y * scale << ' ';
  }
  out << "\"/>\n";
}

}  // namespace

void write_trajectory_svg(const std::filesystem::path& destination,
                          const std::map<std::string, PathMap>& maps,
                          std::span<const FrameReport> reports, double frame_size) {
  const double canvas = 1024.0;
  const double scale = canvas / frame_size;
  std::ofstream out(destination, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_trajectory_svg: cannot open '" + destination.string() + "'");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\""
      << canvas << "\" viewBox=\"0 0 " << canvas << ' ' << canvas << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#fafafa\"/>\n";

  for (const auto& [id, map] : maps) {
    write_polyline(out, map.points(), "#c8c8c8", 2.0, scale);
  }

  std::map<int, std::vector<PixelPoint>> trails;
  std::vector<PixelPoint> evidence;
  for (const FrameReport& report : reports) {
    for (const TrackSnapshot& t : report.tracks) {
      trails[t.vehicle_id].push_back(t.centroid);
    }
    for (const CollisionReport& c : report.collisions) {
      evidence.push_back({static_cast<double>(c.example.x_mid),
                          static_cast<double>(c.example.y_mid)});
    }
  }
  for (const auto& [vehicle, trail] : trails) {
    const char* color = kTrackColors[static_cast<std::size_t>(vehicle) %
                                     (sizeof(kTrackColors) / sizeof(kTrackColors[0]))];
    write_polyline(out, trail, color, 1.5, scale);
  }
  for (const PixelPoint& p : evidence) {
    out << "<circle cx=\"" << p.x * scale << "\" cy=\"" << p.y * scale
        << "\" r=\"3\" fill=\"#d62728\" fill-opacity=\"0.4\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace pathcast::cli
