#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "pathcast/pathmap.hpp"
#include "pathcast/pipeline.hpp"

namespace pathcast::cli {

/// Static SVG overlay: path maps in grey, tracked trajectories in color,
/// collision evidence points as red markers.
void write_trajectory_svg(const std::filesystem::path& destination,
                          const std::map<std::string, PathMap>& maps,
                          std::span<const FrameReport> reports, double frame_size);

}  // namespace pathcast::cli
