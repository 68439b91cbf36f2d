#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pathcast/geometry.hpp"
#include "pathcast/pathmap.hpp"
#include "pathcast/tracker.hpp"

namespace pathcast {

/// Seeded random source with fixed algorithms (mt19937_64, 53-bit uniform,
/// Box-Muller normal) so streams are bit-identical across platforms. The
/// standard distributions are implementation-defined and deliberately not
/// used here.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// One synthetic vehicle: spawns on its path at a frame and follows the
/// path's arc length at constant speed until route completion.
struct VehicleSpec {
  std::string path_id;
  std::int64_t spawn_frame = 0;
  double speed = 0.0;    // pixels per second along the path
  double length = 30.0;  // bbox x extent
  double width = 15.0;   // bbox y extent
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  double frame_rate = 20.0;   // frames per second
  double duration = 15.0;     // seconds
  double frame_size = 2048.0; // square frame side in pixels
  double noise_sigma = 0.0;   // per-axis Gaussian noise on detection centers
  double dropout_prob = 0.0;  // probability a detection is omitted per frame
  double collision_distance = 30.0;  // ground-truth event threshold
  double false_positive_rate = 0.0;  // expected spurious boxes per frame
  std::vector<VehicleSpec> vehicles;
};

/// First frame at which two true (noiseless) vehicle centers come within the
/// collision distance.
struct GroundTruthEvent {
  int vehicle_a = 0;  // indices into ScenarioConfig::vehicles, a < b
  int vehicle_b = 0;
  std::int64_t frame = 0;
  PixelPoint location;  // midpoint of the two true centers
};

struct TrueState {
  std::int64_t frame = 0;
  int vehicle = 0;
  PixelPoint center;
};

struct ScenarioResult {
  std::vector<DetectionFrame> frames;      // one entry per frame, possibly empty
  std::vector<GroundTruthEvent> events;
  std::vector<TrueState> states;           // noiseless log, frame-major
};

/// Runs the scenario deterministically: identical (config, maps) inputs
/// produce identical outputs. Ground truth always uses noiseless centers.
/// Throws std::invalid_argument on an invalid config or unknown path id.
ScenarioResult generate_scenario(const ScenarioConfig& config,
                                 const std::map<std::string, PathMap>& maps);

/// Records the (possibly noisy) centroid sequence of one full traversal of
/// `path_id`, extending the configured duration if the route needs longer to
/// complete. The config must contain exactly one vehicle, on that path.
TraversalLog record_traversal(const std::string& path_id, const ScenarioConfig& config,
                              const std::map<std::string, PathMap>& maps);

}  // namespace pathcast
