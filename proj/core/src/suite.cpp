#include "pathcast/suite.hpp"

#include <cmath>
#include <numbers>

namespace pathcast {

namespace {

constexpr double kFrameSize = 2048.0;
constexpr double kFps = 20.0;
constexpr double kNoiseSigma = 2.0;
constexpr double kDropout = 0.05;
constexpr double kCollisionDistance = 30.0;

// Junction layout shared by the suite roads.
constexpr double kTurnEntryX = 874.0;   // where the turn leaves y = 1024
constexpr double kTurnRadius = 150.0;
constexpr double kMergeY = 1174.0;      // where the turn joins x = 1024

std::vector<PixelPoint> straight(PixelPoint a, PixelPoint b) { return {a, b}; }

// East-to-south turn: straight along y = 1024, quarter arc, straight along
// x = 1024. Shares its prefix with h_mid and its suffix with v_mid.
std::vector<PixelPoint> turn_polyline() {
  std::vector<PixelPoint> pts;
  pts.push_back({0.0, 1024.0});
  pts.push_back({kTurnEntryX, 1024.0});
  constexpr int kArcSamples = 128;
  for (int k = 1; k <= kArcSamples; ++k) {
    const double angle = (std::numbers::pi / 2.0) * static_cast<double>(k) / kArcSamples;
    pts.push_back({kTurnEntryX + kTurnRadius * std::sin(angle),
                   kMergeY - kTurnRadius * std::cos(angle)});
  }
  pts.push_back({1024.0, 2048.0});
  return pts;
}

ScenarioConfig base_config(std::uint64_t seed) {
  ScenarioConfig config;
  config.seed = seed;
  config.frame_rate = kFps;
  config.duration = 15.0;
  config.frame_size = kFrameSize;
  config.noise_sigma = kNoiseSigma;
  config.dropout_prob = kDropout;
  config.collision_distance = kCollisionDistance;
  return config;
}

VehicleSpec vehicle(std::string path_id, std::int64_t spawn_frame, double speed) {
  VehicleSpec v;
  v.path_id = std::move(path_id);
  v.spawn_frame = spawn_frame;
  v.speed = speed;
  return v;
}

std::int64_t spawn_for_arrival(double arrival_s, double arc_px, double speed) {
  return std::llround((arrival_s - arc_px / speed) * kFps);
}

struct Crossing {
  const char* h_road;
  double s_h;  // arc position of the crossing on the horizontal road
  double s_v;  // arc position on v_mid
};

constexpr Crossing kCrossings[] = {
    {"h_top", 1024.0, 512.0},
    {"h_mid", 1024.0, 1024.0},
    {"h_low", 1024.0, 1624.0},
};

constexpr const char* kRoads[] = {"h_top", "h_mid", "h_low", "v_mid"};

constexpr double kTurnMergeArc = kTurnEntryX + kTurnRadius * std::numbers::pi / 2.0;

// Two vehicles timed to reach a perpendicular crossing together.
ScenarioConfig crossing_collision(std::uint64_t seed, DeterministicRng& rng, int which) {
  const Crossing& c = kCrossings[which % 3];
  double v1 = 130.0 + 60.0 * rng.uniform();
  double v2 = 130.0 + 60.0 * rng.uniform();
  v1 = std::max(v1, c.s_h / 10.5);
  v2 = std::max(v2, c.s_v / 10.5);
  const double t_meet = std::max(c.s_h / v1, c.s_v / v2) + 0.4 + 0.8 * rng.uniform();
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(vehicle(c.h_road, spawn_for_arrival(t_meet, c.s_h, v1), v1));
  config.vehicles.push_back(vehicle("v_mid", spawn_for_arrival(t_meet, c.s_v, v2), v2));
  return config;
}

// A faster follower catching a leader on the same road.
ScenarioConfig rear_end_collision(std::uint64_t seed, DeterministicRng& rng, int which) {
  const char* road = kRoads[which % 4];
  const double v_lead = 110.0 + 30.0 * rng.uniform();
  const double v_follow = v_lead + 60.0 + 30.0 * rng.uniform();
  const double follow_delay = 1.2 + 0.6 * rng.uniform();
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(vehicle(road, 0, v_lead));
  config.vehicles.push_back(vehicle(road, std::llround(follow_delay * kFps), v_follow));
  return config;
}

// A turning vehicle merging into v_mid as through traffic arrives.
ScenarioConfig merge_collision(std::uint64_t seed, DeterministicRng& rng) {
  const double v_turn = 130.0 + 50.0 * rng.uniform();
  const double v_through = std::max(120.0, v_turn - 10.0 + 20.0 * rng.uniform());
  const double t_meet =
      std::max(kTurnMergeArc / v_turn, kMergeY / v_through) + 0.4 + 0.8 * rng.uniform();
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(vehicle("turn_se", spawn_for_arrival(t_meet, kTurnMergeArc, v_turn), v_turn));
  config.vehicles.push_back(vehicle("v_mid", spawn_for_arrival(t_meet, kMergeY, v_through), v_through));
  return config;
}

// Crossing traversed at disjoint times, spacing well beyond the temporal
// gate. The later vehicle is strictly slower, so every shared-lane
// hypothesis pair (including the turn hypotheses) sees a growing gap:
// velocity-estimate jitter after dropout-induced track restarts cannot
// close it within the horizon.
ScenarioConfig safe_crossing(std::uint64_t seed, DeterministicRng& rng, int which, bool h_first) {
  const Crossing& c = kCrossings[which % 3];
  const double gap_s = 3.6 + 1.2 * rng.uniform();
  const double s_first = h_first ? c.s_h : c.s_v;
  const double s_second = h_first ? c.s_v : c.s_h;
  const double v_first = std::max(140.0 + 50.0 * rng.uniform(), s_first / 8.5);
  const double v_second = v_first - 25.0 - 20.0 * rng.uniform();
  const double t_first = s_first / v_first + 0.3 + 0.7 * rng.uniform();
  const double t_second = std::max(t_first + gap_s, s_second / v_second + 0.2);
  const double v1 = h_first ? v_first : v_second;
  const double v2 = h_first ? v_second : v_first;
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(vehicle(c.h_road, spawn_for_arrival(h_first ? t_first : t_second, c.s_h, v1), v1));
  config.vehicles.push_back(vehicle("v_mid", spawn_for_arrival(h_first ? t_second : t_first, c.s_v, v2), v2));
  return config;
}

// Vehicles on parallel roads that never come close.
ScenarioConfig safe_parallel(std::uint64_t seed, DeterministicRng& rng) {
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(
      vehicle("h_top", std::llround(2.0 * rng.uniform() * kFps), 120.0 + 80.0 * rng.uniform()));
  config.vehicles.push_back(
      vehicle("h_low", std::llround(2.0 * rng.uniform() * kFps), 120.0 + 80.0 * rng.uniform()));
  return config;
}

// Turn merge with a wide arrival gap; the later vehicle is slower, so the
// shared-lane separation keeps growing after the merge. The gap covers the
// phantom conflict as well: the turning vehicle's h_mid hypothesis crosses
// v_mid at the junction up to ~0.8 s closer than the merge itself.
ScenarioConfig safe_merge(std::uint64_t seed, DeterministicRng& rng, bool turn_first) {
  const double v_first = 150.0 + 40.0 * rng.uniform();
  const double v_second = v_first - 25.0 - 20.0 * rng.uniform();
  const double gap_s = 4.2 + 1.0 * rng.uniform();
  const double s_first = turn_first ? kTurnMergeArc : kMergeY;
  const double s_second = turn_first ? kMergeY : kTurnMergeArc;
  const double t_first = s_first / v_first + 0.3 + 0.5 * rng.uniform();
  const double t_second = std::max(t_first + gap_s, s_second / v_second + 0.2);
  const double v_turn = turn_first ? v_first : v_second;
  const double v_through = turn_first ? v_second : v_first;
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(vehicle(
      "turn_se", spawn_for_arrival(turn_first ? t_first : t_second, kTurnMergeArc, v_turn), v_turn));
  config.vehicles.push_back(vehicle(
      "v_mid", spawn_for_arrival(turn_first ? t_second : t_first, kMergeY, v_through), v_through));
  return config;
}

// A slower follower on one road: the gap starts wide and opens further.
ScenarioConfig safe_following(std::uint64_t seed, DeterministicRng& rng, int which) {
  const char* road = kRoads[which % 4];
  const double v_lead = 150.0 + 40.0 * rng.uniform();
  const double v_follow = v_lead - 25.0 - 20.0 * rng.uniform();
  const double gap_s = 3.0 + 1.0 * rng.uniform();
  const std::int64_t spawn_lead = std::llround((0.2 + 0.4 * rng.uniform()) * kFps);
  ScenarioConfig config = base_config(seed);
  config.vehicles.push_back(vehicle(road, spawn_lead, v_lead));
  config.vehicles.push_back(vehicle(road, spawn_lead + std::llround(gap_s * kFps), v_follow));
  return config;
}

std::string scenario_id(std::size_t index, const char* label) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "s%03zu", index);
  return std::string(buf) + "_" + label;
}

}  // namespace

std::map<std::string, PathMap> suite_path_maps(std::size_t n_r) {
  const std::vector<std::pair<std::string, std::vector<PixelPoint>>> polylines = {
      {"h_top", straight({0.0, 512.0}, {kFrameSize, 512.0})},
      {"h_mid", straight({0.0, 1024.0}, {kFrameSize, 1024.0})},
      {"h_low", straight({0.0, 1624.0}, {kFrameSize, 1624.0})},
      {"v_mid", straight({1024.0, 0.0}, {1024.0, kFrameSize})},
      {"turn_se", turn_polyline()},
  };
  std::map<std::string, PathMap> maps;
  for (const auto& [id, polyline] : polylines) {
    const TraversalLog log{id, "design", polyline};
    maps.emplace(id, build_path_map({&log, 1}, n_r));
  }
  return maps;
}

std::vector<SuiteScenario> suite_scenarios() {
  // Frozen seed bases; changing either redefines the bundled suite.
  constexpr std::uint64_t kParamSeedBase = 91000;
  constexpr std::uint64_t kScenarioSeedBase = 40000;

  std::vector<SuiteScenario> scenarios;
  scenarios.reserve(100);
  const auto add = [&](const char* label, bool designed, ScenarioConfig config) {
    scenarios.push_back({scenario_id(scenarios.size(), label), std::move(config), designed});
  };

  for (int i = 0; i < 24; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("crossing", true, crossing_collision(kScenarioSeedBase + scenarios.size(), rng, i));
  }
  for (int i = 0; i < 13; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("rear_end", true, rear_end_collision(kScenarioSeedBase + scenarios.size(), rng, i));
  }
  for (int i = 0; i < 13; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("merge", true, merge_collision(kScenarioSeedBase + scenarios.size(), rng));
  }
  for (int i = 0; i < 20; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("safe_crossing", false,
        safe_crossing(kScenarioSeedBase + scenarios.size(), rng, i, i % 2 == 0));
  }
  for (int i = 0; i < 10; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("safe_parallel", false, safe_parallel(kScenarioSeedBase + scenarios.size(), rng));
  }
  for (int i = 0; i < 10; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("safe_merge", false, safe_merge(kScenarioSeedBase + scenarios.size(), rng, i % 2 == 0));
  }
  for (int i = 0; i < 10; ++i) {
    DeterministicRng rng(kParamSeedBase + scenarios.size());
    add("safe_following", false, safe_following(kScenarioSeedBase + scenarios.size(), rng, i));
  }
  return scenarios;
}

}  // namespace pathcast
