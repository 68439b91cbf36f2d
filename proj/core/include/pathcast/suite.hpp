#pragma once

#include <map>
#include <string>
#include <vector>

#include "pathcast/pathmap.hpp"
#include "pathcast/simulator.hpp"

namespace pathcast {

/// One scenario of the bundled evaluation suite.
struct SuiteScenario {
  std::string id;
  ScenarioConfig config;
  bool collision_designed = false;  // intended label; ground truth confirms it
};

/// Road network used by the bundled suite: three eastbound horizontal roads,
/// one southbound vertical road, and an east-to-south turn that shares
/// geometry with both, all on a 2048 px square frame.
std::map<std::string, PathMap> suite_path_maps(std::size_t n_r = 500);

/// The 100 bundled scenarios (50 designed collisions, 50 designed safe),
/// generated from frozen seeds: every call returns identical configs.
/// Templates cover perpendicular crossings, rear-end catch-ups, turn merges,
/// staggered crossings, parallel roads, and constant-gap following, all with
/// 2 px detection noise and 5% dropout.
std::vector<SuiteScenario> suite_scenarios();

}  // namespace pathcast
