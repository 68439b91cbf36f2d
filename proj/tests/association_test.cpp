#include "pathcast/association.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"

namespace pathcast {
namespace {

std::map<std::string, PathMap> crossing_maps() {
  std::map<std::string, PathMap> maps;
  std::vector<PixelPoint> horizontal;
  std::vector<PixelPoint> vertical;
  for (int i = 0; i <= 100; ++i) {
    horizontal.push_back({static_cast<double>(i), 50.0});
    vertical.push_back({50.0, static_cast<double>(i)});
  }
  maps.emplace("h", PathMap("h", horizontal));
  maps.emplace("v", PathMap("v", vertical));
  return maps;
}

TEST(Associate, NearestIndexWithinThreshold) {
  std::map<std::string, PathMap> maps;
  maps.emplace("p", PathMap("p", {{0.0, 0.0}, {5.0, 0.0}, {10.0, 0.0}}));
  const auto entries = associate(maps, {5.0, 1.0}, 3.0);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].path_id, "p");
  EXPECT_EQ(entries[0].index, 1u);
  EXPECT_DOUBLE_EQ(entries[0].distance, 1.0);
}

TEST(Associate, OffAllPathsIsEmpty) {
  std::map<std::string, PathMap> maps;
  maps.emplace("p", PathMap("p", {{0.0, 0.0}, {5.0, 0.0}, {10.0, 0.0}}));
  EXPECT_TRUE(associate(maps, {100.0, 100.0}, 15.0).empty());
}

TEST(Associate, JunctionReturnsMultiplePaths) {
  const auto maps = crossing_maps();
  const auto entries = associate(maps, {50.0, 51.0}, 5.0);
  ASSERT_EQ(entries.size(), 2u);
  for (const PathAssociation& a : entries) {
    const auto& pts = maps.at(a.path_id).points();
    const auto expected = oracle::linear_nearest(pts, {50.0, 51.0});
    EXPECT_EQ(a.index, expected.index);
    EXPECT_EQ(a.distance, expected.distance);
  }
}

TEST(Associate, BoundaryDistanceIncluded) {
  std::map<std::string, PathMap> maps;
  maps.emplace("p", PathMap("p", {{0.0, 0.0}, {10.0, 0.0}}));
  const auto entries = associate(maps, {0.0, 15.0}, 15.0);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_DOUBLE_EQ(entries[0].distance, 15.0);
}

TEST(Associate, MonotoneInThreshold) {
  const auto maps = crossing_maps();
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const PixelPoint c{coord(rng), coord(rng)};
    const auto narrow = associate(maps, c, 5.0);
    const auto wide = associate(maps, c, 20.0);
    for (const PathAssociation& a : narrow) {
      const bool contained =
          std::any_of(wide.begin(), wide.end(), [&](const PathAssociation& b) {
            return b.path_id == a.path_id && b.index == a.index && b.distance == a.distance;
          });
      EXPECT_TRUE(contained);
      EXPECT_LE(a.distance, 5.0);
    }
  }
}

TEST(Associate, PureFunctionOfInputs) {
  const auto maps = crossing_maps();
  const PixelPoint c{48.0, 53.0};
  EXPECT_EQ(associate(maps, c, 10.0), associate(maps, c, 10.0));
}

}  // namespace
}  // namespace pathcast
