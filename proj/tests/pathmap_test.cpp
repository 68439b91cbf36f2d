#include "pathcast/pathmap.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "pathcast/errors.hpp"
#include "support/oracles.hpp"

namespace pathcast {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("pathcast_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  fs::path operator/(const std::string& name) const { return dir_ / name; }
  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
};

std::vector<PixelPoint> jittered_polyline(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  std::uniform_real_distribution<double> step(2.0, 20.0);
  std::uniform_real_distribution<double> turn(-0.6, 0.6);
  std::vector<PixelPoint> pts;
  double heading = jitter(rng);
  PixelPoint p{1000.0 + 100.0 * jitter(rng), 1000.0 + 100.0 * jitter(rng)};
  pts.push_back(p);
  for (std::size_t i = 1; i < n; ++i) {
    heading += turn(rng);
    const double s = step(rng);
    p = {p.x + s * std::cos(heading) + 0.3 * jitter(rng),
         p.y + s * std::sin(heading) + 0.3 * jitter(rng)};
    pts.push_back(p);
  }
  return pts;
}

TEST(ResamplePolyline, UniformSegmentExamples) {
  const std::vector<PixelPoint> segment{{0.0, 0.0}, {10.0, 0.0}};
  const auto three = resample_polyline(segment, 3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0], (PixelPoint{0.0, 0.0}));
  EXPECT_EQ(three[1], (PixelPoint{5.0, 0.0}));
  EXPECT_EQ(three[2], (PixelPoint{10.0, 0.0}));

  const std::vector<PixelPoint> bent{{0.0, 0.0}, {0.0, 4.0}, {3.0, 4.0}};
  const auto two = resample_polyline(bent, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], (PixelPoint{0.0, 0.0}));
  EXPECT_EQ(two[1], (PixelPoint{3.0, 4.0}));
}

TEST(ResamplePolyline, MatchesArcWalkOracleOnJitteredLShape) {
  // 50-point L-shaped polyline with small jitter, resampled to 8 points.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::vector<PixelPoint> pts;
  for (int i = 0; i < 25; ++i) {
    pts.push_back({static_cast<double>(i) * 4.0 + jitter(rng), jitter(rng)});
  }
  for (int i = 0; i < 25; ++i) {
    pts.push_back({100.0 + jitter(rng), static_cast<double>(i + 1) * 4.0 + jitter(rng)});
  }
  const auto got = resample_polyline(pts, 8);
  const auto expected = oracle::arc_walk_resample(pts, 8);
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i].x, expected[i].x, 1e-9);
    EXPECT_NEAR(got[i].y, expected[i].y, 1e-9);
  }
}

TEST(ResamplePolyline, RejectsDegenerateInput) {
  EXPECT_THROW(resample_polyline(std::vector<PixelPoint>{{1.0, 1.0}}, 4), std::invalid_argument);
  EXPECT_THROW(resample_polyline(std::vector<PixelPoint>{{1.0, 1.0}, {1.0, 1.0}}, 4),
               std::invalid_argument);
  EXPECT_THROW(resample_polyline(std::vector<PixelPoint>{{0.0, 0.0}, {1.0, 0.0}}, 1),
               std::invalid_argument);
}

TEST(ResamplePolyline, EqualArcSpacingProperty) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> sizes(3, 60);
  std::uniform_int_distribution<std::size_t> targets(2, 200);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = jittered_polyline(rng, sizes(rng));
    const std::size_t n = targets(rng);
    const auto out = resample_polyline(pts, n);
    ASSERT_EQ(out.size(), n);
    EXPECT_EQ(out.front(), pts.front());
    EXPECT_EQ(out.back(), pts.back());

    const double total = polyline_length(pts);
    const double expected_step = total / static_cast<double>(n - 1);
    std::size_t hint = 0;
    double previous = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      const double s = oracle::arc_position_on_polyline(pts, out[j], hint);
      EXPECT_NEAR(s - previous, expected_step, 1e-6 * total) << "sample " << j;
      previous = s;
    }
    EXPECT_LE(polyline_length(out), total * (1.0 + 1e-12));
  }
}

TEST(ResamplePolyline, IdempotentOnUniformPolylines) {
  std::vector<PixelPoint> uniform;
  for (int i = 0; i <= 40; ++i) {
    uniform.push_back({static_cast<double>(i) * 2.5, 7.0});
  }
  const auto out = resample_polyline(uniform, uniform.size());
  for (std::size_t i = 0; i < uniform.size(); ++i) {
    EXPECT_NEAR(out[i].x, uniform[i].x, 1e-9);
    EXPECT_NEAR(out[i].y, uniform[i].y, 1e-9);
  }
}

TEST(BuildPathMap, MeanOfOneEqualsResample) {
  const TraversalLog log{"p", "q0", {{0.0, 0.0}, {10.0, 0.0}, {10.0, 10.0}}};
  const PathMap map = build_path_map({&log, 1}, 9);
  const auto expected = resample_polyline(log.centroids, 9);
  EXPECT_EQ(map.id(), "p");
  EXPECT_EQ(map.points(), expected);
}

TEST(BuildPathMap, SymmetricOffsetsAverageToCenterline) {
  std::vector<PixelPoint> base;
  for (int i = 0; i <= 20; ++i) {
    base.push_back({static_cast<double>(i) * 5.0, 100.0});
  }
  TraversalLog up{"p", "q0", base};
  TraversalLog down{"p", "q1", base};
  for (auto& pt : up.centroids) {
    pt.y += 2.0;
  }
  for (auto& pt : down.centroids) {
    pt.y -= 2.0;
  }
  const std::vector<TraversalLog> logs{up, down};
  const PathMap map = build_path_map(logs, 21);
  for (std::size_t i = 0; i < map.size(); ++i) {
    EXPECT_NEAR(map.points()[i].y, 100.0, 1e-9);
  }
}

TEST(BuildPathMap, NoisyQuarterCircleStaysNearArc) {
  // Three noisy traversals of a quarter circle; the averaged map should sit
  // within the noise level of the true arc.
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise(0.0, 2.0);
  const double radius = 400.0;
  std::vector<TraversalLog> logs;
  for (int q = 0; q < 3; ++q) {
    TraversalLog log{"arc", "q" + std::to_string(q), {}};
    for (int i = 0; i <= 300; ++i) {
      const double a = (std::numbers::pi / 2.0) * static_cast<double>(i) / 300.0;
      log.centroids.push_back(
          {radius * std::cos(a) + noise(rng), radius * std::sin(a) + noise(rng)});
    }
    logs.push_back(std::move(log));
  }
  const PathMap map = build_path_map(logs, 100);
  double abs_dev = 0.0;
  for (const PixelPoint& p : map.points()) {
    abs_dev += std::abs(std::hypot(p.x, p.y) - radius);
  }
  abs_dev /= static_cast<double>(map.size());
  EXPECT_LT(abs_dev, 2.0);
}

TEST(BuildPathMap, RejectsEmptyAndMixedLogs) {
  EXPECT_THROW(build_path_map({}, 10), std::invalid_argument);
  const std::vector<TraversalLog> mixed{{"a", "q0", {{0.0, 0.0}, {1.0, 0.0}}},
                                        {"b", "q0", {{0.0, 0.0}, {1.0, 0.0}}}};
  EXPECT_THROW(build_path_map(mixed, 10), std::invalid_argument);
}

TEST(BuildPathMap, CommutesWithTranslation) {
  std::mt19937_64 rng(23);
  const auto base = jittered_polyline(rng, 30);
  const PixelPoint shift{123.5, -67.25};
  TraversalLog log{"p", "q0", base};
  TraversalLog shifted{"p", "q0", base};
  for (auto& pt : shifted.centroids) {
    pt = pt + shift;
  }
  const PathMap plain = build_path_map({&log, 1}, 50);
  const PathMap moved = build_path_map({&shifted, 1}, 50);
  for (std::size_t i = 0; i < plain.size(); ++i) {
    EXPECT_NEAR(moved.points()[i].x, plain.points()[i].x + shift.x, 1e-9);
    EXPECT_NEAR(moved.points()[i].y, plain.points()[i].y + shift.y, 1e-9);
  }
}

TEST(PathFiles, WriteThenReadIsIdentity) {
  TempDir dir;
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = jittered_polyline(rng, 12);
    const PathMap map("roundtrip", pts);
    const fs::path file = dir / "roundtrip.csv";
    write_path_file(map, file);
    const auto loaded = read_path_file(file);
    ASSERT_TRUE(loaded.has_value());
    EXPECT_EQ(loaded->id(), "roundtrip");
    ASSERT_EQ(loaded->points().size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_EQ(loaded->points()[i], pts[i]) << "point " << i;
    }
  }
}

TEST(PathFiles, ThreePointFileLayout) {
  TempDir dir;
  const PathMap map("tiny", {{0.0, 0.0}, {5.0, 0.0}, {10.0, 0.0}});
  const fs::path file = dir / "tiny.csv";
  write_path_file(map, file);
  std::ifstream in(file);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "x,y");
  EXPECT_EQ(lines[1], "0,0");
}

TEST(PathFiles, EmptyMapCannotBeConstructed) {
  EXPECT_THROW(PathMap("empty", {}), std::invalid_argument);
}

TEST(PathFiles, HeaderOnlyFileSignalsEmptyPath) {
  TempDir dir;
  const fs::path file = dir / "empty.csv";
  std::ofstream(file) << "x,y\n";
  EXPECT_EQ(read_path_file(file), std::nullopt);
}

TEST(PathFiles, MalformedRowNamesLine) {
  TempDir dir;
  const fs::path file = dir / "bad.csv";
  std::ofstream(file) << "x,y\n1,2\na,b\n";
  try {
    read_path_file(file);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(PathFiles, MissingFileReportsDestination) {
  try {
    read_path_file("/nonexistent/nowhere.csv");
    FAIL() << "expected runtime_error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("nowhere.csv"), std::string::npos);
  }
}

TEST(PathFiles, DirectoryLoaderSkipsEmptyPaths) {
  TempDir dir;
  write_path_file(PathMap("a", {{0.0, 0.0}, {1.0, 1.0}}), dir / "a.csv");
  std::ofstream(dir / "b.csv") << "x,y\n";
  const auto maps = load_path_directory(dir.path());
  EXPECT_EQ(maps.size(), 1u);
  EXPECT_TRUE(maps.contains("a"));
}

}  // namespace
}  // namespace pathcast
