#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathcast/geometry.hpp"
#include "pathcast/predictor.hpp"

namespace pathcast {

struct TimedSample {
  double t = 0.0;  // seconds
  PixelPoint x;
};

/// Trajectory parameterized uniformly over [0, T]: sample k of M carries
/// t = (k-1)/(M-1) * T, so the time axis encodes sample position.
struct TimedTrajectory {
  std::vector<TimedSample> samples;
};

/// Uniform time parameterization of a point sequence over the horizon.
/// Returns std::nullopt for fewer than two points (the combination is
/// skipped, not evaluated). Throws std::invalid_argument on a non-positive
/// horizon.
std::optional<TimedTrajectory> timestamp_trajectory(std::span<const PixelPoint> points,
                                                    double horizon_t);

/// Spatial and temporal gates both satisfied by some sample pair. Evidence
/// is the first qualifying pair in g1-major order (g2 index ascending within
/// a g1 sample): midpoint time and integer-rounded midpoint position.
struct PairCheck {
  bool collides = false;
  double t_mid = 0.0;
  long x_mid = 0;
  long y_mid = 0;
};

/// Tests one trajectory pair: a k-d tree over g2's points answers
/// fixed-radius queries for each g1 sample in order, and a collision is
/// declared at the first spatially close pair whose timestamps differ by at
/// most `dt`. Short-circuits at that pair.
PairCheck pair_paths_collide(const TimedTrajectory& g1, const TimedTrajectory& g2, double d,
                             double dt);

/// First collision evidence of a vehicle pair.
struct CollisionEvidence {
  std::string path1;  // hypothesis path of the lower vehicle id
  std::string path2;
  double t_mid = 0.0;
  long x_mid = 0;
  long y_mid = 0;

  friend bool operator==(const CollisionEvidence&, const CollisionEvidence&) = default;
};

/// Collision statistics for one unordered vehicle pair. Reported only when
/// at least one hypothesis combination collides.
struct CollisionReport {
  int vehicle1 = 0;  // always < vehicle2
  int vehicle2 = 0;
  double probability = 0.0;  // n_col / n_comb
  int n_comb = 0;
  int n_col = 0;
  CollisionEvidence example;
};

/// Evaluates every unordered vehicle pair over all path-hypothesis
/// combinations. Hypotheses with fewer than two points are excluded from
/// both the combination count and the collision count. Iteration is fixed
/// (lower vehicle id first, paths in ascending id order) so the recorded
/// evidence is reproducible and the output is symmetric in the pair.
std::vector<CollisionReport> collision_summary(
    const std::map<int, std::vector<PredictedTrajectory>>& predictions, double d, double dt,
    double horizon_t);

}  // namespace pathcast
