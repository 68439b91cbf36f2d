#include "pathcast/collision.hpp"

#include <cmath>
#include <stdexcept>

#include "pathcast/kdtree.hpp"

namespace pathcast {

std::optional<TimedTrajectory> timestamp_trajectory(std::span<const PixelPoint> points,
                                                    double horizon_t) {
  if (!(horizon_t > 0.0)) {
    throw std::invalid_argument("timestamp_trajectory: horizon must be positive");
  }
  if (points.size() < 2) {
    return std::nullopt;
  }
  TimedTrajectory out;
  out.samples.reserve(points.size());
  const double denom = static_cast<double>(points.size() - 1);
  for (std::size_t k = 0; k < points.size(); ++k) {
    out.samples.push_back({static_cast<double>(k) / denom * horizon_t, points[k]});
  }
  return out;
}

PairCheck pair_paths_collide(const TimedTrajectory& g1, const TimedTrajectory& g2, double d,
                             double dt) {
  std::vector<PixelPoint> g2_points;
  g2_points.reserve(g2.samples.size());
  for (const TimedSample& s : g2.samples) {
    g2_points.push_back(s.x);
  }
  const KdTree tree(std::move(g2_points));

  for (const TimedSample& s1 : g1.samples) {
    for (const std::size_t idx : tree.within_radius(s1.x, d)) {
      const TimedSample& s2 = g2.samples[idx];
      if (std::abs(s1.t - s2.t) <= dt) {
        PairCheck hit;
        hit.collides = true;
        hit.t_mid = (s1.t + s2.t) / 2.0;
        hit.x_mid = std::lround((s1.x.x + s2.x.x) / 2.0);
        hit.y_mid = std::lround((s1.x.y + s2.x.y) / 2.0);
        return hit;
      }
    }
  }
  return {};
}

std::vector<CollisionReport> collision_summary(
    const std::map<int, std::vector<PredictedTrajectory>>& predictions, double d, double dt,
    double horizon_t) {
  // Per vehicle: hypotheses that survive timestamping (at least two points),
  // paths already in ascending id order from the predictor.
  struct Hypothesis {
    const PredictedTrajectory* trajectory;
    TimedTrajectory timed;
  };
  std::map<int, std::vector<Hypothesis>> usable;
  for (const auto& [vehicle, trajectories] : predictions) {
    std::vector<Hypothesis> hs;
    for (const PredictedTrajectory& t : trajectories) {
      if (auto timed = timestamp_trajectory(t.points, horizon_t)) {
        hs.push_back({&t, std::move(*timed)});
      }
    }
    if (!hs.empty()) {
      usable.emplace(vehicle, std::move(hs));
    }
  }

  std::vector<CollisionReport> reports;
  for (auto it1 = usable.begin(); it1 != usable.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != usable.end(); ++it2) {
      const auto& hs1 = it1->second;
      const auto& hs2 = it2->second;
      int n_col = 0;
      std::optional<CollisionEvidence> evidence;
      for (const Hypothesis& h1 : hs1) {
        for (const Hypothesis& h2 : hs2) {
          const PairCheck check = pair_paths_collide(h1.timed, h2.timed, d, dt);
          if (check.collides) {
            ++n_col;
            if (!evidence) {
              evidence = CollisionEvidence{h1.trajectory->path_id, h2.trajectory->path_id,
                                           check.t_mid, check.x_mid, check.y_mid};
            }
          }
        }
      }
      if (n_col > 0) {
        CollisionReport report;
        report.vehicle1 = it1->first;
        report.vehicle2 = it2->first;
        report.n_comb = static_cast<int>(hs1.size() * hs2.size());
        report.n_col = n_col;
        report.probability = static_cast<double>(n_col) / static_cast<double>(report.n_comb);
        report.example = *evidence;
        reports.push_back(std::move(report));
      }
    }
  }
  return reports;
}

}  // namespace pathcast
