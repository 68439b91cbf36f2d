#pragma once

// Independent reference implementations used to check the library. These are
// deliberately written as plain scans and double loops with no shared code
// with the implementations under test, beyond the arithmetic helpers whose
// exact rounding both sides must agree on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pathcast/collision.hpp"
#include "pathcast/geometry.hpp"
#include "pathcast/predictor.hpp"

namespace pathcast::oracle {

struct NearestHit {
  std::size_t index = 0;
  double distance = 0.0;
};

/// Linear-scan nearest neighbor; ties keep the lowest index.
inline NearestHit linear_nearest(std::span<const PixelPoint> points, PixelPoint q) {
  std::size_t best = 0;
  double best_d2 = squared_distance(q, points[0]);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d2 = squared_distance(q, points[i]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return {best, std::sqrt(best_d2)};
}

/// Linear-scan radius query, boundary inclusive, ascending indices.
inline std::vector<std::size_t> linear_within_radius(std::span<const PixelPoint> points,
                                                     PixelPoint q, double r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (squared_distance(q, points[i]) <= r * r) {
      out.push_back(i);
    }
  }
  return out;
}

/// Arc-length resampler that rewalks the polyline from the start for every
/// output sample.
inline std::vector<PixelPoint> arc_walk_resample(std::span<const PixelPoint> points,
                                                 std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
  }
  std::vector<PixelPoint> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == 0) {
      out.push_back(points.front());
      continue;
    }
    if (j == n - 1) {
      out.push_back(points.back());
      continue;
    }
    const double target = total * static_cast<double>(j) / static_cast<double>(n - 1);
    double walked = 0.0;
    PixelPoint sample = points.back();
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double seg =
          std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
      if (seg > 0.0 && walked + seg >= target) {
        const double t = (target - walked) / seg;
        sample = {points[i - 1].x + (points[i].x - points[i - 1].x) * t,
                  points[i - 1].y + (points[i].y - points[i - 1].y) * t};
        break;
      }
      walked += seg;
    }
    out.push_back(sample);
  }
  return out;
}

/// Arc position of a point lying on the polyline, walking segments in order
/// starting from `segment_hint` (resampled outputs are arc-monotone).
inline double arc_position_on_polyline(std::span<const PixelPoint> points, PixelPoint p,
                                       std::size_t& segment_hint) {
  double walked = 0.0;
  for (std::size_t i = 1; i <= segment_hint && i < points.size(); ++i) {
    walked += distance(points[i - 1], points[i]);
  }
  double best_position = walked;
  double best_error = std::numeric_limits<double>::infinity();
  std::size_t best_segment = segment_hint;
  double base = walked;
  for (std::size_t i = segment_hint + 1; i < points.size(); ++i) {
    const PixelPoint a = points[i - 1];
    const PixelPoint b = points[i];
    const double seg = distance(a, b);
    if (seg > 0.0) {
      const double t = std::clamp(
          ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (seg * seg), 0.0, 1.0);
      const double err = distance(p, lerp(a, b, t));
      if (err < best_error) {
        best_error = err;
        best_position = base + t * seg;
        best_segment = i - 1;
      }
    }
    base += seg;
  }
  segment_hint = best_segment;
  return best_position;
}

struct BrutePairCheck {
  bool collides = false;
  double t_mid = 0.0;
  long x_mid = 0;
  long y_mid = 0;
};

/// Exhaustive double loop over all sample pairs in g1-major order with the
/// same spatial and temporal gates as the implementation.
inline BrutePairCheck brute_pair_collide(const TimedTrajectory& g1, const TimedTrajectory& g2,
                                         double d, double dt) {
  for (const TimedSample& s1 : g1.samples) {
    for (const TimedSample& s2 : g2.samples) {
      if (squared_distance(s1.x, s2.x) <= d * d && std::abs(s1.t - s2.t) <= dt) {
        return {true, (s1.t + s2.t) / 2.0, std::lround((s1.x.x + s2.x.x) / 2.0),
                std::lround((s1.x.y + s2.x.y) / 2.0)};
      }
    }
  }
  return {};
}

/// Brute-force collision summary sharing only the counting rules with the
/// implementation: hypotheses with fewer than two points are dropped from
/// both counts, pairs iterate lower vehicle id first, paths ascending.
inline std::vector<CollisionReport> brute_collision_summary(
    const std::map<int, std::vector<PredictedTrajectory>>& predictions, double d, double dt,
    double horizon_t) {
  struct Timed {
    const PredictedTrajectory* trajectory;
    TimedTrajectory timed;
  };
  std::map<int, std::vector<Timed>> usable;
  for (const auto& [vehicle, trajectories] : predictions) {
    std::vector<Timed> ts;
    for (const PredictedTrajectory& t : trajectories) {
      if (t.points.size() < 2) {
        continue;
      }
      TimedTrajectory timed;
      for (std::size_t k = 0; k < t.points.size(); ++k) {
        timed.samples.push_back({static_cast<double>(k) /
                                     static_cast<double>(t.points.size() - 1) * horizon_t,
                                 t.points[k]});
      }
      ts.push_back({&t, std::move(timed)});
    }
    if (!ts.empty()) {
      usable.emplace(vehicle, std::move(ts));
    }
  }

  std::vector<CollisionReport> reports;
  for (auto it1 = usable.begin(); it1 != usable.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != usable.end(); ++it2) {
      int n_col = 0;
      std::optional<CollisionEvidence> evidence;
      for (const Timed& h1 : it1->second) {
        for (const Timed& h2 : it2->second) {
          const BrutePairCheck check = brute_pair_collide(h1.timed, h2.timed, d, dt);
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
        report.n_comb = static_cast<int>(it1->second.size() * it2->second.size());
        report.n_col = n_col;
        report.probability = static_cast<double>(n_col) / static_cast<double>(report.n_comb);
        report.example = *evidence;
        reports.push_back(std::move(report));
      }
    }
  }
  return reports;
}

}  // namespace pathcast::oracle
