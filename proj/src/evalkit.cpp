#include "floorloop/evalkit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace floorloop {

namespace {

double position_dist(const PoseSE2& a, const PoseSE2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

double recall_at_radius(const MatchResult& matches,
                        const std::map<int, PoseSE2>& gt,
                        const std::vector<int>& reference_ids, double radius) {
  if (!(radius > 0)) throw ConfigError("radius must be positive");
  if (matches.empty()) return 0.0;

  for (int id : reference_ids)
    if (!gt.count(id)) throw UnknownId("reference id " + std::to_string(id) + " not in ground truth");

  int true_positives = 0;
  for (const auto& m : matches) {
    const auto q_it = gt.find(m.query_id);
    const auto r_it = gt.find(m.ref_id);
    if (q_it == gt.end()) throw UnknownId("query id " + std::to_string(m.query_id) + " not in ground truth");
    if (r_it == gt.end()) throw UnknownId("matched id " + std::to_string(m.ref_id) + " not in ground truth");

    // counterpart: reference frame nearest to the query's true position
    double best = 1e300;
    const PoseSE2* counterpart = nullptr;
    for (int id : reference_ids) {
      const double d = position_dist(gt.at(id), q_it->second);
      if (d < best) {
        best = d;
        counterpart = &gt.at(id);
      }
    }
    if (!counterpart) continue;
    if (position_dist(r_it->second, *counterpart) <= radius) ++true_positives;
  }
  return static_cast<double>(true_positives) / static_cast<double>(matches.size());
}

double default_radius(const std::vector<PoseSE2>& gt) {
  if (gt.size() < 2) throw TooFewCommonIds("need at least 2 poses for the default radius");
  double arc = 0.0;
  for (size_t i = 0; i + 1 < gt.size(); ++i) arc += position_dist(gt[i], gt[i + 1]);
  return arc / 15.0;
}

PoseSE2 align_se2(const Trajectory& est, const Trajectory& gt) {
  std::map<int, PoseSE2> gt_by_id;
  for (const auto& [id, p] : gt.poses) gt_by_id[id] = p;

  std::vector<Eigen::Vector2d> a, b;  // est, gt positions over common ids
  for (const auto& [id, p] : est.poses) {
    auto it = gt_by_id.find(id);
    if (it == gt_by_id.end()) continue;
    a.emplace_back(p.x, p.y);
    b.emplace_back(it->second.x, it->second.y);
  }
  if (a.size() < 2) throw TooFewCommonIds("need at least 2 common ids to align");

  Eigen::Vector2d ca = Eigen::Vector2d::Zero(), cb = Eigen::Vector2d::Zero();
  for (size_t i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
  }
  ca /= static_cast<double>(a.size());
  cb /= static_cast<double>(a.size());

  // 2D Kabsch on positions, no scale
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (size_t i = 0; i < a.size(); ++i) cov += (b[i] - cb) * (a[i] - ca).transpose();

  const double theta = std::atan2(cov(1, 0) - cov(0, 1), cov(0, 0) + cov(1, 1));
  const Eigen::Vector2d t = cb - Eigen::Rotation2Dd(theta) * ca;
  return {t.x(), t.y(), theta};
}

double ate_rmse(const Trajectory& est, const Trajectory& gt, bool align) {
  std::map<int, PoseSE2> gt_by_id;
  for (const auto& [id, p] : gt.poses) gt_by_id[id] = p;

  PoseSE2 g{0, 0, 0};
  if (align) g = align_se2(est, gt);
  const double c = std::cos(g.theta), s = std::sin(g.theta);

  double sse = 0.0;
  int n = 0;
  for (const auto& [id, p] : est.poses) {
    auto it = gt_by_id.find(id);
    if (it == gt_by_id.end()) continue;
    const double ex = g.x + c * p.x - s * p.y;
    const double ey = g.y + s * p.x + c * p.y;
    const double dx = ex - it->second.x;
    const double dy = ey - it->second.y;
    sse += dx * dx + dy * dy;
    ++n;
  }
  if (n < 2) throw TooFewCommonIds("need at least 2 common ids for ATE");
  return std::sqrt(sse / n);
}

}  // namespace floorloop
