#include "floorloop/registration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace floorloop {

RigidTransform3D kabsch_align(const PointSet3D& p, const PointSet3D& q) {
  if (p.size() != q.size()) throw CountMismatch("point set sizes differ");
  if (p.size() < 3) throw TooFewPoints("need at least 3 point pairs");

  const double n = static_cast<double>(p.size());
  Eigen::Vector3d cp = Eigen::Vector3d::Zero(), cq = Eigen::Vector3d::Zero();
  for (size_t i = 0; i < p.size(); ++i) {
    cp += p[i];
    cq += q[i];
  }
  cp /= n;
  cq /= n;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (size_t i = 0; i < p.size(); ++i) cov += (q[i] - cq) * (p[i] - cp).transpose();

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(1) < 1e-12 * std::max(sv(0), 1e-300))
    throw DegenerateConfiguration("cross-covariance rank < 2 (collinear points)");

  Eigen::Vector3d d = Eigen::Vector3d::Ones();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) d(2) = -1.0;

  RigidTransform3D t;
  t.rotation = svd.matrixU() * d.asDiagonal() * svd.matrixV().transpose();
  t.translation = cq - t.rotation * cp;
  return t;
}

TrimmedResult trimmed_register(const PointSet3D& p, const PointSet3D& q,
                               double trim_fraction, int max_iter) {
  if (p.size() != q.size()) throw CountMismatch("point set sizes differ");
  const int n = static_cast<int>(p.size());
  if (n < 4) throw TooFewPoints("need at least 4 point pairs");
  if (!(trim_fraction >= 0.0 && trim_fraction < 0.5))
    throw ConfigError("trim_fraction must be in [0, 0.5)");

  const int keep = n - static_cast<int>(std::floor(trim_fraction * n + 1e-12));

  std::vector<int> inliers(n);
  std::iota(inliers.begin(), inliers.end(), 0);

  RigidTransform3D t;
  for (int iter = 0; iter < max_iter; ++iter) {
    PointSet3D ps, qs;
    ps.reserve(inliers.size());
    qs.reserve(inliers.size());
    for (int i : inliers) {
      ps.push_back(p[i]);
      qs.push_back(q[i]);
    }
    t = kabsch_align(ps, qs);

    std::vector<std::pair<double, int>> residuals;
    residuals.reserve(n);
    for (int i = 0; i < n; ++i)
      residuals.emplace_back((t.apply(p[i]) - q[i]).norm(), i);
    std::stable_sort(residuals.begin(), residuals.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<int> next;
    next.reserve(keep);
    for (int i = 0; i < keep; ++i) next.push_back(residuals[i].second);
    std::sort(next.begin(), next.end());

    if (next == inliers) break;
    inliers = std::move(next);
  }

  double sse = 0.0;
  for (int i : inliers) sse += (t.apply(p[i]) - q[i]).squaredNorm();

  TrimmedResult res;
  res.transform = t;
  res.inlier_count = static_cast<int>(inliers.size());
  res.rms_residual = std::sqrt(sse / static_cast<double>(inliers.size()));
  return res;
}

SE2Constraint to_se2_constraint(const RigidTransform3D& t, const CameraModel& cam,
                                int from_id, int to_id,
                                const Eigen::Matrix3d& information) {
  // t maps query-camera points to match-camera points; the measurement we
  // want is the match pose expressed in the query body frame:
  //   Z = E * t^-1 * E^-1   with E the camera-in-body extrinsic.
  const Eigen::Isometry3d e = camera_to_body_transform(cam);
  Eigen::Isometry3d tc = Eigen::Isometry3d::Identity();
  tc.linear() = t.rotation;
  tc.translation() = t.translation;
  const Eigen::Isometry3d g = e * tc.inverse() * e.inverse();

  const double yaw = std::atan2(g.linear()(1, 0), g.linear()(0, 0));
  const Eigen::Matrix3d residual_rot =
      Eigen::AngleAxisd(-yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix() * g.linear();
  const double cos_residual =
      std::clamp((residual_rot.trace() - 1.0) / 2.0, -1.0, 1.0);
  if (std::acos(cos_residual) > 0.2)
    throw NonPlanarResidual("registration has a large out-of-plane rotation");

  SE2Constraint c;
  c.from_id = from_id;
  c.to_id = to_id;
  c.dx = g.translation().x();
  c.dy = g.translation().y();
  c.dtheta = wrap_angle(yaw);
  c.information = information;
  return c;
}

}  // namespace floorloop
