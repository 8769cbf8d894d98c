#pragma once

#include <Eigen/Dense>

#include "floorloop/camera.hpp"
#include "floorloop/errors.hpp"
#include "floorloop/se2.hpp"

namespace floorloop {

struct RigidTransform3D {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }
  RigidTransform3D inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * translation)};
  }
};

// Closed-form least-squares rigid alignment of pre-matched point sets:
// argmin over (R, T) of sum |R p_i + T - q_i|^2, with reflection fix.
RigidTransform3D kabsch_align(const PointSet3D& p, const PointSet3D& q);

struct TrimmedResult {
  RigidTransform3D transform;
  double rms_residual = 0.0;
  int inlier_count = 0;
};

// Correspondences are fixed (they come from matching); iteratively drops the
// worst trim_fraction residuals and re-aligns until the inlier set stabilizes.
TrimmedResult trimmed_register(const PointSet3D& p, const PointSet3D& q,
                               double trim_fraction = 0.2, int max_iter = 10);

// Conjugates a camera-frame relative transform (query camera -> match
// camera) into the robot ground-plane frame and extracts the planar
// constraint from `from_id` to `to_id`. Throws NonPlanarResidual if the
// out-of-plane rotation component exceeds 0.2 rad.
SE2Constraint to_se2_constraint(const RigidTransform3D& t, const CameraModel& cam,
                                int from_id, int to_id,
                                const Eigen::Matrix3d& information);

}  // namespace floorloop
