#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "floorloop/errors.hpp"
#include "floorloop/imggeom.hpp"
#include "floorloop/se2.hpp"

namespace floorloop {

// Pinhole camera rigidly mounted on a ground robot: optical center
// height_above_floor meters above the floor, pitched downward by pitch
// radians from horizontal. Camera frame: x right, y down, z forward.
// Body frame: x forward, y left, z up, origin on the floor under the camera.
struct CameraModel {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double height_above_floor = 0.0;
  double pitch = 0.0;  // downward positive
};

Eigen::Matrix3d intrinsic_matrix(const CameraModel& cam);

// Camera axes expressed in the body frame.
Eigen::Matrix3d camera_to_body_rotation(const CameraModel& cam);

// Camera pose as a rigid transform from camera frame to body frame.
Eigen::Isometry3d camera_to_body_transform(const CameraModel& cam);

using PointSet3D = std::vector<Eigen::Vector3d>;

// p = lambda * K^-1 * (u, v, 1)^T, camera frame.
PointSet3D backproject(const std::vector<PixelPoint>& pts,
                       const std::vector<double>& depth,
                       const CameraModel& cam);

// Projects a camera-frame point back to pixels (roundtrip check helper).
PixelPoint project(const Eigen::Vector3d& p_cam, const CameraModel& cam);

// Depth along each pixel ray to the floor plane, from camera height and
// pitch alone. lambda multiplies K^-1 (u,v,1), so lambda * K^-1 x is the
// intersection point in the camera frame.
std::vector<double> plane_depth(const std::vector<PixelPoint>& pts, const CameraModel& cam);
double plane_depth_single(const PixelPoint& p, const CameraModel& cam);

// World-frame floor intersection of a pixel ray for a camera on a robot at
// the given planar pose; nullopt if the ray misses the floor ahead.
std::optional<Eigen::Vector2d> pixel_to_ground(const CameraModel& cam, const PoseSE2& pose,
                                               const PixelPoint& px);

// Projects a world floor point into the image; nullopt if behind the camera.
std::optional<PixelPoint> ground_to_pixel(const CameraModel& cam, const PoseSE2& pose,
                                          const Eigen::Vector2d& world);

}  // namespace floorloop
