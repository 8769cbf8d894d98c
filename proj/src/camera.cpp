#include "floorloop/camera.hpp"

#include <cmath>

namespace floorloop {

namespace {
constexpr double kParallelEps = 1e-12;

Eigen::Vector3d pixel_ray(const CameraModel& cam, const PixelPoint& p) {
  return {(p.u - cam.cx) / cam.fx, (p.v - cam.cy) / cam.fy, 1.0};
}
}  // namespace

Eigen::Matrix3d intrinsic_matrix(const CameraModel& cam) {
  Eigen::Matrix3d k;
  k << cam.fx, 0, cam.cx,
       0, cam.fy, cam.cy,
       0, 0, 1;
  return k;
}

Eigen::Matrix3d camera_to_body_rotation(const CameraModel& cam) {
  const double sp = std::sin(cam.pitch);
  const double cp = std::cos(cam.pitch);
  Eigen::Matrix3d r;
  // columns: camera x (image right), y (image down), z (optical axis)
  r << 0, -sp,  cp,
      -1,   0,   0,
       0, -cp, -sp;
  return r;
}

Eigen::Isometry3d camera_to_body_transform(const CameraModel& cam) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = camera_to_body_rotation(cam);
  t.translation() = Eigen::Vector3d(0, 0, cam.height_above_floor);
  return t;
}

PointSet3D backproject(const std::vector<PixelPoint>& pts,
                       const std::vector<double>& depth,
                       const CameraModel& cam) {
  if (pts.size() != depth.size())
    throw CountMismatch("point and depth counts differ");
  PointSet3D out;
  out.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!(depth[i] > 0.0)) throw NonPositiveDepth("depth must be positive");
    out.push_back(depth[i] * pixel_ray(cam, pts[i]));
  }
  return out;
}

PixelPoint project(const Eigen::Vector3d& p_cam, const CameraModel& cam) {
  return {cam.fx * p_cam.x() / p_cam.z() + cam.cx,
          cam.fy * p_cam.y() / p_cam.z() + cam.cy};
}

double plane_depth_single(const PixelPoint& p, const CameraModel& cam) {
  const Eigen::Vector3d d_body = camera_to_body_rotation(cam) * pixel_ray(cam, p);
  // camera center is at body z = height; floor plane is body z = 0
  const double descent = -d_body.z();
  if (std::abs(descent) <= kParallelEps)
    throw RayParallelToFloor("pixel ray parallel to floor");
  const double lambda = cam.height_above_floor / descent;
  if (lambda <= 0.0)
    throw IntersectionBehindCamera("pixel ray meets the floor behind the camera");
  return lambda;
}

std::vector<double> plane_depth(const std::vector<PixelPoint>& pts, const CameraModel& cam) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(plane_depth_single(p, cam));
  return out;
}

std::optional<Eigen::Vector2d> pixel_to_ground(const CameraModel& cam, const PoseSE2& pose,
                                               const PixelPoint& px) {
  const Eigen::Vector3d d_body = camera_to_body_rotation(cam) * pixel_ray(cam, px);
  const double descent = -d_body.z();
  if (descent <= kParallelEps) return std::nullopt;
  const double t = cam.height_above_floor / descent;
  const Eigen::Vector3d p_body = Eigen::Vector3d(0, 0, cam.height_above_floor) + t * d_body;
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  return Eigen::Vector2d(pose.x + c * p_body.x() - s * p_body.y(),
                         pose.y + s * p_body.x() + c * p_body.y());
}

std::optional<PixelPoint> ground_to_pixel(const CameraModel& cam, const PoseSE2& pose,
                                          const Eigen::Vector2d& world) {
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  const double dx = world.x() - pose.x, dy = world.y() - pose.y;
  const Eigen::Vector3d p_body(c * dx + s * dy, -s * dx + c * dy, 0.0);
  const Eigen::Vector3d p_cam = camera_to_body_rotation(cam).transpose() *
                                (p_body - Eigen::Vector3d(0, 0, cam.height_above_floor));
  if (p_cam.z() <= kParallelEps) return std::nullopt;
  return project(p_cam, cam);
}

}  // namespace floorloop
