#pragma once

#include <Eigen/Dense>

namespace floorloop {

// Planar pose; theta is kept wrapped to (-pi, pi].
struct PoseSE2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

double wrap_angle(double theta);

PoseSE2 se2_compose(const PoseSE2& a, const PoseSE2& b);
PoseSE2 se2_inverse(const PoseSE2& a);

Eigen::Matrix3d se2_matrix(const PoseSE2& p);
PoseSE2 se2_from_matrix(const Eigen::Matrix3d& m);

// Relative-pose measurement between two frames with its information matrix.
struct SE2Constraint {
  int from_id = 0;
  int to_id = 0;
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;
  Eigen::Matrix3d information = Eigen::Matrix3d::Identity();
};

}  // namespace floorloop
