#include "floorloop/se2.hpp"

#include <cmath>

namespace floorloop {

double wrap_angle(double theta) {
  // Wrap to (-pi, pi].
  double t = std::remainder(theta, 2.0 * M_PI);
  if (t <= -M_PI) t += 2.0 * M_PI;
  return t;
}

PoseSE2 se2_compose(const PoseSE2& a, const PoseSE2& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return {a.x + c * b.x - s * b.y,
          a.y + s * b.x + c * b.y,
          wrap_angle(a.theta + b.theta)};
}

PoseSE2 se2_inverse(const PoseSE2& a) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return {-(c * a.x + s * a.y),
          -(-s * a.x + c * a.y),
          wrap_angle(-a.theta)};
}

Eigen::Matrix3d se2_matrix(const PoseSE2& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  Eigen::Matrix3d m;
  m << c, -s, p.x,
       s,  c, p.y,
       0,  0, 1;
  return m;
}

PoseSE2 se2_from_matrix(const Eigen::Matrix3d& m) {
  return {m(0, 2), m(1, 2), std::atan2(m(1, 0), m(0, 0))};
}

}  // namespace floorloop
