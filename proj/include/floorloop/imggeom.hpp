#pragma once

#include <array>

#include <Eigen/Dense>

#include "floorloop/errors.hpp"
#include "floorloop/image.hpp"

namespace floorloop {

struct PixelPoint {
  double u = 0.0;  // column
  double v = 0.0;  // row
};

// Invertible 3x3 projective map between pixel frames, normalized so that
// m(2,2) == 1 whenever that entry is nonzero.
class Homography {
 public:
  Homography() : m_(Eigen::Matrix3d::Identity()) {}
  explicit Homography(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& matrix() const { return m_; }

  PixelPoint apply(const PixelPoint& p) const;
  Homography inverse() const;

  friend Homography operator*(const Homography& a, const Homography& b) {
    return Homography(a.m_ * b.m_);
  }

 private:
  Eigen::Matrix3d m_;
};

// Exact 4-point normalized DLT. Throws DegenerateQuad if any three points
// of either set are collinear, SingularSystem if the stacked system is
// rank-deficient beyond the expected one-dimensional nullspace.
Homography homography_from_points(const std::array<PixelPoint, 4>& src,
                                  const std::array<PixelPoint, 4>& dst);

// Inverse-maps every output pixel through h and bilinearly samples the
// source; samples outside the source produce 0.
ImageGray warp_image(const ImageGray& img, const Homography& h, int out_w, int out_h);

// 180-degree rotation; exact index permutation, no interpolation.
ImageGray rotate_pi(const ImageGray& img);

// (u,v) -> (w-1-u, h-1-v); the map is its own inverse.
PixelPoint rotate_pi_point(const PixelPoint& p, int w, int h);

}  // namespace floorloop
