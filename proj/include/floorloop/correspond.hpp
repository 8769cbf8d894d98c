#pragma once

#include <utility>
#include <vector>

#include "floorloop/camera.hpp"
#include "floorloop/errors.hpp"
#include "floorloop/image.hpp"
#include "floorloop/imggeom.hpp"
#include "floorloop/se2.hpp"

namespace floorloop {

struct Keypoint {
  PixelPoint position;
  double score = 0.0;
};

// One matched pair in both frames: hatted coordinates live in the warped
// patch, plain ones in the original image.
struct CorrespondencePair {
  PixelPoint q_hat;
  PixelPoint m_hat;
  PixelPoint q;
  PixelPoint m;
};

struct CorrespondenceSet {
  std::vector<CorrespondencePair> pairs;
  Homography warp;  // original -> patch, same for both sides
  int patch_w = 0;
  int patch_h = 0;
  bool reference_rotated = false;
};

struct DetectorParams {
  int max_keypoints = 200;
  double nms_radius = 8.0;
};

struct MatcherParams {
  int patch = 17;
  double ratio = 0.9;
};

// Harris corners (Sobel gradients, 3x3 Gaussian-weighted structure tensor,
// k = 0.04), non-maximum suppression, top max_count by response.
// Deterministic order: descending response, then row-major position.
std::vector<Keypoint> detect_keypoints(const ImageGray& img, int max_count,
                                       double min_distance);

// Zero-mean normalized cross-correlation over patch x patch windows,
// mutual nearest neighbors, Lowe-style ratio test on correlation distance.
std::vector<std::pair<PixelPoint, PixelPoint>> match_keypoints(
    const ImageGray& img_a, const std::vector<Keypoint>& kp_a,
    const ImageGray& img_b, const std::vector<Keypoint>& kp_b,
    int patch, double ratio);

// Full warped-frame correspondence extraction: warp both images by h (the
// reference additionally pi-rotated when rotate_reference), detect and match
// in the warped frames, back-map through the exact analytic inverses.
// Pairs whose back-mapped coordinates leave the original images are dropped.
CorrespondenceSet correspond_pair(const ImageGray& x_q, const ImageGray& x_m,
                                  const Homography& h, int patch_w, int patch_h,
                                  bool rotate_reference,
                                  const DetectorParams& det = {},
                                  const MatcherParams& match = {});

// Ground-truth geometry for reprojection checks: camera model plus the true
// planar poses of the two frames.
struct GroundTruthGeometry {
  CameraModel cam;
  PoseSE2 pose_q;
  PoseSE2 pose_m;
};

// A pair is an inlier iff reprojecting q through the ground-truth geometry
// lands within threshold px of m. Returns (inliers, total).
std::pair<int, int> inlier_count(const CorrespondenceSet& cs,
                                 const GroundTruthGeometry& gt, double threshold_px);

}  // namespace floorloop
