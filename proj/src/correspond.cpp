#include "floorloop/correspond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floorloop {

namespace {

constexpr double kHarrisK = 0.04;
constexpr double kResponseFloor = 1e-12;

struct ResponseMap {
  int width = 0, height = 0;
  std::vector<double> r;
  double at(int x, int y) const { return r[static_cast<size_t>(y) * width + x]; }
};

ResponseMap harris_response(const ImageGray& img) {
  const int w = img.width, h = img.height;
  std::vector<double> gx(static_cast<size_t>(w) * h, 0.0);
  std::vector<double> gy(static_cast<size_t>(w) * h, 0.0);

  auto px = [&](int x, int y) {
    return img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Sobel
      gx[static_cast<size_t>(y) * w + x] =
          (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
          (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      gy[static_cast<size_t>(y) * w + x] =
          (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
          (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
    }
  }

  // 3x3 Gaussian weights for the structure tensor
  static const double kW[3] = {0.25, 0.5, 0.25};

  ResponseMap out;
  out.width = w;
  out.height = h;
  out.r.assign(static_cast<size_t>(w) * h, 0.0);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      double a = 0, b = 0, c = 0;  // tensor [a b; b c]
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const double wgt = kW[dx + 1] * kW[dy + 1];
          const double ix = gx[static_cast<size_t>(y + dy) * w + (x + dx)];
          const double iy = gy[static_cast<size_t>(y + dy) * w + (x + dx)];
          a += wgt * ix * ix;
          b += wgt * ix * iy;
          c += wgt * iy * iy;
        }
      }
      const double det = a * c - b * b;
      const double tr = a + c;
      out.r[static_cast<size_t>(y) * w + x] = det - kHarrisK * tr * tr;
    }
  }
  return out;
}

}  // namespace

std::vector<Keypoint> detect_keypoints(const ImageGray& img, int max_count,
                                       double min_distance) {
  if (img.width < 16 || img.height < 16)
    throw ImageTooSmall("keypoint detection needs at least 16x16 pixels");

  const ResponseMap resp = harris_response(img);

  std::vector<Keypoint> candidates;
  for (int y = 1; y < img.height - 1; ++y) {
    for (int x = 1; x < img.width - 1; ++x) {
      const double r = resp.at(x, y);
      if (r <= kResponseFloor) continue;
      // local 3x3 maximum, ties resolved toward the row-major earliest pixel
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const double other = resp.at(x + dx, y + dy);
          if (other > r || (other == r && (dy < 0 || (dy == 0 && dx < 0)))) {
            is_max = false;
            break;
          }
        }
      if (is_max) candidates.push_back({{static_cast<double>(x), static_cast<double>(y)}, r});
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Keypoint& a, const Keypoint& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.position.v != b.position.v) return a.position.v < b.position.v;
                     return a.position.u < b.position.u;
                   });

  std::vector<Keypoint> kept;
  const double min_d2 = min_distance * min_distance;
  for (const auto& kp : candidates) {
    if (static_cast<int>(kept.size()) >= max_count) break;
    bool suppressed = false;
    for (const auto& acc : kept) {
      const double du = kp.position.u - acc.position.u;
      const double dv = kp.position.v - acc.position.v;
      if (du * du + dv * dv < min_d2) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(kp);
  }
  return kept;
}

namespace {

// Extracts a zero-mean unit-variance patch; false if it exits the image or
// has no contrast.
bool normalized_patch(const ImageGray& img, const PixelPoint& center, int patch,
                      std::vector<double>& out) {
  const int half = patch / 2;
  const int cx = static_cast<int>(std::lround(center.u));
  const int cy = static_cast<int>(std::lround(center.v));
  if (cx - half < 0 || cy - half < 0 || cx + half >= img.width || cy + half >= img.height)
    return false;

  out.resize(static_cast<size_t>(patch) * patch);
  double mean = 0.0;
  size_t i = 0;
  for (int dy = -half; dy <= half; ++dy)
    for (int dx = -half; dx <= half; ++dx) {
      out[i] = img.at(cx + dx, cy + dy);
      mean += out[i];
      ++i;
    }
  mean /= static_cast<double>(out.size());

  double var = 0.0;
  for (double& v : out) {
    v -= mean;
    var += v * v;
  }
  if (var < 1e-12) return false;
  const double inv = 1.0 / std::sqrt(var);
  for (double& v : out) v *= inv;
  return true;
}

}  // namespace

std::vector<std::pair<PixelPoint, PixelPoint>> match_keypoints(
    const ImageGray& img_a, const std::vector<Keypoint>& kp_a,
    const ImageGray& img_b, const std::vector<Keypoint>& kp_b,
    int patch, double ratio) {
  if (patch < 5 || patch % 2 == 0) throw ConfigError("patch must be odd and >= 5");
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ConfigError("ratio must be in (0, 1]");

  std::vector<std::vector<double>> pa, pb;
  std::vector<int> ia, ib;  // surviving keypoint indices
  {
    std::vector<double> buf;
    for (size_t i = 0; i < kp_a.size(); ++i)
      if (normalized_patch(img_a, kp_a[i].position, patch, buf)) {
        pa.push_back(buf);
        ia.push_back(static_cast<int>(i));
      }
    for (size_t i = 0; i < kp_b.size(); ++i)
      if (normalized_patch(img_b, kp_b[i].position, patch, buf)) {
        pb.push_back(buf);
        ib.push_back(static_cast<int>(i));
      }
  }

  const int na = static_cast<int>(pa.size());
  const int nb = static_cast<int>(pb.size());
  std::vector<std::pair<PixelPoint, PixelPoint>> out;
  if (na == 0 || nb == 0) return out;

  // correlation distance 1 - zncc, in [0, 2]
  std::vector<double> dist(static_cast<size_t>(na) * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      double dot = 0.0;
      const auto& va = pa[i];
      const auto& vb = pb[j];
      for (size_t k = 0; k < va.size(); ++k) dot += va[k] * vb[k];
      dist[static_cast<size_t>(i) * nb + j] = 1.0 - dot;
    }

  auto d = [&](int i, int j) { return dist[static_cast<size_t>(i) * nb + j]; };

  // best and second-best along a row (i fixed) or column (j fixed)
  auto scan = [](int count, auto value) {
    int best = 0, second = -1;
    for (int k = 1; k < count; ++k) {
      if (value(k) < value(best)) {
        second = best;
        best = k;
      } else if (second < 0 || value(k) < value(second)) {
        second = k;
      }
    }
    return std::pair<int, int>(best, second);
  };

  std::vector<std::pair<int, int>> row(na), col(nb);
  for (int i = 0; i < na; ++i) row[i] = scan(nb, [&](int j) { return d(i, j); });
  for (int j = 0; j < nb; ++j) col[j] = scan(na, [&](int i) { return d(i, j); });

  // ratio test applied on both sides so swapping the images yields the
  // inverted pair set
  auto passes_ratio = [&](double d1, int second, auto value) {
    if (second < 0) return true;
    return d1 <= ratio * value(second);
  };

  for (int i = 0; i < na; ++i) {
    const int j = row[i].first;
    if (col[j].first != i) continue;  // mutual NN only
    const double d1 = d(i, j);
    if (!passes_ratio(d1, row[i].second, [&](int s) { return d(i, s); })) continue;
    if (!passes_ratio(d1, col[j].second, [&](int s) { return d(s, j); })) continue;
    out.emplace_back(kp_a[ia[i]].position, kp_b[ib[j]].position);
  }
  return out;
}

CorrespondenceSet correspond_pair(const ImageGray& x_q, const ImageGray& x_m,
                                  const Homography& h, int patch_w, int patch_h,
                                  bool rotate_reference,
                                  const DetectorParams& det,
                                  const MatcherParams& match) {
  const ImageGray q_hat_img = warp_image(x_q, h, patch_w, patch_h);
  ImageGray m_hat_img = warp_image(x_m, h, patch_w, patch_h);
  if (rotate_reference) m_hat_img = rotate_pi(m_hat_img);

  const auto kq = detect_keypoints(q_hat_img, det.max_keypoints, det.nms_radius);
  const auto km = detect_keypoints(m_hat_img, det.max_keypoints, det.nms_radius);
  const auto matched = match_keypoints(q_hat_img, kq, m_hat_img, km,
                                       match.patch, match.ratio);

  const Homography h_inv = h.inverse();

  CorrespondenceSet cs;
  cs.warp = h;
  cs.patch_w = patch_w;
  cs.patch_h = patch_h;
  cs.reference_rotated = rotate_reference;
  cs.pairs.reserve(matched.size());

  auto inside = [](const ImageGray& img, const PixelPoint& p) {
    return p.u >= 0 && p.u <= img.width - 1 && p.v >= 0 && p.v <= img.height - 1;
  };

  for (const auto& [qh, mh] : matched) {
    CorrespondencePair pair;
    pair.q_hat = qh;
    pair.m_hat = mh;
    pair.q = h_inv.apply(qh);
    const PixelPoint m_unrot =
        rotate_reference ? rotate_pi_point(mh, patch_w, patch_h) : mh;
    pair.m = h_inv.apply(m_unrot);
    if (!inside(x_q, pair.q) || !inside(x_m, pair.m)) continue;
    cs.pairs.push_back(pair);
  }
  return cs;
}

std::pair<int, int> inlier_count(const CorrespondenceSet& cs,
                                 const GroundTruthGeometry& gt, double threshold_px) {
  if (!(threshold_px > 0)) throw ConfigError("inlier threshold must be positive");
  int inliers = 0;
  for (const auto& pair : cs.pairs) {
    const auto world = pixel_to_ground(gt.cam, gt.pose_q, pair.q);
    if (!world) continue;
    const auto reproj = ground_to_pixel(gt.cam, gt.pose_m, *world);
    if (!reproj) continue;
    const double du = reproj->u - pair.m.u;
    const double dv = reproj->v - pair.m.v;
    if (du * du + dv * dv <= threshold_px * threshold_px) ++inliers;
  }
  return {inliers, static_cast<int>(cs.pairs.size())};
}

}  // namespace floorloop
