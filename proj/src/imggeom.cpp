#include "floorloop/imggeom.hpp"

#include <cmath>

namespace floorloop {

namespace {

constexpr double kInfinityEps = 1e-12;

Eigen::Matrix3d normalized(Eigen::Matrix3d m) {
  if (std::abs(m(2, 2)) > kInfinityEps) m /= m(2, 2);
  return m;
}

// Similarity that moves the points to centroid 0 with RMS distance sqrt(2).
Eigen::Matrix3d conditioning_transform(const std::array<PixelPoint, 4>& pts) {
  double cu = 0, cv = 0;
  for (const auto& p : pts) {
    cu += p.u;
    cv += p.v;
  }
  cu /= 4.0;
  cv /= 4.0;
  double rms = 0;
  for (const auto& p : pts) {
    const double du = p.u - cu;
    const double dv = p.v - cv;
    rms += du * du + dv * dv;
  }
  rms = std::sqrt(rms / 4.0);
  const double s = rms > kInfinityEps ? std::sqrt(2.0) / rms : 1.0;
  Eigen::Matrix3d t;
  t << s, 0, -s * cu,
       0, s, -s * cv,
       0, 0, 1;
  return t;
}

void check_no_collinear_triple(const std::array<PixelPoint, 4>& pts, const char* which) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const double aux = pts[j].u - pts[i].u;
        const double auy = pts[j].v - pts[i].v;
        const double bux = pts[k].u - pts[i].u;
        const double buy = pts[k].v - pts[i].v;
        const double cross = aux * buy - auy * bux;
        const double la = std::hypot(aux, auy);
        const double lb = std::hypot(bux, buy);
        if (la < kInfinityEps || lb < kInfinityEps || std::abs(cross) < 1e-9 * la * lb)
          throw DegenerateQuad(std::string(which) + " points contain a collinear triple");
      }
}

}  // namespace

Homography::Homography(const Eigen::Matrix3d& m) : m_(normalized(m)) {
  const double scale = m_.cwiseAbs().maxCoeff();
  if (std::abs(m_.determinant()) < 1e-15 * scale * scale * scale)
    throw SingularMatrix("homography matrix is singular");
}

PixelPoint Homography::apply(const PixelPoint& p) const {
  const Eigen::Vector3d q = m_ * Eigen::Vector3d(p.u, p.v, 1.0);
  if (std::abs(q.z()) <= kInfinityEps)
    throw PointAtInfinity("homogeneous scale vanished");
  return {q.x() / q.z(), q.y() / q.z()};
}

Homography Homography::inverse() const {
  const double scale = m_.cwiseAbs().maxCoeff();
  if (std::abs(m_.determinant()) < 1e-15 * scale * scale * scale)
    throw SingularMatrix("homography matrix is singular");
  return Homography(Eigen::Matrix3d(m_.inverse()));
}

Homography homography_from_points(const std::array<PixelPoint, 4>& src,
                                  const std::array<PixelPoint, 4>& dst) {
  check_no_collinear_triple(src, "source");
  check_no_collinear_triple(dst, "destination");

  const Eigen::Matrix3d ts = conditioning_transform(src);
  const Eigen::Matrix3d td = conditioning_transform(dst);

  Eigen::Matrix<double, 8, 9> a = Eigen::Matrix<double, 8, 9>::Zero();
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d s = ts * Eigen::Vector3d(src[i].u, src[i].v, 1.0);
    const Eigen::Vector3d d = td * Eigen::Vector3d(dst[i].u, dst[i].v, 1.0);
    const double x = s.x() / s.z(), y = s.y() / s.z();
    const double xp = d.x() / d.z(), yp = d.y() / d.z();
    a.row(2 * i) << -x, -y, -1, 0, 0, 0, x * xp, y * xp, xp;
    a.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, x * yp, y * yp, yp;
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 9>> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // An 8x9 system has a one-dimensional nullspace for a proper quad; a
  // second vanishing singular value means the configuration is degenerate.
  if (sv(7) < 1e-10 * sv(0))
    throw SingularSystem("DLT system rank-deficient beyond expected nullspace");

  const Eigen::Matrix<double, 9, 1> h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2),
        h(3), h(4), h(5),
        h(6), h(7), h(8);

  return Homography(Eigen::Matrix3d(td.inverse() * hn * ts));
}

ImageGray warp_image(const ImageGray& img, const Homography& h, int out_w, int out_h) {
  const Eigen::Matrix3d inv = h.inverse().matrix();
  ImageGray out(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    for (int u = 0; u < out_w; ++u) {
      const Eigen::Vector3d q = inv * Eigen::Vector3d(u, v, 1.0);
      if (std::abs(q.z()) <= kInfinityEps) continue;  // maps to infinity: leave black
      out.at(u, v) = bilinear_sample(img, q.x() / q.z(), q.y() / q.z());
    }
  }
  return out;
}

ImageGray rotate_pi(const ImageGray& img) {
  ImageGray out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      out.at(x, y) = img.at(img.width - 1 - x, img.height - 1 - y);
  return out;
}

PixelPoint rotate_pi_point(const PixelPoint& p, int w, int h) {
  return {w - 1.0 - p.u, h - 1.0 - p.v};
}

}  // namespace floorloop
