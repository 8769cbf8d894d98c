#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "floorloop/camera.hpp"
#include "floorloop/imggeom.hpp"
#include "floorloop/simworld.hpp"

using namespace floorloop;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)), {});
}

SimSpec tiny_spec(uint64_t seed) {
  SimSpec spec = sim_s1();
  spec.seed = seed;
  spec.name = "tiny";
  spec.waypoints = {{0.0, 0.0}, {4.0, 0.0}};
  spec.step = 1.0;
  spec.image_w = 100;
  spec.image_h = 100;
  spec.camera.cx = 49.5;
  spec.camera.cy = 49.5;
  spec.camera.fx = 42.0;
  spec.camera.fy = 42.0;
  return spec;
}

}  // namespace

TEST_CASE("gen_floor_texture: exact periodicity at zero blemish density") {
  const double scale = 0.01, period = 0.25;
  const int period_texels = 25;
  const FloorTexture tex = gen_floor_texture(7, 200, 100, period, 0.0, scale);
  for (int y = 0; y < 100; ++y)
    for (int x = 0; x + period_texels < 200; ++x)
      CHECK(tex.image.at(x, y) == tex.image.at(x + period_texels, y));
  for (int y = 0; y + period_texels < 100; ++y)
    for (int x = 0; x < 200; ++x)
      CHECK(tex.image.at(x, y) == tex.image.at(x, y + period_texels));
}

TEST_CASE("gen_floor_texture: same seed is bit-identical") {
  const FloorTexture a = gen_floor_texture(42, 300, 200, 0.63, 8.0, 0.01);
  const FloorTexture b = gen_floor_texture(42, 300, 200, 0.63, 8.0, 0.01);
  CHECK(a.image.data == b.image.data);
  const FloorTexture c = gen_floor_texture(43, 300, 200, 0.63, 8.0, 0.01);
  CHECK(a.image.data != c.image.data);
}

TEST_CASE("gen_floor_texture: blemish count concentrates around density*area") {
  const double density = 8.0, scale = 0.01;
  const int w = 400, h = 400;  // 16 m^2
  const double expected = density * w * h * scale * scale;
  double total = 0;
  const int seeds = 20;
  for (uint64_t s = 0; s < seeds; ++s)
    total += gen_floor_texture(1000 + s, w, h, 0.63, density, scale).blemish_count;
  const double mean = total / seeds;
  CHECK(std::abs(mean - expected) <= 3.0 * std::sqrt(expected / seeds));
}

TEST_CASE("gen_trajectory: straight corridor with reverse pass") {
  TrajectorySpec spec;
  spec.step = 1.0;
  spec.waypoints = {{0, 0}, {10, 0}};
  spec.reverse_pass = true;
  const auto poses = gen_trajectory(spec);
  REQUIRE(poses.size() == 22);
  for (int k = 0; k < 22; ++k) {
    const auto& a = poses[k];
    const auto& b = poses[21 - k];
    CHECK(std::abs(a.x - b.x) < 1e-12);
    CHECK(std::abs(a.y - b.y) < 1e-12);
    CHECK(std::abs(wrap_angle(a.theta - b.theta + M_PI)) < 1e-12);
  }
}

TEST_CASE("gen_trajectory: heading turns at an L corner") {
  TrajectorySpec spec;
  spec.step = 1.0;
  spec.waypoints = {{0, 0}, {3, 0}, {3, 3}};
  spec.reverse_pass = false;
  const auto poses = gen_trajectory(spec);
  REQUIRE(poses.size() == 7);
  CHECK(poses[1].theta == doctest::Approx(0.0));
  CHECK(poses[5].theta == doctest::Approx(M_PI / 2));
}

TEST_CASE("gen_trajectory: total path length doubles with the reverse pass") {
  TrajectorySpec spec;
  spec.step = 0.37;
  spec.waypoints = {{0, 0}, {5, 1}, {7, 4}};
  spec.reverse_pass = true;
  const auto poses = gen_trajectory(spec);
  double arc = 0;
  for (size_t i = 0; i + 1 < poses.size(); ++i)
    arc += std::hypot(poses[i + 1].x - poses[i].x, poses[i + 1].y - poses[i].y);
  double polyline = std::hypot(5, 1) + std::hypot(2, 3);
  CHECK(std::abs(arc - 2 * polyline) <= 2 * spec.step);
}

TEST_CASE("render_view: deterministic and periodic under one-tile shifts") {
  const FloorTexture tex = gen_floor_texture(5, 400, 200, 0.25, 0.0, 0.01);
  const SimSpec spec = tiny_spec(1);
  const PoseSE2 pose{1.2, 0.3, 0.4};

  const ImageGray a = render_view(tex, pose, spec.camera, 100, 100);
  const ImageGray b = render_view(tex, pose, spec.camera, 100, 100);
  CHECK(a.data == b.data);

  // blemish-free texture: shifting the camera by one tile period reproduces
  // the rendered floor nearly exactly
  const PoseSE2 shifted{pose.x + 0.25, pose.y, pose.theta};
  const ImageGray c = render_view(tex, shifted, spec.camera, 100, 100);
  double diff = 0;
  for (size_t i = 0; i < a.data.size(); ++i) diff += std::abs(a.data[i] - c.data[i]);
  CHECK(diff / a.data.size() < 0.005);
}

TEST_CASE("render_view: opposing views agree after homography + pi-rotation") {
  SimSpec spec = sim_s1();
  FloorTexture tex =
      gen_floor_texture(11, 800, 400, spec.tile_period, spec.blemish_density, 0.01);
  tex.origin_x = -2.0;
  tex.origin_y = -2.0;

  const PoseSE2 fwd{1.5, 0.0, 0.0};
  const PoseSE2 rev{1.5, 0.0, M_PI};
  const ImageGray va = render_view(tex, fwd, spec.camera, spec.image_w, spec.image_h);
  const ImageGray vb = render_view(tex, rev, spec.camera, spec.image_w, spec.image_h);

  double raw_diff = 0;
  for (size_t i = 0; i < va.data.size(); ++i) raw_diff += std::abs(va.data[i] - vb.data[i]);
  CHECK(raw_diff / va.data.size() > 0.2);

  double near, far, half;
  default_floor_rect(spec.camera, spec.image_w, spec.image_h, near, far, half);
  CHECK(near == doctest::Approx(-far).epsilon(1e-12));  // symmetric rectangle

  const auto a = floor_anchor_points(spec.camera, near, far, half);
  const std::array<PixelPoint, 4> src = {a[0], a[1], a[2], a[3]};
  const std::array<PixelPoint, 4> dst = {PixelPoint{0, 0}, PixelPoint{299, 0},
                                         PixelPoint{299, 299}, PixelPoint{0, 299}};
  const Homography h = homography_from_points(src, dst);

  const ImageGray wa = warp_image(va, h, 300, 300);
  const ImageGray wb = rotate_pi(warp_image(vb, h, 300, 300));
  double diff = 0;
  for (size_t i = 0; i < wa.data.size(); ++i) diff += std::abs(wa.data[i] - wb.data[i]);
  CHECK(diff / wa.data.size() < 0.02);
}

TEST_CASE("render_view: wall stripes above the horizon") {
  // shallow-pitch camera with the horizon inside the image
  CameraModel cam{80.0, 80.0, 49.5, 49.5, 0.5, 0.45};
  const FloorTexture tex = gen_floor_texture(3, 300, 300, 0.25, 0.0, 0.01);
  const ImageGray img = render_view(tex, {0, 0, 0}, cam, 100, 100);
  const DepthMap depth = render_depth({0, 0, 0}, cam, 100, 100);
  int wall = 0;
  for (int v = 0; v < 100; ++v)
    for (int u = 0; u < 100; ++u)
      if (depth.at(u, v) < 0) ++wall;
  CHECK(wall > 100);          // a band of wall pixels exists
  CHECK(wall < 100 * 100 / 2);  // but the floor dominates

  CameraModel up = cam;
  up.pitch = -0.8;  // looking up: no floor at all
  CHECK_THROWS_AS(render_view(tex, {0, 0, 0}, up, 100, 100), NoFloorVisible);
  CHECK_THROWS_AS(render_depth({0, 0, 0}, up, 100, 100), NoFloorVisible);
}

TEST_CASE("render_depth: values and monotonicity") {
  CameraModel cam{60.0, 60.0, 49.5, 49.5, 0.8, M_PI / 2};
  const DepthMap depth = render_depth({0, 0, 0}, cam, 100, 100);

  // straight-down ray through the principal point
  const double center = 0.25 * (depth.at(49, 49) + depth.at(50, 49) +
                                depth.at(49, 50) + depth.at(50, 50));
  CHECK(center == doctest::Approx(cam.height_above_floor).epsilon(1e-4));

  // depth grows from the image bottom toward the horizon and matches
  // plane_depth wherever both are defined
  for (int u = 0; u < 100; u += 7) {
    for (int v = 99; v > 0; --v) {
      const float d_here = depth.at(u, v);
      const float d_above = depth.at(u, v - 1);
      if (d_here < 0 || d_above < 0) continue;
      CHECK(d_above >= d_here);
      const double lambda = plane_depth_single({double(u), double(v)}, cam);
      CHECK(std::abs(lambda - d_here) < 1e-6 * std::max(1.0, lambda));
    }
  }
}

TEST_CASE("depth raster roundtrip is bit-exact") {
  CameraModel cam{60.0, 60.0, 49.5, 49.5, 0.8, 1.2};
  const DepthMap depth = render_depth({0, 0, 0}, cam, 64, 48);
  const fs::path path = fs::temp_directory_path() / "floorloop_depth_test.f32";
  write_depth(depth, path);
  const DepthMap back = read_depth(path);
  REQUIRE(back.width == depth.width);
  REQUIRE(back.height == depth.height);
  CHECK(std::memcmp(back.data.data(), depth.data.data(),
                    depth.data.size() * sizeof(float)) == 0);
  fs::remove(path);
}

TEST_CASE("perturb_odometry: zero noise reproduces ground truth") {
  TrajectorySpec spec;
  spec.step = 0.5;
  spec.waypoints = {{0, 0}, {4, 0}, {4, 3}};
  spec.reverse_pass = true;
  const auto gt = gen_trajectory(spec);

  const auto rel = perturb_odometry(gt, {0.0, 0.0, 9});
  REQUIRE(rel.size() == gt.size() - 1);
  PoseSE2 cur = gt.front();
  for (size_t k = 0; k < rel.size(); ++k) {
    cur = se2_compose(cur, rel[k]);
    CHECK(std::abs(cur.x - gt[k + 1].x) < 1e-12);
    CHECK(std::abs(cur.y - gt[k + 1].y) < 1e-12);
    CHECK(std::abs(wrap_angle(cur.theta - gt[k + 1].theta)) < 1e-12);
  }

  const auto r1 = perturb_odometry(gt, {0.02, 0.01, 77});
  const auto r2 = perturb_odometry(gt, {0.02, 0.01, 77});
  for (size_t k = 0; k < r1.size(); ++k) {
    CHECK(r1[k].x == r2[k].x);
    CHECK(r1[k].theta == r2[k].theta);
  }
}

TEST_CASE("perturb_odometry: terminal drift matches the random-walk prediction") {
  // straight 50 m, 100 steps, heading noise only
  TrajectorySpec tspec;
  tspec.step = 0.5;
  tspec.waypoints = {{0, 0}, {50, 0}};
  tspec.reverse_pass = false;
  const auto gt = gen_trajectory(tspec);
  const int n = static_cast<int>(gt.size()) - 1;
  REQUIRE(n == 100);

  const double sigma_rot = 0.01, step = 0.5;
  double sum_err = 0, sum_sq = 0;
  const int seeds = 50;
  for (uint64_t s = 0; s < seeds; ++s) {
    const auto rel = perturb_odometry(gt, {0.0, sigma_rot, 4242 + s});
    PoseSE2 cur = gt.front();
    for (const auto& r : rel) cur = se2_compose(cur, r);
    const double err = std::hypot(cur.x - gt.back().x, cur.y - gt.back().y);
    sum_err += err;
    sum_sq += err * err;
  }
  const double mean = sum_err / seeds;

  // first-order analytic prediction: lateral error is Gaussian with
  // variance step^2 sigma^2 sum_{j=1}^{n-1} (n-j)^2; |N(0,v)| has mean
  // sqrt(2v/pi)
  double var = 0;
  for (int j = 1; j <= n - 1; ++j) var += double(n - j) * (n - j);
  var *= step * step * sigma_rot * sigma_rot;
  const double predicted = std::sqrt(2.0 * var / M_PI);

  const double sample_var = sum_sq / seeds - mean * mean;
  const double se = std::sqrt(sample_var / seeds);
  CHECK(std::abs(mean - predicted) <= 3.0 * se + 0.05 * predicted);
}

TEST_CASE("generate_dataset: structure, determinism, manifest roundtrip") {
  const fs::path dir_a = fs::temp_directory_path() / "floorloop_ds_a";
  const fs::path dir_b = fs::temp_directory_path() / "floorloop_ds_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  const SimSpec spec = tiny_spec(31);
  const DatasetManifest m = generate_dataset(spec, dir_a);

  // 2N frames; pair (k, 2N-1-k) shares position with opposite heading
  REQUIRE(m.frames.size() % 2 == 0);
  const int n2 = static_cast<int>(m.frames.size());
  for (int k = 0; k < n2; ++k) {
    CHECK(m.frames[k].id == k);
    const auto& a = m.frames[k].ground_truth;
    const auto& b = m.frames[n2 - 1 - k].ground_truth;
    CHECK(std::abs(a.x - b.x) < 1e-12);
    CHECK(std::abs(a.y - b.y) < 1e-12);
    CHECK(std::abs(wrap_angle(a.theta - b.theta + M_PI)) < 1e-12);
  }
  for (const auto& f : m.frames) {
    CHECK(fs::exists(dir_a / f.image_path));
    CHECK(fs::exists(dir_a / f.depth_path));
  }
  CHECK(fs::exists(dir_a / "gt.csv"));
  CHECK(fs::exists(dir_a / "odom.g2o"));

  // byte-identical regeneration
  generate_dataset(spec, dir_b);
  for (const auto& f : m.frames) {
    CHECK(slurp(dir_a / f.image_path) == slurp(dir_b / f.image_path));
    CHECK(slurp(dir_a / f.depth_path) == slurp(dir_b / f.depth_path));
  }
  CHECK(slurp(dir_a / "manifest.txt") == slurp(dir_b / "manifest.txt"));
  CHECK(slurp(dir_a / "odom.g2o") == slurp(dir_b / "odom.g2o"));

  // manifest load matches in-memory state
  const DatasetManifest loaded = load_manifest(dir_a / "manifest.txt");
  REQUIRE(loaded.frames.size() == m.frames.size());
  CHECK(loaded.camera.fx == m.camera.fx);
  // manifest stores 12 significant digits
  CHECK(loaded.rect_far == doctest::Approx(m.rect_far).epsilon(1e-11));
  REQUIRE(loaded.floor_anchors.size() == 4);
  for (size_t i = 0; i < m.frames.size(); ++i) {
    CHECK(loaded.frames[i].ground_truth.x ==
          doctest::Approx(m.frames[i].ground_truth.x).epsilon(1e-11));
    if (i >= 1)
      CHECK(loaded.frames[i].odometry.x ==
            doctest::Approx(m.frames[i].odometry.x).epsilon(1e-11));
  }

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("bundled environments increase in length and complexity") {
  const SimSpec s1 = sim_s1(), s2 = sim_s2(), s3 = sim_s3();
  auto arc = [](const SimSpec& s) {
    double total = 0;
    for (size_t i = 0; i + 1 < s.waypoints.size(); ++i)
      total += (s.waypoints[i + 1] - s.waypoints[i]).norm();
    return total;
  };
  CHECK(s1.waypoints.size() < s2.waypoints.size());
  CHECK(s2.waypoints.size() < s3.waypoints.size());
  CHECK(arc(s1) >= 15.0);  // desk-scale but nontrivial
  CHECK(arc(s2) >= 15.0);
  CHECK(arc(s3) >= 15.0);
}
