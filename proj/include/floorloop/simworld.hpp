#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "floorloop/camera.hpp"
#include "floorloop/image.hpp"
#include "floorloop/se2.hpp"

namespace floorloop {

// World floor appearance: an exactly periodic tile pattern plus seeded
// elliptical blemishes. Texel (0,0) sits at world (origin_x, origin_y);
// texel size is `scale` meters.
struct FloorTexture {
  ImageGray image;
  double scale = 0.01;        // meters per texel
  double tile_period = 0.63;  // meters
  double blemish_density = 8.0;  // per square meter
  uint64_t seed = 0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  int blemish_count = 0;
};

FloorTexture gen_floor_texture(uint64_t seed, int width_texels, int height_texels,
                               double tile_period, double blemish_density,
                               double scale = 0.01);

// Samples the texture at a world point (bilinear, periodic continuation).
double sample_floor(const FloorTexture& tex, double wx, double wy);

struct TrajectorySpec {
  double length = 0.0;  // derived from waypoints when they are given
  double step = 0.5;
  std::vector<Eigen::Vector2d> waypoints;
  bool reverse_pass = true;
};

// Poses every `step` meters of arc length, heading along motion; with
// reverse_pass the same positions are appended in reverse order with the
// heading rotated by pi, so pose k and pose 2N-1-k form an opposing pair.
std::vector<PoseSE2> gen_trajectory(const TrajectorySpec& spec);

// Camera view of the floor from a planar pose. Pixels whose ray misses the
// floor show a repeating wall stripe pattern keyed to the ray's world
// azimuth (deliberately aliased).
ImageGray render_view(const FloorTexture& tex, const PoseSE2& pose,
                      const CameraModel& cam, int out_w, int out_h);

// Per-pixel floor depth (the lambda of back projection); entries < 0 mark
// pixels above the horizon.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> data;
  float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

DepthMap render_depth(const PoseSE2& pose, const CameraModel& cam, int out_w, int out_h);

// 32-bit little-endian float raster with a 12-byte header (magic 'FLDP',
// then width and height as uint32).
DepthMap read_depth(const std::filesystem::path& path);
void write_depth(const DepthMap& depth, const std::filesystem::path& path);

struct OdometryNoise {
  double sigma_trans = 0.02;  // meters per step
  double sigma_rot = 0.005;   // radians per step
  uint64_t seed = 0;
};

// True relative motions composed with seeded zero-mean Gaussian noise.
std::vector<PoseSE2> perturb_odometry(const std::vector<PoseSE2>& gt_poses,
                                      const OdometryNoise& noise);

struct FrameRecord {
  int id = 0;
  std::string image_path;
  std::string depth_path;
  PoseSE2 ground_truth;
  PoseSE2 odometry;  // relative motion from the previous frame (id >= 1)
};

struct SimSpec {
  uint64_t seed = 42;
  std::string name = "sim-s1";
  std::vector<Eigen::Vector2d> waypoints = {{0.0, 0.0}, {30.0, 0.0}};
  double step = 0.5;
  bool reverse_pass = true;
  // wide camera pitched 75 degrees down: sees a little behind the robot, so
  // opposing views share a floor region around the footpoint
  CameraModel camera{84.0, 84.0, 99.5, 99.5, 0.5, 1.309};
  int image_w = 200;
  int image_h = 200;
  double tile_period = 0.63;
  double blemish_density = 8.0;
  double texture_scale = 0.01;
  OdometryNoise noise{0.02, 0.03, 0};
};

struct DatasetManifest {
  std::vector<FrameRecord> frames;
  CameraModel camera;
  int image_w = 0;
  int image_h = 0;
  uint64_t seed = 0;
  std::string name;
  double step = 0.0;
  bool reverse_pass = true;
  // source anchor quad of the exact floor homography suggested for this
  // camera (pixel coordinates), and the world rectangle it covers in the
  // body frame
  std::vector<PixelPoint> floor_anchors;
  double rect_near = 0.0, rect_far = 0.0, rect_half_width = 0.0;
};

// The body-frame floor rectangle [near, far] x [-half_width, half_width]
// fully visible from the camera; used to anchor the floor homography.
void default_floor_rect(const CameraModel& cam, int image_w, int image_h,
                        double& near, double& far, double& half_width);

// Projects the floor rectangle corners into the image: the four source
// anchor points of the exact floor homography.
std::vector<PixelPoint> floor_anchor_points(const CameraModel& cam,
                                            double near, double far, double half_width);

// Renders images and depth, perturbs odometry, writes everything under
// out_dir (PGM frames, depth rasters, manifest, ground truth CSV, noisy
// odometry g2o chain). Reproducible from the spec's seeds.
DatasetManifest generate_dataset(const SimSpec& spec, const std::filesystem::path& out_dir);

DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

// Bundled environments of increasing length and complexity.
SimSpec sim_s1();  // straight corridor
SimSpec sim_s2();  // L-shaped corridor
SimSpec sim_s3();  // U-shaped corridor

}  // namespace floorloop
