#include "floorloop/simworld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "floorloop/config.hpp"
#include "floorloop/rng.hpp"

namespace floorloop {

namespace {

// Periodic tile pattern: smooth low-amplitude per-tile shading plus deep
// soft grout lines (the grout carries most of the contrast).
double tile_pattern(double fx, double fy) {
  // fx, fy in [0, 1): position within one tile
  const double shading =
      0.78 + 0.06 * std::cos(2.0 * M_PI * fx) * std::cos(2.0 * M_PI * fy);
  const double bx = std::min(fx, 1.0 - fx);  // distance to tile boundary
  const double by = std::min(fy, 1.0 - fy);
  const double gw = 0.05;  // grout half-width as a tile fraction
  const double gx = std::exp(-(bx * bx) / (gw * gw));
  const double gy = std::exp(-(by * by) / (gw * gw));
  const double grout = std::max(gx, gy);
  return shading - 0.70 * grout;
}

struct Blemish {
  double cx, cy;      // texel coordinates
  double a, b;        // semi-axes in texels
  double angle;       // orientation
  double contrast;    // signed
};

}  // namespace

FloorTexture gen_floor_texture(uint64_t seed, int width_texels, int height_texels,
                               double tile_period, double blemish_density,
                               double scale) {
  if (width_texels < 1 || height_texels < 1)
    throw ConfigError("texture dimensions must be positive");
  if (!(tile_period > 0) || !(scale > 0))
    throw ConfigError("tile period and scale must be positive");
  if (blemish_density < 0) throw ConfigError("blemish density must be >= 0");

  FloorTexture tex;
  tex.scale = scale;
  tex.tile_period = tile_period;
  tex.blemish_density = blemish_density;
  tex.seed = seed;
  tex.image = ImageGray(width_texels, height_texels);

  const int period_texels = std::max(1, static_cast<int>(std::lround(tile_period / scale)));
  for (int y = 0; y < height_texels; ++y) {
    const double fy = static_cast<double>(y % period_texels) / period_texels;
    for (int x = 0; x < width_texels; ++x) {
      const double fx = static_cast<double>(x % period_texels) / period_texels;
      tex.image.at(x, y) = tile_pattern(fx, fy);
    }
  }

  // Seeded elliptical blemishes with a minimum separation.
  const double area_m2 = width_texels * height_texels * scale * scale;
  Rng rng(seed);
  const int count = rng.poisson(blemish_density * area_m2);
  const double min_sep = 0.12 / scale;  // texels

  std::vector<Blemish> marks;
  marks.reserve(count);
  int attempts = 0;
  const int max_attempts = 40 * count + 100;
  while (static_cast<int>(marks.size()) < count && attempts < max_attempts) {
    ++attempts;
    Blemish m;
    m.cx = rng.uniform(0.0, width_texels);
    m.cy = rng.uniform(0.0, height_texels);
    m.a = rng.uniform(0.05, 0.22) / scale;
    m.b = m.a * rng.uniform(0.12, 0.35);
    m.angle = rng.uniform(0.0, M_PI);
    const double mag = rng.uniform(0.2, 0.45);
    m.contrast = rng.uniform() < 0.5 ? -mag : mag;

    bool clashes = false;
    for (const auto& other : marks) {
      const double dx = m.cx - other.cx;
      const double dy = m.cy - other.cy;
      if (dx * dx + dy * dy < min_sep * min_sep) {
        clashes = true;
        break;
      }
    }
    if (!clashes) marks.push_back(m);
  }

  for (const auto& m : marks) {
    const double ca = std::cos(m.angle), sa = std::sin(m.angle);
    const double reach = 2.5 * m.a;
    const int x0 = std::max(0, static_cast<int>(std::floor(m.cx - reach)));
    const int x1 = std::min(width_texels - 1, static_cast<int>(std::ceil(m.cx + reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(m.cy - reach)));
    const int y1 = std::min(height_texels - 1, static_cast<int>(std::ceil(m.cy + reach)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x - m.cx, dy = y - m.cy;
        const double u = (ca * dx + sa * dy) / m.a;
        const double v = (-sa * dx + ca * dy) / m.b;
        const double d2 = u * u + v * v;
        if (d2 > 9.0) continue;
        tex.image.at(x, y) += m.contrast * std::exp(-1.5 * d2);
      }
    }
  }

  for (double& v : tex.image.data) v = std::clamp(v, 0.02, 0.98);
  tex.blemish_count = static_cast<int>(marks.size());
  return tex;
}

double sample_floor(const FloorTexture& tex, double wx, double wy) {
  // texel centers at origin + (i + 0.5) * scale; periodic continuation
  double tx = (wx - tex.origin_x) / tex.scale - 0.5;
  double ty = (wy - tex.origin_y) / tex.scale - 0.5;
  const int w = tex.image.width, h = tex.image.height;

  const double fx = tx - std::floor(tx);
  const double fy = ty - std::floor(ty);
  const int x0 = static_cast<int>(std::floor(tx));
  const int y0 = static_cast<int>(std::floor(ty));

  auto wrap = [](int a, int n) { return ((a % n) + n) % n; };
  const int xa = wrap(x0, w), xb = wrap(x0 + 1, w);
  const int ya = wrap(y0, h), yb = wrap(y0 + 1, h);

  return tex.image.at(xa, ya) * (1 - fx) * (1 - fy) +
         tex.image.at(xb, ya) * fx * (1 - fy) +
         tex.image.at(xa, yb) * (1 - fx) * fy +
         tex.image.at(xb, yb) * fx * fy;
}

std::vector<PoseSE2> gen_trajectory(const TrajectorySpec& spec) {
  if (spec.waypoints.size() < 2) throw ConfigError("trajectory needs >= 2 waypoints");
  if (!(spec.step > 0)) throw ConfigError("trajectory step must be positive");

  std::vector<double> seg_len;
  double total = 0.0;
  for (size_t i = 0; i + 1 < spec.waypoints.size(); ++i) {
    const double l = (spec.waypoints[i + 1] - spec.waypoints[i]).norm();
    seg_len.push_back(l);
    total += l;
  }
  if (total <= 0) throw ConfigError("trajectory has zero length");

  std::vector<PoseSE2> forward;
  for (double s = 0.0; s <= total + 1e-9; s += spec.step) {
    double remaining = std::min(s, total);
    size_t seg = 0;
    while (seg + 1 < seg_len.size() && remaining > seg_len[seg] + 1e-12) {
      remaining -= seg_len[seg];
      ++seg;
    }
    const Eigen::Vector2d dir =
        (spec.waypoints[seg + 1] - spec.waypoints[seg]) / seg_len[seg];
    const Eigen::Vector2d pos = spec.waypoints[seg] + remaining * dir;
    forward.push_back({pos.x(), pos.y(), std::atan2(dir.y(), dir.x())});
  }

  if (!spec.reverse_pass) return forward;

  std::vector<PoseSE2> out = forward;
  for (auto it = forward.rbegin(); it != forward.rend(); ++it)
    out.push_back({it->x, it->y, wrap_angle(it->theta + M_PI)});
  return out;
}

namespace {

double wall_stripe(double azimuth) {
  // odd harmonic so opposing headings land in anti-phase
  return 0.4 + 0.25 * std::cos(13.0 * azimuth);
}

}  // namespace

ImageGray render_view(const FloorTexture& tex, const PoseSE2& pose,
                      const CameraModel& cam, int out_w, int out_h) {
  const Eigen::Matrix3d r_body = camera_to_body_rotation(cam);
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  Eigen::Matrix3d rz;
  rz << c, -s, 0, s, c, 0, 0, 0, 1;
  const Eigen::Matrix3d r_world = rz * r_body;

  // pre: some floor is visible (check the most downward-looking pixel)
  {
    const Eigen::Vector3d d = r_body * Eigen::Vector3d(0.0, (out_h - 1 - cam.cy) / cam.fy, 1.0);
    if (-d.z() <= 1e-12) throw NoFloorVisible("camera sees no floor");
  }

  ImageGray img(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    for (int u = 0; u < out_w; ++u) {
      const Eigen::Vector3d ray((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
      const Eigen::Vector3d d = r_world * ray;
      const double descent = -d.z();
      if (descent <= 1e-12) {
        img.at(u, v) = wall_stripe(std::atan2(d.y(), d.x()));
        continue;
      }
      const double t = cam.height_above_floor / descent;
      const double wx = pose.x + t * d.x();
      const double wy = pose.y + t * d.y();
      img.at(u, v) = std::clamp(sample_floor(tex, wx, wy), 0.0, 1.0);
    }
  }
  return img;
}

DepthMap render_depth(const PoseSE2& pose, const CameraModel& cam, int out_w, int out_h) {
  (void)pose;  // depth depends only on the camera mounting
  const Eigen::Matrix3d r_body = camera_to_body_rotation(cam);
  {
    const Eigen::Vector3d d = r_body * Eigen::Vector3d(0.0, (out_h - 1 - cam.cy) / cam.fy, 1.0);
    if (-d.z() <= 1e-12) throw NoFloorVisible("camera sees no floor");
  }

  DepthMap depth;
  depth.width = out_w;
  depth.height = out_h;
  depth.data.assign(static_cast<size_t>(out_w) * out_h, -1.0f);
  for (int v = 0; v < out_h; ++v) {
    for (int u = 0; u < out_w; ++u) {
      const Eigen::Vector3d ray((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
      const double descent = -(r_body * ray).z();
      if (descent <= 1e-12) continue;
      depth.data[static_cast<size_t>(v) * out_w + u] =
          static_cast<float>(cam.height_above_floor / descent);
    }
  }
  return depth;
}

DepthMap read_depth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  uint32_t w = 0, h = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&w), 4);
  in.read(reinterpret_cast<char*>(&h), 4);
  if (!in || std::memcmp(magic, "FLDP", 4) != 0)
    throw ParseError("bad depth raster header in " + path.string());
  DepthMap depth;
  depth.width = static_cast<int>(w);
  depth.height = static_cast<int>(h);
  depth.data.resize(static_cast<size_t>(w) * h);
  in.read(reinterpret_cast<char*>(depth.data.data()),
          static_cast<std::streamsize>(depth.data.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(depth.data.size() * sizeof(float)))
    throw ParseError("truncated depth raster " + path.string());
  return depth;
}

void write_depth(const DepthMap& depth, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const uint32_t w = static_cast<uint32_t>(depth.width);
  const uint32_t h = static_cast<uint32_t>(depth.height);
  out.write("FLDP", 4);
  out.write(reinterpret_cast<const char*>(&w), 4);
  out.write(reinterpret_cast<const char*>(&h), 4);
  out.write(reinterpret_cast<const char*>(depth.data.data()),
            static_cast<std::streamsize>(depth.data.size() * sizeof(float)));
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<PoseSE2> perturb_odometry(const std::vector<PoseSE2>& gt_poses,
                                      const OdometryNoise& noise) {
  if (gt_poses.size() < 2) throw ConfigError("need at least 2 poses");
  Rng rng(noise.seed);
  std::vector<PoseSE2> rel;
  rel.reserve(gt_poses.size() - 1);
  for (size_t k = 0; k + 1 < gt_poses.size(); ++k) {
    PoseSE2 d = se2_compose(se2_inverse(gt_poses[k]), gt_poses[k + 1]);
    d.x += rng.normal(0.0, noise.sigma_trans);
    d.y += rng.normal(0.0, noise.sigma_trans);
    d.theta = wrap_angle(d.theta + rng.normal(0.0, noise.sigma_rot));
    rel.push_back(d);
  }
  return rel;
}

void default_floor_rect(const CameraModel& cam, int image_w, int image_h,
                        double& near, double& far, double& half_width) {
  auto floor_x = [&](double v) -> double {
    // center-column floor distance for image row v
    const double descent =
        std::cos(cam.pitch) * (v - cam.cy) / cam.fy + std::sin(cam.pitch);
    if (descent <= 1e-9) return 1e9;  // above horizon
    const double lambda = cam.height_above_floor / descent;
    const Eigen::Vector3d p =
        camera_to_body_rotation(cam) * Eigen::Vector3d(0.0, (v - cam.cy) / cam.fy, 1.0);
    return lambda * p.x();
  };

  const double x_bottom = floor_x(image_h - 1.0);
  double x_top = floor_x(0.0);
  if (x_top > 1e8) x_top = 6.0 * cam.height_above_floor;  // horizon in view: cap

  if (x_bottom < 0.0) {
    // the camera sees behind its footpoint: use a symmetric rectangle so a
    // pi-rotated opposing view covers exactly the same floor
    const double d = 0.9 * std::min(x_top, -x_bottom);
    near = -d;
    far = d;
  } else {
    const double span = x_top - x_bottom;
    near = x_bottom + 0.06 * span;
    far = x_top - 0.10 * span;
  }
  half_width = 0.5 * (far - near);

  auto corners_visible = [&](double n, double f, double hw) {
    const PoseSE2 origin{0, 0, 0};
    const double margin = 2.0;
    for (const auto& corner :
         {Eigen::Vector2d(f, hw), Eigen::Vector2d(f, -hw),
          Eigen::Vector2d(n, -hw), Eigen::Vector2d(n, hw)}) {
      const auto px = ground_to_pixel(cam, origin, corner);
      if (!px) return false;
      if (px->u < margin || px->u > image_w - 1 - margin ||
          px->v < margin || px->v > image_h - 1 - margin)
        return false;
    }
    return true;
  };

  for (int i = 0; i < 200 && !corners_visible(near, far, half_width); ++i)
    half_width *= 0.97;
  if (!corners_visible(near, far, half_width))
    throw NoFloorVisible("no floor rectangle fits the camera view");
}

std::vector<PixelPoint> floor_anchor_points(const CameraModel& cam,
                                            double near, double far, double half_width) {
  const PoseSE2 origin{0, 0, 0};
  std::vector<PixelPoint> anchors;
  for (const auto& corner :
       {Eigen::Vector2d(far, half_width), Eigen::Vector2d(far, -half_width),
        Eigen::Vector2d(near, -half_width), Eigen::Vector2d(near, half_width)}) {
    const auto px = ground_to_pixel(cam, origin, corner);
    if (!px) throw NoFloorVisible("floor rectangle corner not visible");
    anchors.push_back(*px);
  }
  return anchors;
}

namespace {

std::string frame_name(int id, const char* dir, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s/%06d.%s", dir, id, ext);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

DatasetManifest generate_dataset(const SimSpec& spec, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir / "frames", ec);
  fs::create_directories(out_dir / "depth", ec);
  if (ec) throw IoError("cannot create dataset directories under " + out_dir.string());

  TrajectorySpec traj;
  traj.step = spec.step;
  traj.waypoints = spec.waypoints;
  traj.reverse_pass = spec.reverse_pass;
  const std::vector<PoseSE2> gt = gen_trajectory(traj);

  // Texture sized to the trajectory footprint plus the camera's reach.
  double near, far, half_width;
  default_floor_rect(spec.camera, spec.image_w, spec.image_h, near, far, half_width);
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const auto& p : gt) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double reach = std::abs(far) + std::abs(near) + half_width + 1.0;
  FloorTexture tex = gen_floor_texture(
      mix_seed(spec.seed, 0xf100d),
      static_cast<int>(std::ceil((max_x - min_x + 2 * reach) / spec.texture_scale)),
      static_cast<int>(std::ceil((max_y - min_y + 2 * reach) / spec.texture_scale)),
      spec.tile_period, spec.blemish_density, spec.texture_scale);
  tex.origin_x = min_x - reach;
  tex.origin_y = min_y - reach;

  OdometryNoise noise = spec.noise;
  noise.seed = mix_seed(spec.seed, 0x0d0);
  const std::vector<PoseSE2> odom = perturb_odometry(gt, noise);

  DatasetManifest manifest;
  manifest.camera = spec.camera;
  manifest.image_w = spec.image_w;
  manifest.image_h = spec.image_h;
  manifest.seed = spec.seed;
  manifest.name = spec.name;
  manifest.step = spec.step;
  manifest.reverse_pass = spec.reverse_pass;
  manifest.floor_anchors = floor_anchor_points(spec.camera, near, far, half_width);
  manifest.rect_near = near;
  manifest.rect_far = far;
  manifest.rect_half_width = half_width;

  for (int id = 0; id < static_cast<int>(gt.size()); ++id) {
    FrameRecord rec;
    rec.id = id;
    rec.image_path = frame_name(id, "frames", "pgm");
    rec.depth_path = frame_name(id, "depth", "f32");
    rec.ground_truth = gt[id];
    if (id >= 1) rec.odometry = odom[id - 1];

    write_pgm(render_view(tex, gt[id], spec.camera, spec.image_w, spec.image_h),
              out_dir / rec.image_path);
    write_depth(render_depth(gt[id], spec.camera, spec.image_w, spec.image_h),
                out_dir / rec.depth_path);
    manifest.frames.push_back(std::move(rec));
  }

  save_manifest(manifest, out_dir / "manifest.txt");

  // ground truth CSV
  {
    std::ofstream gt_csv(out_dir / "gt.csv");
    gt_csv << "id,x,y,theta\n";
    for (const auto& f : manifest.frames)
      gt_csv << f.id << "," << fmt(f.ground_truth.x) << "," << fmt(f.ground_truth.y)
             << "," << fmt(f.ground_truth.theta) << "\n";
  }

  // dead-reckoned vertices + noisy odometry chain
  {
    std::ofstream g2o(out_dir / "odom.g2o");
    PoseSE2 dead = gt[0];
    g2o << "VERTEX_SE2 0 " << fmt(dead.x) << " " << fmt(dead.y) << " "
        << fmt(dead.theta) << "\n";
    for (size_t k = 0; k < odom.size(); ++k) {
      dead = se2_compose(dead, odom[k]);
      g2o << "VERTEX_SE2 " << k + 1 << " " << fmt(dead.x) << " " << fmt(dead.y) << " "
          << fmt(dead.theta) << "\n";
    }
    for (size_t k = 0; k < odom.size(); ++k) {
      g2o << "EDGE_SE2 " << k << " " << k + 1 << " " << fmt(odom[k].x) << " "
          << fmt(odom[k].y) << " " << fmt(odom[k].theta)
          << " 20 0 0 20 0 20\n";
    }
  }

  return manifest;
}

void save_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "format=floorloop-dataset-v1\n";
  out << "name=" << m.name << "\n";
  out << "seed=" << m.seed << "\n";
  out << "frame_count=" << m.frames.size() << "\n";
  out << "step=" << fmt(m.step) << "\n";
  out << "reverse_pass=" << (m.reverse_pass ? 1 : 0) << "\n";
  out << "image.width=" << m.image_w << "\n";
  out << "image.height=" << m.image_h << "\n";
  out << "camera.fx=" << fmt(m.camera.fx) << "\n";
  out << "camera.fy=" << fmt(m.camera.fy) << "\n";
  out << "camera.cx=" << fmt(m.camera.cx) << "\n";
  out << "camera.cy=" << fmt(m.camera.cy) << "\n";
  out << "camera.height=" << fmt(m.camera.height_above_floor) << "\n";
  out << "camera.pitch=" << fmt(m.camera.pitch) << "\n";
  out << "rect.near=" << fmt(m.rect_near) << "\n";
  out << "rect.far=" << fmt(m.rect_far) << "\n";
  out << "rect.half_width=" << fmt(m.rect_half_width) << "\n";
  out << "anchors=";
  for (size_t i = 0; i < m.floor_anchors.size(); ++i) {
    if (i) out << " ";
    out << fmt(m.floor_anchors[i].u) << " " << fmt(m.floor_anchors[i].v);
  }
  out << "\n";
  for (const auto& f : m.frames) {
    const std::string p = "frame." + std::to_string(f.id) + ".";
    out << p << "image=" << f.image_path << "\n";
    out << p << "depth=" << f.depth_path << "\n";
    out << p << "gt=" << fmt(f.ground_truth.x) << " " << fmt(f.ground_truth.y) << " "
        << fmt(f.ground_truth.theta) << "\n";
    if (f.id >= 1)
      out << p << "odom=" << fmt(f.odometry.x) << " " << fmt(f.odometry.y) << " "
          << fmt(f.odometry.theta) << "\n";
  }
  if (!out) throw IoError("short write to " + path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const Config cfg = Config::from_file(path);
  if (cfg.get_string("format", "") != "floorloop-dataset-v1")
    throw ParseError("not a dataset manifest: " + path.string());

  DatasetManifest m;
  m.name = cfg.get_string("name", "");
  m.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
  m.step = cfg.get_double("step", 0.0);
  m.reverse_pass = cfg.get_int("reverse_pass", 1) != 0;
  m.image_w = cfg.get_int("image.width");
  m.image_h = cfg.get_int("image.height");
  m.camera.fx = cfg.get_double("camera.fx");
  m.camera.fy = cfg.get_double("camera.fy");
  m.camera.cx = cfg.get_double("camera.cx");
  m.camera.cy = cfg.get_double("camera.cy");
  m.camera.height_above_floor = cfg.get_double("camera.height");
  m.camera.pitch = cfg.get_double("camera.pitch");
  m.rect_near = cfg.get_double("rect.near", 0.0);
  m.rect_far = cfg.get_double("rect.far", 0.0);
  m.rect_half_width = cfg.get_double("rect.half_width", 0.0);

  {
    std::istringstream as(cfg.get_string("anchors"));
    double u, v;
    while (as >> u >> v) m.floor_anchors.push_back({u, v});
    if (m.floor_anchors.size() != 4)
      throw ParseError("manifest anchors must contain 4 points");
  }

  const int count = cfg.get_int("frame_count");
  for (int id = 0; id < count; ++id) {
    const std::string p = "frame." + std::to_string(id) + ".";
    FrameRecord rec;
    rec.id = id;
    rec.image_path = cfg.get_string(p + "image");
    rec.depth_path = cfg.get_string(p + "depth");
    {
      std::istringstream gs(cfg.get_string(p + "gt"));
      if (!(gs >> rec.ground_truth.x >> rec.ground_truth.y >> rec.ground_truth.theta))
        throw ParseError("bad gt for frame " + std::to_string(id));
    }
    if (id >= 1) {
      std::istringstream os(cfg.get_string(p + "odom"));
      if (!(os >> rec.odometry.x >> rec.odometry.y >> rec.odometry.theta))
        throw ParseError("bad odometry for frame " + std::to_string(id));
    }
    m.frames.push_back(std::move(rec));
  }
  return m;
}

SimSpec sim_s1() {
  SimSpec s;
  s.name = "sim-s1";
  s.waypoints = {{0.0, 0.0}, {30.0, 0.0}};
  return s;
}

SimSpec sim_s2() {
  SimSpec s;
  s.name = "sim-s2";
  s.waypoints = {{0.0, 0.0}, {18.0, 0.0}, {18.0, 12.0}};
  return s;
}

SimSpec sim_s3() {
  SimSpec s;
  s.name = "sim-s3";
  s.waypoints = {{0.0, 0.0}, {12.0, 0.0}, {12.0, 10.0}, {0.0, 10.0}};
  return s;
}

}  // namespace floorloop
