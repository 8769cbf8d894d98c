#include "floorloop/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "floorloop/correspond.hpp"
#include "floorloop/evalkit.hpp"
#include "floorloop/registration.hpp"
#include "floorloop/svg.hpp"

namespace floorloop {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void require_artifact(const fs::path& p, const std::string& producer) {
  if (!fs::exists(p))
    throw MissingUpstreamArtifact(p.string() + " missing; run `" + producer + "` first");
}

DatasetManifest manifest_for(const Config& cfg) {
  const fs::path path = dataset_dir(cfg) / "manifest.txt";
  require_artifact(path, "simulate");
  return load_manifest(path);
}

// Query ids: forward pass; reference ids: reverse pass.
void split_passes(const DatasetManifest& m, std::vector<int>& query_ids,
                  std::vector<int>& ref_ids) {
  query_ids.clear();
  ref_ids.clear();
  if (m.reverse_pass) {
    const int n = static_cast<int>(m.frames.size()) / 2;
    for (const auto& f : m.frames)
      (f.id < n ? query_ids : ref_ids).push_back(f.id);
  } else {
    for (const auto& f : m.frames) {
      query_ids.push_back(f.id);
      ref_ids.push_back(f.id);
    }
  }
}

ImageGray load_frame(const Config& cfg, const DatasetManifest& m, int id) {
  return read_pgm(dataset_dir(cfg) / m.frames.at(id).image_path);
}

std::map<int, PoseSE2> gt_by_id(const DatasetManifest& m) {
  std::map<int, PoseSE2> out;
  for (const auto& f : m.frames) out[f.id] = f.ground_truth;
  return out;
}

Eigen::Matrix3d diag_info(const Config& cfg, const std::string& key,
                          double d0, double d1, double d2) {
  Eigen::Vector3d d(d0, d1, d2);
  if (cfg.has(key)) {
    std::istringstream in(cfg.get_string(key));
    if (!(in >> d(0) >> d(1) >> d(2)))
      throw ConfigError("config field " + key + ": expected 3 numbers");
  }
  return d.asDiagonal();
}

DetectorParams detector_params(const Config& cfg) {
  DetectorParams p;
  p.max_keypoints = cfg.get_int("detector.max_keypoints", 200);
  p.nms_radius = cfg.get_double("detector.nms_radius", 8.0);
  return p;
}

MatcherParams matcher_params(const Config& cfg) {
  MatcherParams p;
  p.patch = cfg.get_int("matcher.patch", 17);
  p.ratio = cfg.get_double("matcher.ratio", 0.9);
  return p;
}

int patch_w(const Config& cfg) { return cfg.get_int("homography.patch_w", 300); }
int patch_h(const Config& cfg) { return cfg.get_int("homography.patch_h", 300); }

struct ShortlistRow {
  int query_id, ref_id;
  double distance;
};

std::vector<ShortlistRow> read_shortlist(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingUpstreamArtifact(path.string() + " missing; run `match` first");
  std::vector<ShortlistRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ShortlistRow r;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &r.query_id, &r.ref_id, &r.distance) != 3)
      throw ParseError("bad shortlist row: " + line);
    rows.push_back(r);
  }
  return rows;
}

std::string pair_file(int q, int m) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "pair_%06d_%06d.csv", q, m);
  return buf;
}

}  // namespace

fs::path out_dir(const Config& cfg) {
  return fs::path(cfg.get_string("out.dir", "out"));
}

fs::path dataset_dir(const Config& cfg) {
  if (cfg.has("dataset.dir")) return fs::path(cfg.get_string("dataset.dir"));
  return out_dir(cfg) / "dataset";
}

SimSpec sim_spec_from_config(const Config& cfg) {
  const std::string name = cfg.get_string("sim.name", "sim-s1");
  SimSpec spec;
  if (name == "sim-s1") spec = sim_s1();
  else if (name == "sim-s2") spec = sim_s2();
  else if (name == "sim-s3") spec = sim_s3();
  else if (name == "custom") spec.name = "custom";
  else throw ConfigError("sim.name must be sim-s1, sim-s2, sim-s3 or custom");

  if (cfg.has("sim.waypoints")) {
    spec.waypoints.clear();
    std::istringstream in(cfg.get_string("sim.waypoints"));
    double x, y;
    while (in >> x >> y) spec.waypoints.emplace_back(x, y);
    if (spec.waypoints.size() < 2)
      throw ConfigError("sim.waypoints needs at least 2 points");
  }

  spec.seed = static_cast<uint64_t>(cfg.get_int("seed", static_cast<int>(spec.seed)));
  spec.step = cfg.get_double("sim.step", spec.step);
  spec.reverse_pass = cfg.get_int("sim.reverse_pass", spec.reverse_pass ? 1 : 0) != 0;
  spec.tile_period = cfg.get_double("sim.tile_period", spec.tile_period);
  spec.blemish_density = cfg.get_double("sim.blemish_density", spec.blemish_density);
  spec.texture_scale = cfg.get_double("sim.texture_scale", spec.texture_scale);
  spec.noise.sigma_trans = cfg.get_double("sim.noise.sigma_trans", spec.noise.sigma_trans);
  spec.noise.sigma_rot = cfg.get_double("sim.noise.sigma_rot", spec.noise.sigma_rot);
  spec.image_w = cfg.get_int("image.width", spec.image_w);
  spec.image_h = cfg.get_int("image.height", spec.image_h);
  spec.camera.fx = cfg.get_double("camera.fx", spec.camera.fx);
  spec.camera.fy = cfg.get_double("camera.fy", spec.camera.fy);
  spec.camera.cx = cfg.get_double("camera.cx", spec.camera.cx);
  spec.camera.cy = cfg.get_double("camera.cy", spec.camera.cy);
  spec.camera.height_above_floor = cfg.get_double("camera.height", spec.camera.height_above_floor);
  spec.camera.pitch = cfg.get_double("camera.pitch", spec.camera.pitch);
  return spec;
}

Homography floor_homography(const Config& cfg, const DatasetManifest& manifest) {
  if (cfg.has("homography.matrix")) {
    // 9 whitespace-separated numbers, row-major
    std::istringstream in(cfg.get_string("homography.matrix"));
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (!(in >> m(r, c)))
          throw ConfigError("homography.matrix: expected 9 numbers");
    try {
      return Homography(m);
    } catch (const SingularMatrix&) {
      throw ConfigError("homography.matrix: matrix is singular");
    }
  }

  std::array<PixelPoint, 4> src;
  if (cfg.has("homography.anchors")) {
    std::istringstream in(cfg.get_string("homography.anchors"));
    for (auto& p : src)
      if (!(in >> p.u >> p.v))
        throw ConfigError("homography.anchors: expected 8 numbers");
  } else if (manifest.floor_anchors.size() == 4) {
    for (int i = 0; i < 4; ++i) src[i] = manifest.floor_anchors[i];
  } else {
    // generic trapezoid over the lower 40% of the image
    const double w = manifest.image_w, h = manifest.image_h;
    src = {PixelPoint{0.30 * w, 0.60 * h}, PixelPoint{0.70 * w, 0.60 * h},
           PixelPoint{0.95 * w, h - 1.0}, PixelPoint{0.05 * w, h - 1.0}};
  }
  const double pw = patch_w(cfg) - 1.0, ph = patch_h(cfg) - 1.0;
  const std::array<PixelPoint, 4> dst = {PixelPoint{0, 0}, PixelPoint{pw, 0},
                                         PixelPoint{pw, ph}, PixelPoint{0, ph}};
  return homography_from_points(src, dst);
}

Trajectory dead_reckoned_trajectory(const DatasetManifest& m) {
  Trajectory t;
  PoseSE2 pose = m.frames.front().ground_truth;
  t.poses.emplace_back(m.frames.front().id, pose);
  for (size_t i = 1; i < m.frames.size(); ++i) {
    pose = se2_compose(pose, m.frames[i].odometry);
    t.poses.emplace_back(m.frames[i].id, pose);
  }
  return t;
}

Trajectory ground_truth_trajectory(const DatasetManifest& m) {
  Trajectory t;
  for (const auto& f : m.frames) t.poses.emplace_back(f.id, f.ground_truth);
  return t;
}

void stage_simulate(const Config& cfg) {
  const SimSpec spec = sim_spec_from_config(cfg);
  generate_dataset(spec, dataset_dir(cfg));
}

void stage_describe(const Config& cfg, VariantTag variant) {
  const DatasetManifest m = manifest_for(cfg);
  const fs::path out = out_dir(cfg);
  fs::create_directories(out);

  std::vector<int> query_ids, ref_ids;
  split_passes(m, query_ids, ref_ids);

  DescriptorSet set;
  set.variant_tag = variant;

  if (cfg.has("descriptor.file")) {
    std::vector<int> all_ids;
    for (const auto& f : m.frames) all_ids.push_back(f.id);
    set = load_descriptors(cfg.get_string("descriptor.file"), all_ids);
    set.variant_tag = variant;
  } else {
    const int grid = cfg.get_int("descriptor.grid", 5);
    const int bins = cfg.get_int("descriptor.bins", 18);
    const bool warped = variant == VariantTag::Homo || variant == VariantTag::HomoPiRot;
    const Homography h = warped ? floor_homography(cfg, m) : Homography();
    const int pw = patch_w(cfg), ph = patch_h(cfg);

    const std::set<int> ref_set(ref_ids.begin(), ref_ids.end());
    for (const auto& f : m.frames) {
      ImageGray img = load_frame(cfg, m, f.id);
      const bool is_ref = ref_set.count(f.id) > 0;
      if (warped) img = warp_image(img, h, pw, ph);
      if (is_ref) {
        if (variant == VariantTag::HomoPiRot) img = rotate_pi(img);
        if (variant == VariantTag::FlipLR) img = flip_horizontal(img);
      }
      set.image_ids.push_back(f.id);
      set.descriptors.push_back(grid_gradient_descriptor(img, grid, bins));
    }
  }

  save_descriptors(set, out / ("descriptors_" + variant_name(variant) + ".txt"));
}

namespace {

// Splits the single per-dataset descriptor file into query/reference sets.
std::pair<DescriptorSet, DescriptorSet> load_split_descriptors(
    const Config& cfg, const DatasetManifest& m, VariantTag variant) {
  const fs::path path =
      out_dir(cfg) / ("descriptors_" + variant_name(variant) + ".txt");
  require_artifact(path, "describe");

  std::vector<int> query_ids, ref_ids;
  split_passes(m, query_ids, ref_ids);

  DescriptorSet q = load_descriptors(path, query_ids);
  DescriptorSet r = load_descriptors(path, ref_ids);
  q.variant_tag = r.variant_tag = variant;
  return {std::move(q), std::move(r)};
}

}  // namespace

void stage_match(const Config& cfg, VariantTag variant) {
  const DatasetManifest m = manifest_for(cfg);
  const fs::path out = out_dir(cfg);
  const std::string v = variant_name(variant);

  auto [q, r] = load_split_descriptors(cfg, m, variant);
  const CostMatrix c = cost_matrix(q, r);
  const std::vector<BestMatch> matches = best_matches(c);
  const std::vector<LoopCandidate> candidates = resolve_match_ids(matches, q, r);
  const std::vector<LoopCandidate> shortlist =
      shortlist_top_k(candidates, cfg.get_int("shortlist.k", 20));

  {
    std::ofstream f(out / ("cost_" + v + ".csv"));
    for (int i = 0; i < c.rows; ++i) {
      for (int j = 0; j < c.cols; ++j) f << (j ? "," : "") << fmt(c.at(i, j));
      f << "\n";
    }
  }
  {
    std::ofstream f(out / ("matches_" + v + ".csv"));
    f << "query_id,ref_id,distance\n";
    for (const auto& lc : candidates)
      f << lc.query_id << "," << lc.ref_id << "," << fmt(lc.distance) << "\n";
  }
  {
    std::ofstream f(out / ("shortlist_" + v + ".csv"));
    f << "query_id,ref_id,distance\n";
    for (const auto& lc : shortlist)
      f << lc.query_id << "," << lc.ref_id << "," << fmt(lc.distance) << "\n";
  }
  write_text_file(svg_heatmap(c), out / ("heatmap_" + v + ".svg"));
}

void stage_correspond(const Config& cfg, VariantTag variant) {
  const DatasetManifest m = manifest_for(cfg);
  const fs::path out = out_dir(cfg);
  const std::string v = variant_name(variant);
  const auto shortlist = read_shortlist(out / ("shortlist_" + v + ".csv"));

  const fs::path pair_dir = out / ("correspondences_" + v);
  fs::create_directories(pair_dir);

  const bool warped = variant == VariantTag::Homo || variant == VariantTag::HomoPiRot;
  const Homography h = warped ? floor_homography(cfg, m) : Homography();
  const int pw = warped ? patch_w(cfg) : m.image_w;
  const int ph = warped ? patch_h(cfg) : m.image_h;
  const bool rotate = variant == VariantTag::HomoPiRot;
  const DetectorParams det = detector_params(cfg);
  const MatcherParams mat = matcher_params(cfg);
  const double threshold = cfg.get_double("inlier.threshold", 3.0);
  const auto gt = gt_by_id(m);

  std::ofstream summary(out / ("corr_summary_" + v + ".csv"));
  summary << "query_id,ref_id,pairs,inliers\n";

  bool wrote_svg = false;
  for (const auto& row : shortlist) {
    const ImageGray x_q = load_frame(cfg, m, row.query_id);
    const ImageGray x_m = load_frame(cfg, m, row.ref_id);
    const CorrespondenceSet cs = correspond_pair(x_q, x_m, h, pw, ph, rotate, det, mat);

    GroundTruthGeometry geo{m.camera, gt.at(row.query_id), gt.at(row.ref_id)};
    const auto [inliers, total] = inlier_count(cs, geo, threshold);

    std::ofstream f(pair_dir / pair_file(row.query_id, row.ref_id));
    f << "q_u,q_v,m_u,m_v,qhat_u,qhat_v,mhat_u,mhat_v\n";
    for (const auto& p : cs.pairs)
      f << fmt(p.q.u) << "," << fmt(p.q.v) << "," << fmt(p.m.u) << "," << fmt(p.m.v)
        << "," << fmt(p.q_hat.u) << "," << fmt(p.q_hat.v) << "," << fmt(p.m_hat.u)
        << "," << fmt(p.m_hat.v) << "\n";

    summary << row.query_id << "," << row.ref_id << "," << total << "," << inliers << "\n";

    if (!wrote_svg) {
      std::vector<std::pair<PixelPoint, PixelPoint>> lines;
      for (const auto& p : cs.pairs) lines.emplace_back(p.q_hat, p.m_hat);
      ImageGray wq = warped ? warp_image(x_q, h, pw, ph) : x_q;
      ImageGray wm = warped ? warp_image(x_m, h, pw, ph) : x_m;
      if (rotate) wm = rotate_pi(wm);
      write_text_file(svg_match_lines(wq, wm, lines),
                      out / ("correspondences_" + v + ".svg"));
      wrote_svg = true;
    }
  }
}

void stage_register(const Config& cfg, VariantTag variant) {
  const DatasetManifest m = manifest_for(cfg);
  const fs::path out = out_dir(cfg);
  const std::string v = variant_name(variant);
  const auto shortlist = read_shortlist(out / ("shortlist_" + v + ".csv"));
  const fs::path pair_dir = out / ("correspondences_" + v);

  const double trim = cfg.get_double("register.trim", 0.2);
  const int reg_iter = cfg.get_int("register.max_iter", 10);
  const double max_rms = cfg.get_double("register.max_rms", 0.1);
  const int min_inliers = cfg.get_int("register.min_inliers", 8);
  const bool gate = cfg.get_int("register.gate", 1) != 0;
  const Eigen::Matrix3d loop_info = diag_info(cfg, "register.loop_info", 50, 50, 100);
  const Eigen::Matrix3d odom_info = diag_info(cfg, "odometry.info", 20, 20, 20);
  const std::string depth_source = cfg.get_string("depth.source", "plane");

  std::vector<SE2Constraint> loops;
  std::ofstream report(out / ("register_report_" + v + ".csv"));
  report << "query_id,ref_id,pairs,rms,inliers,accepted\n";

  for (const auto& row : shortlist) {
    const fs::path pf = pair_dir / pair_file(row.query_id, row.ref_id);
    require_artifact(pf, "correspond");

    std::vector<PixelPoint> q_px, m_px;
    {
      std::ifstream f(pf);
      std::string line;
      std::getline(f, line);  // header
      while (std::getline(f, line)) {
        if (line.empty()) continue;
        double qu, qv, mu, mv, d1, d2, d3, d4;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf",
                        &qu, &qv, &mu, &mv, &d1, &d2, &d3, &d4) != 8)
          throw ParseError("bad correspondence row in " + pf.string());
        q_px.push_back({qu, qv});
        m_px.push_back({mu, mv});
      }
    }

    bool accepted = false;
    double rms = -1.0;
    int inliers = 0;
    if (static_cast<int>(q_px.size()) >= 4) try {
      std::vector<double> q_depth, m_depth;
      if (depth_source == "plane") {
        // keep only pixels whose rays reach the floor
        std::vector<PixelPoint> q_keep, m_keep;
        for (size_t i = 0; i < q_px.size(); ++i) {
          try {
            const double a = plane_depth_single(q_px[i], m.camera);
            const double b = plane_depth_single(m_px[i], m.camera);
            q_keep.push_back(q_px[i]);
            m_keep.push_back(m_px[i]);
            q_depth.push_back(a);
            m_depth.push_back(b);
          } catch (const Error&) {
          }
        }
        q_px = std::move(q_keep);
        m_px = std::move(m_keep);
      } else if (depth_source == "file") {
        auto sample = [&](const DepthMap& dm, const PixelPoint& p) -> double {
          const int x = std::clamp(static_cast<int>(std::lround(p.u)), 0, dm.width - 1);
          const int y = std::clamp(static_cast<int>(std::lround(p.v)), 0, dm.height - 1);
          return dm.at(x, y);
        };
        const DepthMap dq = read_depth(dataset_dir(cfg) / m.frames.at(row.query_id).depth_path);
        const DepthMap dm_ = read_depth(dataset_dir(cfg) / m.frames.at(row.ref_id).depth_path);
        std::vector<PixelPoint> q_keep, m_keep;
        for (size_t i = 0; i < q_px.size(); ++i) {
          const double a = sample(dq, q_px[i]);
          const double b = sample(dm_, m_px[i]);
          if (a <= 0 || b <= 0) continue;  // invalid depth
          q_keep.push_back(q_px[i]);
          m_keep.push_back(m_px[i]);
          q_depth.push_back(a);
          m_depth.push_back(b);
        }
        q_px = std::move(q_keep);
        m_px = std::move(m_keep);
      } else {
        throw ConfigError("depth.source must be plane or file");
      }

      if (static_cast<int>(q_px.size()) >= 4) {
        const PointSet3D p3 = backproject(q_px, q_depth, m.camera);
        const PointSet3D q3 = backproject(m_px, m_depth, m.camera);
        const TrimmedResult res = trimmed_register(p3, q3, trim, reg_iter);
        rms = res.rms_residual;
        inliers = res.inlier_count;
        if (!gate || (rms <= max_rms && inliers >= min_inliers)) {
          loops.push_back(to_se2_constraint(res.transform, m.camera, row.query_id,
                                            row.ref_id, loop_info));
          accepted = true;
        }
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error&) {
      // degenerate, non-planar or depth-starved registration: reject the pair
    }
    report << row.query_id << "," << row.ref_id << "," << q_px.size() << ","
           << (rms < 0 ? "nan" : fmt(rms)) << "," << inliers << ","
           << (accepted ? 1 : 0) << "\n";
  }

  // loop constraints alone, as EDGE_SE2 lines
  {
    std::string lines;
    for (const auto& c : loops) {
      const auto& i = c.information;
      lines += "EDGE_SE2 " + std::to_string(c.from_id) + " " + std::to_string(c.to_id) +
               " " + fmt(c.dx) + " " + fmt(c.dy) + " " + fmt(c.dtheta) + " " +
               fmt(i(0, 0)) + " " + fmt(i(0, 1)) + " " + fmt(i(0, 2)) + " " +
               fmt(i(1, 1)) + " " + fmt(i(1, 2)) + " " + fmt(i(2, 2)) + "\n";
    }
    write_text_file(lines, out / ("loops_" + v + ".g2o"));
  }

  // full pose graph: dead-reckoned vertices, odometry chain, loop edges
  PoseGraph graph;
  const Trajectory dead = dead_reckoned_trajectory(m);
  for (const auto& [id, pose] : dead.poses) graph.add_vertex(id, pose);
  for (size_t i = 1; i < m.frames.size(); ++i) {
    SE2Constraint c;
    c.from_id = m.frames[i - 1].id;
    c.to_id = m.frames[i].id;
    c.dx = m.frames[i].odometry.x;
    c.dy = m.frames[i].odometry.y;
    c.dtheta = m.frames[i].odometry.theta;
    c.information = odom_info;
    graph.add_edge(c, EdgeKind::Odometry);
  }
  for (const auto& c : loops) graph.add_edge(c, EdgeKind::Loop);
  write_text_file(write_g2o(graph), out / ("posegraph_" + v + ".g2o"));
}

void stage_optimize(const Config& cfg, VariantTag variant) {
  const fs::path out = out_dir(cfg);
  const std::string v = variant_name(variant);
  const fs::path graph_path = out / ("posegraph_" + v + ".g2o");
  require_artifact(graph_path, "register");

  std::ifstream in(graph_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const PoseGraph graph = parse_g2o(buf.str());

  const std::string kind = cfg.get_string("kernel.kind", "cauchy");
  RobustKernel kernel = RobustKernel::none();
  if (kind == "cauchy") kernel = RobustKernel::cauchy(cfg.get_double("kernel.c", 1.0));
  else if (kind != "none") throw ConfigError("kernel.kind must be cauchy or none");

  const OptimizeResult res = optimize(graph, kernel,
                                      cfg.get_int("optimize.max_iter", 100),
                                      cfg.get_double("optimize.tol", 1e-9));

  write_text_file(write_g2o(res.graph), out / ("optimized_" + v + ".g2o"));
  {
    std::ofstream f(out / ("trajectory_" + v + ".csv"));
    f << "id,x,y,theta\n";
    for (const auto& [id, p] : res.graph.vertices)
      f << id << "," << fmt(p.x) << "," << fmt(p.y) << "," << fmt(p.theta) << "\n";
  }
  {
    std::ofstream f(out / ("chi2_trace_" + v + ".csv"));
    f << "step,chi2\n";
    for (size_t i = 0; i < res.chi2_trace.size(); ++i)
      f << i << "," << fmt(res.chi2_trace[i]) << "\n";
  }
}

VariantMetrics stage_evaluate(const Config& cfg, VariantTag variant) {
  const DatasetManifest m = manifest_for(cfg);
  const fs::path out = out_dir(cfg);
  const std::string v = variant_name(variant);

  VariantMetrics metrics;
  metrics.variant = variant;

  // recall
  std::vector<int> query_ids, ref_ids;
  split_passes(m, query_ids, ref_ids);
  MatchResult matches;
  {
    const fs::path path = out / ("matches_" + v + ".csv");
    require_artifact(path, "match");
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      LoopCandidate lc;
      if (std::sscanf(line.c_str(), "%d,%d,%lf", &lc.query_id, &lc.ref_id, &lc.distance) != 3)
        throw ParseError("bad match row: " + line);
      matches.push_back(lc);
    }
  }
  const auto gt = gt_by_id(m);
  std::vector<PoseSE2> gt_list;
  for (const auto& f : m.frames) gt_list.push_back(f.ground_truth);
  metrics.radius = cfg.has("evaluate.radius") ? cfg.get_double("evaluate.radius")
                                              : default_radius(gt_list);
  metrics.recall = recall_at_radius(matches, gt, ref_ids, metrics.radius);

  // inliers
  {
    const fs::path path = out / ("corr_summary_" + v + ".csv");
    require_artifact(path, "correspond");
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    std::vector<double> inliers, totals;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      int q, r, total, inl;
      if (std::sscanf(line.c_str(), "%d,%d,%d,%d", &q, &r, &total, &inl) != 4)
        throw ParseError("bad correspondence summary row: " + line);
      inliers.push_back(inl);
      totals.push_back(total);
    }
    auto median = [](std::vector<double> v) -> double {
      if (v.empty()) return 0.0;
      std::sort(v.begin(), v.end());
      const size_t n = v.size();
      return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    metrics.median_inliers = median(inliers);
    metrics.median_total = median(totals);
  }

  // trajectories + ATE
  const Trajectory gt_traj = ground_truth_trajectory(m);
  const Trajectory odom_traj = dead_reckoned_trajectory(m);
  Trajectory opt_traj;
  {
    const fs::path path = out / ("trajectory_" + v + ".csv");
    require_artifact(path, "optimize");
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      int id;
      PoseSE2 p;
      if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &id, &p.x, &p.y, &p.theta) != 4)
        throw ParseError("bad trajectory row: " + line);
      opt_traj.poses.emplace_back(id, p);
    }
  }
  metrics.ate_odometry = ate_rmse(odom_traj, gt_traj, true);
  metrics.ate_optimized = ate_rmse(opt_traj, gt_traj, true);
  metrics.ate_optimized_unaligned = ate_rmse(opt_traj, gt_traj, false);

  {
    int accepted = 0;
    const fs::path path = out / ("register_report_" + v + ".csv");
    require_artifact(path, "register");
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
      if (!line.empty() && line.back() == '1') ++accepted;
    }
    metrics.accepted_loops = accepted;
  }

  write_text_file(
      svg_trajectories({gt_traj, odom_traj, opt_traj},
                       {"ground truth", "odometry only", "optimized (" + v + ")"}),
      out / ("overlay_" + v + ".svg"));

  {
    std::ofstream f(out / ("metrics_" + v + ".csv"));
    f << "variant,recall,radius,median_inliers,median_total,accepted_loops,"
         "ate_odometry,ate_optimized,ate_optimized_unaligned\n";
    f << v << "," << fmt(metrics.recall) << "," << fmt(metrics.radius) << ","
      << fmt(metrics.median_inliers) << "," << fmt(metrics.median_total) << ","
      << metrics.accepted_loops << "," << fmt(metrics.ate_odometry) << ","
      << fmt(metrics.ate_optimized) << "," << fmt(metrics.ate_optimized_unaligned) << "\n";
  }
  {
    std::ofstream f(out / ("report_" + v + ".txt"));
    f << "dataset: " << m.name << " (" << m.frames.size() << " frames, seed "
      << m.seed << ")\n";
    f << "variant: " << v << "\n";
    f << "localization radius: " << fmt(metrics.radius) << " m\n";
    f << "recall@radius: " << fmt(metrics.recall) << "\n";
    f << "median inliers / correspondences: " << fmt(metrics.median_inliers) << " / "
      << fmt(metrics.median_total) << "\n";
    f << "accepted loop constraints: " << metrics.accepted_loops << "\n";
    f << "ATE odometry-only (aligned): " << fmt(metrics.ate_odometry) << " m\n";
    f << "ATE optimized (aligned): " << fmt(metrics.ate_optimized) << " m\n";
    f << "ATE optimized (unaligned): " << fmt(metrics.ate_optimized_unaligned) << " m\n";
  }
  return metrics;
}

void run_stage(const std::string& stage, const Config& cfg) {
  const VariantTag variant =
      variant_from_name(cfg.get_string("descriptor.variant", "homo-pirot"));
  if (stage == "simulate") stage_simulate(cfg);
  else if (stage == "describe") stage_describe(cfg, variant);
  else if (stage == "match") stage_match(cfg, variant);
  else if (stage == "correspond") stage_correspond(cfg, variant);
  else if (stage == "register") stage_register(cfg, variant);
  else if (stage == "optimize") stage_optimize(cfg, variant);
  else if (stage == "evaluate") stage_evaluate(cfg, variant);
  else throw ConfigError("unknown stage: " + stage);
}

VariantMetrics run_pipeline(const Config& cfg) {
  const VariantTag variant =
      variant_from_name(cfg.get_string("descriptor.variant", "homo-pirot"));
  stage_simulate(cfg);
  stage_describe(cfg, variant);
  stage_match(cfg, variant);
  stage_correspond(cfg, variant);
  stage_register(cfg, variant);
  stage_optimize(cfg, variant);
  return stage_evaluate(cfg, variant);
}

std::vector<VariantMetrics> run_ablation(const Config& cfg,
                                         const std::vector<VariantTag>& variants) {
  const fs::path ds = dataset_dir(cfg) / "manifest.txt";
  if (!fs::exists(ds)) stage_simulate(cfg);

  std::vector<VariantMetrics> rows;
  for (VariantTag variant : variants) {
    stage_describe(cfg, variant);
    stage_match(cfg, variant);
    stage_correspond(cfg, variant);
    stage_register(cfg, variant);
    stage_optimize(cfg, variant);
    rows.push_back(stage_evaluate(cfg, variant));
  }

  std::ostringstream rep;
  rep << "variant      recall  med_inliers/total  loops  ATE_odom  ATE_opt\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-12s %6.3f  %7.1f/%-9.1f %5d  %8.3f  %7.3f%s\n",
                  variant_name(r.variant).c_str(), r.recall, r.median_inliers,
                  r.median_total, r.accepted_loops, r.ate_odometry, r.ate_optimized,
                  r.variant == VariantTag::FlipLR ? "  (flip parity ablation)" : "");
    rep << buf;
  }
  write_text_file(rep.str(), out_dir(cfg) / "ablation_report.txt");

  std::ofstream csv(out_dir(cfg) / "ablation_report.csv");
  csv << "variant,recall,median_inliers,median_total,accepted_loops,ate_odometry,ate_optimized\n";
  for (const auto& r : rows)
    csv << variant_name(r.variant) << "," << fmt(r.recall) << "," << fmt(r.median_inliers)
        << "," << fmt(r.median_total) << "," << r.accepted_loops << ","
        << fmt(r.ate_odometry) << "," << fmt(r.ate_optimized) << "\n";

  return rows;
}

}  // namespace floorloop
