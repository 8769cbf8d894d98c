#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>
#include <pybind11/eigen.h>

#include "floorloop/correspond.hpp"
#include "floorloop/descriptor.hpp"
#include "floorloop/evalkit.hpp"
#include "floorloop/imggeom.hpp"
#include "floorloop/pipeline.hpp"
#include "floorloop/posegraph.hpp"
#include "floorloop/registration.hpp"
#include "floorloop/simworld.hpp"

namespace py = pybind11;
using namespace floorloop;

namespace {

ImageGray image_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("image must be a 2D array");
  ImageGray img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), img.data.begin());
  return img;
}

py::array_t<double> image_to_array(const ImageGray& img) {
  py::array_t<double> a({img.height, img.width});
  std::copy(img.data.begin(), img.data.end(), a.mutable_data());
  return a;
}

PixelPoint as_point(const std::pair<double, double>& p) { return {p.first, p.second}; }

std::array<PixelPoint, 4> as_quad(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() != 4) throw py::value_error("expected exactly 4 points");
  std::array<PixelPoint, 4> q;
  for (int i = 0; i < 4; ++i) q[i] = as_point(pts[i]);
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Opposing-viewpoint loop closures from floor-patch homography";

  py::register_exception<Error>(m, "FloorloopError");

  // --- image geometry ---
  py::class_<Homography>(m, "Homography")
      .def(py::init<>())
      .def(py::init<const Eigen::Matrix3d&>())
      .def_property_readonly("matrix", &Homography::matrix)
      .def("apply",
           [](const Homography& h, double u, double v) {
             const PixelPoint p = h.apply({u, v});
             return std::make_pair(p.u, p.v);
           })
      .def("inverse", &Homography::inverse)
      .def("__matmul__", [](const Homography& a, const Homography& b) { return a * b; });

  m.def("homography_from_points",
        [](const std::vector<std::pair<double, double>>& src,
           const std::vector<std::pair<double, double>>& dst) {
          return homography_from_points(as_quad(src), as_quad(dst));
        },
        py::arg("src"), py::arg("dst"));

  m.def("warp_image",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           const Homography& h, int out_w, int out_h) {
          return image_to_array(warp_image(image_from_array(img), h, out_w, out_h));
        },
        py::arg("image"), py::arg("h"), py::arg("out_w"), py::arg("out_h"));

  m.def("rotate_pi",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img) {
          return image_to_array(rotate_pi(image_from_array(img)));
        },
        py::arg("image"));

  m.def("rotate_pi_point",
        [](double u, double v, int w, int h) {
          const PixelPoint p = rotate_pi_point({u, v}, w, h);
          return std::make_pair(p.u, p.v);
        },
        py::arg("u"), py::arg("v"), py::arg("w"), py::arg("h"));

  // --- descriptors ---
  m.def("grid_gradient_descriptor",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           int grid, int bins) {
          return grid_gradient_descriptor(image_from_array(img), grid, bins).values;
        },
        py::arg("image"), py::arg("grid") = 5, py::arg("bins") = 18);

  m.def("cosine_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return cosine_distance(make_descriptor(a), make_descriptor(b));
        },
        py::arg("a"), py::arg("b"));

  // --- registration ---
  py::class_<RigidTransform3D>(m, "RigidTransform3D")
      .def(py::init<>())
      .def_readwrite("rotation", &RigidTransform3D::rotation)
      .def_readwrite("translation", &RigidTransform3D::translation)
      .def("apply", &RigidTransform3D::apply)
      .def("inverse", &RigidTransform3D::inverse);

  m.def("kabsch_align", &kabsch_align, py::arg("p"), py::arg("q"));

  py::class_<TrimmedResult>(m, "TrimmedResult")
      .def_readonly("transform", &TrimmedResult::transform)
      .def_readonly("rms_residual", &TrimmedResult::rms_residual)
      .def_readonly("inlier_count", &TrimmedResult::inlier_count);

  m.def("trimmed_register", &trimmed_register, py::arg("p"), py::arg("q"),
        py::arg("trim_fraction") = 0.2, py::arg("max_iter") = 10);

  // --- SE(2) + pose graph ---
  py::class_<PoseSE2>(m, "PoseSE2")
      .def(py::init<>())
      .def(py::init([](double x, double y, double theta) {
             return PoseSE2{x, y, wrap_angle(theta)};
           }),
           py::arg("x"), py::arg("y"), py::arg("theta"))
      .def_readwrite("x", &PoseSE2::x)
      .def_readwrite("y", &PoseSE2::y)
      .def_readwrite("theta", &PoseSE2::theta)
      .def("__repr__", [](const PoseSE2& p) {
        return "PoseSE2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
               std::to_string(p.theta) + ")";
      });

  m.def("se2_compose", &se2_compose, py::arg("a"), py::arg("b"));
  m.def("se2_inverse", &se2_inverse, py::arg("a"));
  m.def("wrap_angle", &wrap_angle, py::arg("theta"));

  py::class_<SE2Constraint>(m, "SE2Constraint")
      .def(py::init([](int from_id, int to_id, double dx, double dy, double dtheta,
                       const Eigen::Matrix3d& information) {
             return SE2Constraint{from_id, to_id, dx, dy, dtheta, information};
           }),
           py::arg("from_id"), py::arg("to_id"), py::arg("dx"), py::arg("dy"),
           py::arg("dtheta"), py::arg("information") = Eigen::Matrix3d::Identity())
      .def_readwrite("from_id", &SE2Constraint::from_id)
      .def_readwrite("to_id", &SE2Constraint::to_id)
      .def_readwrite("dx", &SE2Constraint::dx)
      .def_readwrite("dy", &SE2Constraint::dy)
      .def_readwrite("dtheta", &SE2Constraint::dtheta)
      .def_readwrite("information", &SE2Constraint::information);

  py::enum_<EdgeKind>(m, "EdgeKind")
      .value("Odometry", EdgeKind::Odometry)
      .value("Loop", EdgeKind::Loop);

  py::class_<RobustKernel>(m, "RobustKernel")
      .def_static("none", &RobustKernel::none)
      .def_static("cauchy", &RobustKernel::cauchy, py::arg("c"))
      .def("rho", &RobustKernel::rho)
      .def("weight", &RobustKernel::weight);

  py::class_<PoseGraph>(m, "PoseGraph")
      .def(py::init<>())
      .def_readwrite("anchor_id", &PoseGraph::anchor_id)
      .def("add_vertex", &PoseGraph::add_vertex, py::arg("id"), py::arg("pose"))
      .def("add_edge", &PoseGraph::add_edge, py::arg("constraint"),
           py::arg("kind") = EdgeKind::Odometry)
      .def("vertex", [](const PoseGraph& g, int id) { return g.vertices.at(id); })
      .def_property_readonly("vertex_ids", [](const PoseGraph& g) {
        std::vector<int> ids;
        for (const auto& [id, p] : g.vertices) ids.push_back(id);
        return ids;
      })
      .def_property_readonly("edge_count",
                             [](const PoseGraph& g) { return g.edges.size(); });

  m.def("chi2", &chi2, py::arg("graph"), py::arg("kernel") = RobustKernel::none());

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("graph", &OptimizeResult::graph)
      .def_readonly("chi2_trace", &OptimizeResult::chi2_trace)
      .def_readonly("iterations", &OptimizeResult::iterations);

  m.def("optimize", &optimize, py::arg("graph"),
        py::arg("kernel") = RobustKernel::none(), py::arg("max_iter") = 100,
        py::arg("tol") = 1e-9);

  m.def("parse_g2o", &parse_g2o, py::arg("text"));
  m.def("write_g2o", &write_g2o, py::arg("graph"));

  // --- evaluation ---
  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<>())
      .def(py::init([](const std::vector<std::pair<int, PoseSE2>>& poses) {
             Trajectory t;
             t.poses = poses;
             return t;
           }),
           py::arg("poses"))
      .def_readwrite("poses", &Trajectory::poses);

  m.def("ate_rmse", &ate_rmse, py::arg("est"), py::arg("gt"), py::arg("align") = true);
  m.def("default_radius", &default_radius, py::arg("gt_poses"));

  // --- simulation + pipeline ---
  py::class_<SimSpec>(m, "SimSpec")
      .def(py::init<>())
      .def_readwrite("seed", &SimSpec::seed)
      .def_readwrite("name", &SimSpec::name)
      .def_readwrite("step", &SimSpec::step)
      .def_readwrite("reverse_pass", &SimSpec::reverse_pass)
      .def_readwrite("blemish_density", &SimSpec::blemish_density)
      .def_readwrite("tile_period", &SimSpec::tile_period)
      .def_property(
          "waypoints",
          [](const SimSpec& s) {
            std::vector<std::pair<double, double>> out;
            for (const auto& w : s.waypoints) out.emplace_back(w.x(), w.y());
            return out;
          },
          [](SimSpec& s, const std::vector<std::pair<double, double>>& pts) {
            s.waypoints.clear();
            for (const auto& [x, y] : pts) s.waypoints.emplace_back(x, y);
          });

  m.def("sim_s1", &sim_s1);
  m.def("sim_s2", &sim_s2);
  m.def("sim_s3", &sim_s3);

  m.def("generate_dataset",
        [](const SimSpec& spec, const std::string& out_dir) {
          generate_dataset(spec, out_dir);
        },
        py::arg("spec"), py::arg("out_dir"));

  m.def("run_pipeline",
        [](const std::map<std::string, std::string>& config) {
          Config cfg;
          for (const auto& [k, v] : config) cfg.set(k, v);
          const VariantMetrics r = run_pipeline(cfg);
          py::dict d;
          d["variant"] = variant_name(r.variant);
          d["recall"] = r.recall;
          d["radius"] = r.radius;
          d["median_inliers"] = r.median_inliers;
          d["median_total"] = r.median_total;
          d["accepted_loops"] = r.accepted_loops;
          d["ate_odometry"] = r.ate_odometry;
          d["ate_optimized"] = r.ate_optimized;
          return d;
        },
        py::arg("config"));
}
