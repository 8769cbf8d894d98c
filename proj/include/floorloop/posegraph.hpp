#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "floorloop/errors.hpp"
#include "floorloop/se2.hpp"

namespace floorloop {

enum class EdgeKind { Odometry, Loop };

struct PoseGraphEdge {
  SE2Constraint constraint;
  EdgeKind kind = EdgeKind::Odometry;
};

struct RobustKernel {
  enum class Kind { None, Cauchy };
  Kind kind = Kind::None;
  double c = 1.0;  // scale on the chi2 scale

  static RobustKernel none() { return {Kind::None, 1.0}; }
  static RobustKernel cauchy(double c) { return {Kind::Cauchy, c}; }

  double rho(double s) const;
  double weight(double s) const;  // rho'(s)
};

struct PoseGraph {
  std::map<int, PoseSE2> vertices;
  std::vector<PoseGraphEdge> edges;
  int anchor_id = 0;

  void add_vertex(int id, const PoseSE2& pose);
  void add_edge(const SE2Constraint& c, EdgeKind kind);
};

bool is_connected(const PoseGraph& g);

// r = t2v(Z^-1 * (Xi^-1 * Xj)), angle wrapped to (-pi, pi].
Eigen::Vector3d edge_residual(const SE2Constraint& z, const PoseSE2& xi, const PoseSE2& xj);

// Analytic Jacobians of edge_residual w.r.t. (xi, xj).
void edge_jacobians(const SE2Constraint& z, const PoseSE2& xi, const PoseSE2& xj,
                    Eigen::Matrix3d& ji, Eigen::Matrix3d& jj);

double chi2(const PoseGraph& g, const RobustKernel& kernel);

struct OptimizeResult {
  PoseGraph graph;
  std::vector<double> chi2_trace;  // initial value plus every accepted step
  int iterations = 0;
};

// Damped Gauss-Newton with iteratively reweighted robust least squares.
// The anchor vertex is held fixed; steps are accepted only when the robust
// chi2 decreases, so the trace is non-increasing.
OptimizeResult optimize(const PoseGraph& g, const RobustKernel& kernel,
                        int max_iter = 100, double tol = 1e-9);

// g2o text interchange: VERTEX_SE2 and EDGE_SE2 records only.
PoseGraph parse_g2o(const std::string& text);
std::string write_g2o(const PoseGraph& g);

}  // namespace floorloop
