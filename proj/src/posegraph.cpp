#include "floorloop/posegraph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include <Eigen/Sparse>

namespace floorloop {

double RobustKernel::rho(double s) const {
  if (kind == Kind::None) return s;
  const double c2 = c * c;
  return c2 * std::log1p(s / c2);
}

double RobustKernel::weight(double s) const {
  if (kind == Kind::None) return 1.0;
  const double c2 = c * c;
  return 1.0 / (1.0 + s / c2);
}

void PoseGraph::add_vertex(int id, const PoseSE2& pose) {
  if (vertices.empty()) anchor_id = id;
  vertices[id] = pose;
}

void PoseGraph::add_edge(const SE2Constraint& c, EdgeKind kind) {
  if (!vertices.count(c.from_id) || !vertices.count(c.to_id))
    throw Error("edge references unknown vertex");
  edges.push_back({c, kind});
}

bool is_connected(const PoseGraph& g) {
  if (g.vertices.empty()) return true;
  if (!g.vertices.count(g.anchor_id)) return false;

  std::map<int, std::vector<int>> adj;
  for (const auto& e : g.edges) {
    adj[e.constraint.from_id].push_back(e.constraint.to_id);
    adj[e.constraint.to_id].push_back(e.constraint.from_id);
  }

  std::set<int> seen{g.anchor_id};
  std::queue<int> frontier;
  frontier.push(g.anchor_id);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int n : adj[v])
      if (seen.insert(n).second) frontier.push(n);
  }
  return seen.size() == g.vertices.size();
}

Eigen::Vector3d edge_residual(const SE2Constraint& z, const PoseSE2& xi, const PoseSE2& xj) {
  const double ci = std::cos(xi.theta), si = std::sin(xi.theta);
  const double dx = xj.x - xi.x, dy = xj.y - xi.y;
  // D = Xi^-1 * Xj
  const double rx = ci * dx + si * dy;
  const double ry = -si * dx + ci * dy;
  const double rt = xj.theta - xi.theta;
  // e = Z^-1 * D
  const double cz = std::cos(z.dtheta), sz = std::sin(z.dtheta);
  return {cz * (rx - z.dx) + sz * (ry - z.dy),
          -sz * (rx - z.dx) + cz * (ry - z.dy),
          wrap_angle(rt - z.dtheta)};
}

void edge_jacobians(const SE2Constraint& z, const PoseSE2& xi, const PoseSE2& xj,
                    Eigen::Matrix3d& ji, Eigen::Matrix3d& jj) {
  const double ci = std::cos(xi.theta), si = std::sin(xi.theta);
  const double cz = std::cos(z.dtheta), sz = std::sin(z.dtheta);
  const double dx = xj.x - xi.x, dy = xj.y - xi.y;

  Eigen::Matrix2d rz_t, ri_t, dri_t;
  rz_t << cz, sz, -sz, cz;
  ri_t << ci, si, -si, ci;
  dri_t << -si, ci, -ci, -si;  // d(Ri^T)/dtheta_i

  const Eigen::Matrix2d a = rz_t * ri_t;
  const Eigen::Vector2d dtheta_i = rz_t * (dri_t * Eigen::Vector2d(dx, dy));

  ji.setZero();
  ji.block<2, 2>(0, 0) = -a;
  ji.block<2, 1>(0, 2) = dtheta_i;
  ji(2, 2) = -1.0;

  jj.setZero();
  jj.block<2, 2>(0, 0) = a;
  jj(2, 2) = 1.0;
}

double chi2(const PoseGraph& g, const RobustKernel& kernel) {
  double total = 0.0;
  for (const auto& e : g.edges) {
    const auto& c = e.constraint;
    const Eigen::Vector3d r =
        edge_residual(c, g.vertices.at(c.from_id), g.vertices.at(c.to_id));
    total += kernel.rho(r.dot(c.information * r));
  }
  return total;
}

OptimizeResult optimize(const PoseGraph& g, const RobustKernel& kernel,
                        int max_iter, double tol) {
  if (!g.vertices.count(g.anchor_id)) throw NotConnected("anchor vertex missing");
  if (!is_connected(g)) throw NotConnected("graph not connected from anchor");

  PoseGraph cur = g;

  // contiguous block index per vertex, anchor excluded
  std::map<int, int> block;
  int nb = 0;
  for (const auto& [id, pose] : cur.vertices) {
    (void)pose;
    if (id == cur.anchor_id) continue;
    block[id] = nb++;
  }

  OptimizeResult result;
  double cur_chi2 = chi2(cur, kernel);
  result.chi2_trace.push_back(cur_chi2);

  if (nb == 0 || cur.edges.empty()) {
    result.graph = cur;
    return result;
  }

  double lambda = 1e-4;
  const int n = 3 * nb;

  for (int iter = 0; iter < max_iter; ++iter) {
    // Build robust-weighted normal equations at the current estimate.
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

    for (const auto& e : cur.edges) {
      const auto& c = e.constraint;
      const PoseSE2& xi = cur.vertices.at(c.from_id);
      const PoseSE2& xj = cur.vertices.at(c.to_id);
      const Eigen::Vector3d r = edge_residual(c, xi, xj);
      const double w = kernel.weight(r.dot(c.information * r));
      const Eigen::Matrix3d omega = w * c.information;

      Eigen::Matrix3d ji, jj;
      edge_jacobians(c, xi, xj, ji, jj);

      const bool has_i = c.from_id != cur.anchor_id;
      const bool has_j = c.to_id != cur.anchor_id;
      const int bi = has_i ? 3 * block.at(c.from_id) : -1;
      const int bj = has_j ? 3 * block.at(c.to_id) : -1;

      auto add_block = [&](int row, int col, const Eigen::Matrix3d& m) {
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) triplets.emplace_back(row + a, col + b, m(a, b));
      };

      if (has_i) {
        add_block(bi, bi, ji.transpose() * omega * ji);
        rhs.segment<3>(bi) -= ji.transpose() * omega * r;
      }
      if (has_j) {
        add_block(bj, bj, jj.transpose() * omega * jj);
        rhs.segment<3>(bj) -= jj.transpose() * omega * r;
      }
      if (has_i && has_j) {
        const Eigen::Matrix3d hij = ji.transpose() * omega * jj;
        add_block(bi, bj, hij);
        add_block(bj, bi, hij.transpose());
      }
    }

    Eigen::SparseMatrix<double> h(n, n);
    h.setFromTriplets(triplets.begin(), triplets.end());

    // Try increasingly damped steps until one lowers the robust chi2.
    bool accepted = false;
    bool solved_once = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::SparseMatrix<double> hd = h;
      for (int k = 0; k < n; ++k) {
        const double dkk = h.coeff(k, k);
        hd.coeffRef(k, k) = dkk * (1.0 + lambda) + (dkk == 0.0 ? lambda : 0.0);
      }

      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(hd);
      if (solver.info() != Eigen::Success) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd delta = solver.solve(rhs);
      if (solver.info() != Eigen::Success || !delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      solved_once = true;

      PoseGraph trial = cur;
      for (const auto& [id, bidx] : block) {
        PoseSE2& p = trial.vertices.at(id);
        p.x += delta(3 * bidx);
        p.y += delta(3 * bidx + 1);
        p.theta = wrap_angle(p.theta + delta(3 * bidx + 2));
      }

      const double trial_chi2 = chi2(trial, kernel);
      if (trial_chi2 <= cur_chi2) {
        cur = std::move(trial);
        const double improvement = cur_chi2 - trial_chi2;
        cur_chi2 = trial_chi2;
        result.chi2_trace.push_back(cur_chi2);
        lambda = std::max(lambda * 0.5, 1e-12);
        accepted = true;
        result.iterations = iter + 1;
        if (improvement < tol * std::max(cur_chi2, 1e-300) || cur_chi2 < 1e-300) {
          result.graph = cur;
          return result;
        }
        break;
      }
      lambda *= 10.0;
    }

    if (!accepted) {
      if (!solved_once)
        throw SingularNormalEquations("normal equations unsolvable at extreme damping");
      break;  // converged: no damped step improves
    }
  }

  result.graph = cur;
  return result;
}

}  // namespace floorloop
