#include <doctest.h>

#include <cmath>

#include "floorloop/evalkit.hpp"
#include "floorloop/rng.hpp"

using namespace floorloop;

namespace {

Trajectory transformed(const Trajectory& t, const PoseSE2& g) {
  Trajectory out;
  for (const auto& [id, p] : t.poses) out.poses.emplace_back(id, se2_compose(g, p));
  return out;
}

Trajectory random_trajectory(int n, Rng& rng) {
  Trajectory t;
  PoseSE2 cur{0, 0, 0};
  for (int i = 0; i < n; ++i) {
    t.poses.emplace_back(i, cur);
    cur = se2_compose(cur, {0.5, rng.normal(0, 0.1), rng.normal(0, 0.1)});
  }
  return t;
}

}  // namespace

TEST_CASE("recall_at_radius: basic cases") {
  // forward query poses 0..3 at x = 0..3; reverse counterparts 10..13 at the
  // same positions
  std::map<int, PoseSE2> gt;
  for (int i = 0; i < 4; ++i) {
    gt[i] = {double(i), 0, 0};
    gt[10 + i] = {double(i), 0, M_PI};
  }
  const std::vector<int> refs = {10, 11, 12, 13};

  MatchResult perfect;
  for (int i = 0; i < 4; ++i) perfect.push_back({i, 10 + i, 0.1});
  CHECK(recall_at_radius(perfect, gt, refs, 0.5) == 1.0);

  // 2 of 4 within a 1.1 radius: matches offset by 0, 1, 2, 3 positions
  MatchResult spread = {{0, 10, 0.1}, {1, 12, 0.1}, {2, 10, 0.1}, {3, 10, 0.1}};
  CHECK(recall_at_radius(spread, gt, refs, 1.1) == 0.5);

  MatchResult unknown = {{0, 99, 0.1}};
  CHECK_THROWS_AS(recall_at_radius(unknown, gt, refs, 1.0), UnknownId);
}

TEST_CASE("recall is non-decreasing in the radius") {
  Rng rng(3);
  std::map<int, PoseSE2> gt;
  std::vector<int> refs;
  MatchResult matches;
  for (int i = 0; i < 20; ++i) {
    gt[i] = {rng.uniform(0, 10), rng.uniform(0, 10), 0};
    gt[100 + i] = {rng.uniform(0, 10), rng.uniform(0, 10), 0};
    refs.push_back(100 + i);
  }
  for (int i = 0; i < 20; ++i)
    matches.push_back({i, 100 + int(rng.uniform(0, 20)), 0.1});
  double prev = 0.0;
  for (double radius : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double r = recall_at_radius(matches, gt, refs, radius);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK(prev == 1.0);
}

TEST_CASE("default_radius") {
  std::vector<PoseSE2> straight;
  for (int i = 0; i <= 30; ++i) straight.push_back({double(i), 0, 0});
  CHECK(default_radius(straight) == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<PoseSE2> square = {{0, 0, 0}, {10, 0, 0}, {10, 10, 0}, {0, 10, 0}, {0, 0, 0}};
  CHECK(default_radius(square) == doctest::Approx(40.0 / 15.0).epsilon(1e-12));

  Rng rng(5);
  std::vector<PoseSE2> poly;
  double arc = 0;
  PoseSE2 cur{0, 0, 0};
  poly.push_back(cur);
  for (int i = 0; i < 10; ++i) {
    PoseSE2 next{cur.x + rng.uniform(-2, 2), cur.y + rng.uniform(-2, 2), 0};
    arc += std::hypot(next.x - cur.x, next.y - cur.y);
    poly.push_back(next);
    cur = next;
  }
  CHECK(default_radius(poly) == doctest::Approx(arc / 15.0).epsilon(1e-12));
}

TEST_CASE("align_se2: identity and exact recovery of a rigid motion") {
  Rng rng(7);
  const Trajectory gt = random_trajectory(15, rng);

  const PoseSE2 ident = align_se2(gt, gt);
  CHECK(std::abs(ident.x) < 1e-9);
  CHECK(std::abs(ident.y) < 1e-9);
  CHECK(std::abs(ident.theta) < 1e-9);

  const PoseSE2 motion{2.5, -1.0, 0.8};
  const Trajectory moved = transformed(gt, motion);
  CHECK(ate_rmse(moved, gt, true) < 1e-9);

  const PoseSE2 g = align_se2(moved, gt);
  const PoseSE2 inv = se2_inverse(motion);
  CHECK(g.x == doctest::Approx(inv.x).epsilon(1e-9));
  CHECK(g.y == doctest::Approx(inv.y).epsilon(1e-9));
  CHECK(std::abs(wrap_angle(g.theta - inv.theta)) < 1e-9);
}

TEST_CASE("align_se2: matches a brute-force scan oracle on noisy input") {
  Rng rng(11);
  const Trajectory gt = random_trajectory(25, rng);
  Trajectory est = transformed(gt, {1.0, 2.0, 0.6});
  for (auto& [id, p] : est.poses) {
    p.x += rng.normal(0, 0.05);
    p.y += rng.normal(0, 0.05);
  }

  // oracle: scan theta, with the optimal translation in closed form per
  // theta, then refine around the best sample
  auto sse_at = [&](double theta) {
    Eigen::Vector2d ca = Eigen::Vector2d::Zero(), cb = Eigen::Vector2d::Zero();
    const int n = static_cast<int>(est.poses.size());
    for (int i = 0; i < n; ++i) {
      ca += Eigen::Vector2d(est.poses[i].second.x, est.poses[i].second.y);
      cb += Eigen::Vector2d(gt.poses[i].second.x, gt.poses[i].second.y);
    }
    ca /= n;
    cb /= n;
    const Eigen::Rotation2Dd r(theta);
    double sse = 0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d a(est.poses[i].second.x, est.poses[i].second.y);
      const Eigen::Vector2d b(gt.poses[i].second.x, gt.poses[i].second.y);
      sse += (r * (a - ca) - (b - cb)).squaredNorm();
    }
    return sse;
  };
  double best_theta = 0, best = 1e300;
  for (double t = -M_PI; t < M_PI; t += 1e-3) {
    const double s = sse_at(t);
    if (s < best) {
      best = s;
      best_theta = t;
    }
  }
  for (double span = 1e-3; span > 1e-8; span *= 0.5) {
    for (double t : {best_theta - span, best_theta + span})
      if (sse_at(t) < best) {
        best = sse_at(t);
        best_theta = t;
      }
  }

  const PoseSE2 g = align_se2(est, gt);
  CHECK(std::abs(wrap_angle(g.theta - best_theta)) < 1e-6);
}

TEST_CASE("ate_rmse: basics and invariances") {
  Rng rng(13);
  const Trajectory gt = random_trajectory(20, rng);
  CHECK(ate_rmse(gt, gt, true) < 1e-12);
  CHECK(ate_rmse(gt, gt, false) < 1e-12);

  // constant offset removed by alignment
  const Trajectory offset = transformed(gt, {3.0, -1.5, 0.0});
  CHECK(ate_rmse(offset, gt, true) < 1e-9);
  CHECK(ate_rmse(offset, gt, false) > 1.0);

  // aligned ATE never exceeds unaligned ATE
  for (int trial = 0; trial < 10; ++trial) {
    Trajectory noisy = gt;
    for (auto& [id, p] : noisy.poses) {
      p.x += rng.normal(0, 0.3);
      p.y += rng.normal(0, 0.3);
    }
    CHECK(ate_rmse(noisy, gt, true) <= ate_rmse(noisy, gt, false) + 1e-12);
  }

  // both metrics invariant to a global rigid transform of both trajectories
  Trajectory noisy = gt;
  for (auto& [id, p] : noisy.poses) p.x += rng.normal(0, 0.2);
  const PoseSE2 gmove{-4.0, 2.0, 1.1};
  CHECK(ate_rmse(transformed(noisy, gmove), transformed(gt, gmove), true) ==
        doctest::Approx(ate_rmse(noisy, gt, true)).epsilon(1e-9));

  Trajectory a, b;
  a.poses.emplace_back(0, PoseSE2{0, 0, 0});
  b.poses.emplace_back(0, PoseSE2{0, 0, 0});
  CHECK_THROWS_AS(ate_rmse(a, b, true), TooFewCommonIds);
}
