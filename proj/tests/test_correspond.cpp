#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "floorloop/correspond.hpp"
#include "floorloop/rng.hpp"
#include "floorloop/simworld.hpp"

using namespace floorloop;

namespace {

ImageGray noise_image(int w, int h, uint64_t seed) {
  ImageGray img(w, h);
  Rng rng(seed);
  for (double& v : img.data) v = rng.uniform();
  return img;
}

// opposing simulator pair with its ground-truth geometry and floor warp
struct SimPair {
  ImageGray x_q, x_m;
  GroundTruthGeometry geo;
  Homography h;
  int pw = 300, ph = 300;
};

SimPair make_sim_pair(uint64_t seed, double separation = 0.0) {
  SimSpec spec = sim_s1();
  FloorTexture tex = gen_floor_texture(seed, 800, 400, spec.tile_period,
                                       spec.blemish_density, 0.01);
  tex.origin_x = -2.0;
  tex.origin_y = -2.0;

  SimPair out;
  const PoseSE2 pose_q{1.5, 0.0, 0.0};
  const PoseSE2 pose_m{1.5 + separation, 0.0, M_PI};
  out.x_q = render_view(tex, pose_q, spec.camera, spec.image_w, spec.image_h);
  out.x_m = render_view(tex, pose_m, spec.camera, spec.image_w, spec.image_h);
  out.geo = {spec.camera, pose_q, pose_m};

  double near, far, half;
  default_floor_rect(spec.camera, spec.image_w, spec.image_h, near, far, half);
  const auto a = floor_anchor_points(spec.camera, near, far, half);
  const std::array<PixelPoint, 4> src = {a[0], a[1], a[2], a[3]};
  const std::array<PixelPoint, 4> dst = {
      PixelPoint{0, 0}, PixelPoint{out.pw - 1.0, 0},
      PixelPoint{out.pw - 1.0, out.ph - 1.0}, PixelPoint{0, out.ph - 1.0}};
  out.h = homography_from_points(src, dst);
  return out;
}

}  // namespace

TEST_CASE("detect_keypoints: constant image has none") {
  CHECK(detect_keypoints(ImageGray(32, 32, 0.5), 50, 4.0).empty());
  CHECK_THROWS_AS(detect_keypoints(ImageGray(8, 8, 0.5), 50, 4.0), ImageTooSmall);
}

TEST_CASE("detect_keypoints: single bright pixel") {
  ImageGray img(32, 32, 0.0);
  img.at(16, 16) = 1.0;
  const auto kps = detect_keypoints(img, 10, 1.0);
  REQUIRE(!kps.empty());
  for (const auto& kp : kps) {
    CHECK(std::abs(kp.position.u - 16.0) <= 2.0);
    CHECK(std::abs(kp.position.v - 16.0) <= 2.0);
  }
}

TEST_CASE("detect_keypoints: checkerboard corners") {
  const int cell = 8;
  ImageGray img(64, 64);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      img.at(x, y) = ((x / cell + y / cell) % 2) ? 0.9 : 0.1;
  const auto kps = detect_keypoints(img, 200, 4.0);
  // 7x7 interior lattice points
  CHECK(kps.size() >= 49);
  // deterministic order: descending response, then row-major
  for (size_t i = 1; i < kps.size(); ++i) CHECK(kps[i].score <= kps[i - 1].score);
}

TEST_CASE("detect_keypoints respects NMS radius and max count") {
  const ImageGray img = noise_image(64, 64, 9);
  const auto kps = detect_keypoints(img, 20, 6.0);
  CHECK(kps.size() <= 20);
  for (size_t i = 0; i < kps.size(); ++i)
    for (size_t j = i + 1; j < kps.size(); ++j) {
      const double du = kps[i].position.u - kps[j].position.u;
      const double dv = kps[i].position.v - kps[j].position.v;
      CHECK(du * du + dv * dv >= 36.0);
    }
}

TEST_CASE("match_keypoints: identical images pair identically") {
  const ImageGray img = noise_image(64, 64, 21);
  auto kps = detect_keypoints(img, 30, 5.0);
  // keypoints whose patch exits the image are skipped by contract
  std::erase_if(kps, [&](const Keypoint& kp) {
    return kp.position.u < 5 || kp.position.u > 58 || kp.position.v < 5 ||
           kp.position.v > 58;
  });
  REQUIRE(kps.size() >= 5);
  const auto pairs = match_keypoints(img, kps, img, kps, 11, 0.95);
  CHECK(pairs.size() == kps.size());
  for (const auto& [a, b] : pairs) {
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
  }
}

TEST_CASE("match_keypoints: pi-rotated image pairs via the rotation map") {
  // a pi-symmetric image so the rotated view has identical patch content;
  // plain ZNCC does not compensate rotation, which is the whole reason the
  // pipeline rotates the reference before matching
  ImageGray img = noise_image(64, 64, 23);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      const double avg = 0.5 * (img.at(x, y) + img.at(63 - x, 63 - y));
      img.at(x, y) = img.at(63 - x, 63 - y) = avg;
    }
  const ImageGray rot = rotate_pi(img);
  const auto kps = detect_keypoints(img, 30, 5.0);
  std::vector<Keypoint> kps_rot;
  for (const auto& kp : kps)
    kps_rot.push_back({rotate_pi_point(kp.position, 64, 64), kp.score});

  const auto pairs = match_keypoints(img, kps, rot, kps_rot, 11, 0.95);
  CHECK(pairs.size() >= kps.size() / 2);
  for (const auto& [a, b] : pairs) {
    // the symmetric image necessarily contains each patch twice (at p and
    // at its rotation), so either partner proves the coordinate bookkeeping
    const PixelPoint expect = rotate_pi_point(a, 64, 64);
    const bool at_rotation = std::abs(b.u - expect.u) < 1e-9 &&
                             std::abs(b.v - expect.v) < 1e-9;
    const bool at_duplicate = std::abs(b.u - a.u) < 1e-9 &&
                              std::abs(b.v - a.v) < 1e-9;
    CHECK((at_rotation || at_duplicate));
  }
}

TEST_CASE("match_keypoints: unrelated noise rarely matches") {
  int matched = 0, total = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const ImageGray a = noise_image(64, 64, 1000 + seed);
    const ImageGray b = noise_image(64, 64, 2000 + seed);
    const auto ka = detect_keypoints(a, 30, 5.0);
    const auto kb = detect_keypoints(b, 30, 5.0);
    matched += static_cast<int>(match_keypoints(a, ka, b, kb, 11, 0.9).size());
    total += static_cast<int>(ka.size());
  }
  CHECK(matched <= total / 10);
}

TEST_CASE("match_keypoints is symmetric under swapping the images") {
  const ImageGray a = noise_image(64, 64, 31);
  ImageGray b = rotate_pi(a);
  // add mild perturbation so matches are nontrivial
  Rng rng(32);
  for (double& v : b.data) v = std::clamp(v + rng.normal(0, 0.02), 0.0, 1.0);
  const auto ka = detect_keypoints(a, 25, 5.0);
  const auto kb = detect_keypoints(b, 25, 5.0);
  const auto ab = match_keypoints(a, ka, b, kb, 11, 0.9);
  const auto ba = match_keypoints(b, kb, a, ka, 11, 0.9);
  REQUIRE(ab.size() == ba.size());
  for (const auto& [pa, pb] : ab) {
    const bool found = std::any_of(ba.begin(), ba.end(), [&](const auto& q) {
      return q.first.u == pb.u && q.first.v == pb.v && q.second.u == pa.u &&
             q.second.v == pa.v;
    });
    CHECK(found);
  }
}

TEST_CASE("correspond_pair: raw self-pair gives near-identity matches") {
  const SimPair sp = make_sim_pair(41);
  const CorrespondenceSet cs = correspond_pair(sp.x_q, sp.x_q, Homography(),
                                               sp.x_q.width, sp.x_q.height, false);
  REQUIRE(cs.pairs.size() >= 10);
  for (const auto& p : cs.pairs) {
    CHECK(std::abs(p.q.u - p.m.u) < 1e-9);
    CHECK(std::abs(p.q.v - p.m.v) < 1e-9);
  }
}

TEST_CASE("correspond_pair: internal consistency of back-mapped coordinates") {
  const SimPair sp = make_sim_pair(43);
  const CorrespondenceSet cs =
      correspond_pair(sp.x_q, sp.x_m, sp.h, sp.pw, sp.ph, true);
  REQUIRE(!cs.pairs.empty());
  const Homography h_inv = sp.h.inverse();
  for (const auto& p : cs.pairs) {
    const PixelPoint q_check = h_inv.apply(p.q_hat);
    const PixelPoint m_check = h_inv.apply(rotate_pi_point(p.m_hat, sp.pw, sp.ph));
    CHECK(std::abs(q_check.u - p.q.u) < 1e-6);
    CHECK(std::abs(q_check.v - p.q.v) < 1e-6);
    CHECK(std::abs(m_check.u - p.m.u) < 1e-6);
    CHECK(std::abs(m_check.v - p.m.v) < 1e-6);
  }
  // no duplicate q_hat positions
  for (size_t i = 0; i < cs.pairs.size(); ++i)
    for (size_t j = i + 1; j < cs.pairs.size(); ++j)
      CHECK((cs.pairs[i].q_hat.u != cs.pairs[j].q_hat.u ||
             cs.pairs[i].q_hat.v != cs.pairs[j].q_hat.v));
}

TEST_CASE("correspond_pair: opposing simulator pair matches ground truth") {
  const SimPair sp = make_sim_pair(47);
  const CorrespondenceSet cs =
      correspond_pair(sp.x_q, sp.x_m, sp.h, sp.pw, sp.ph, true);
  REQUIRE(cs.pairs.size() >= 10);
  const auto [inliers2, total] = inlier_count(cs, sp.geo, 2.0);
  CHECK(inliers2 >= (2 * total) / 3);  // most pairs within 2 px of the gt reprojection
}

TEST_CASE("correspond_pair: unrelated corridor sections as negative control") {
  const SimPair sp = make_sim_pair(53, 4.0);  // 4 m apart: disjoint floor
  const CorrespondenceSet cs =
      correspond_pair(sp.x_q, sp.x_m, sp.h, sp.pw, sp.ph, true);
  const CorrespondenceSet cs_true =
      correspond_pair(make_sim_pair(53).x_q, make_sim_pair(53).x_m, sp.h, sp.pw,
                      sp.ph, true);
  CHECK(cs.pairs.size() < cs_true.pairs.size() / 2);
}

TEST_CASE("inlier_count: exact and perturbed synthetic correspondences") {
  const SimPair sp = make_sim_pair(59);
  // construct exact correspondences from the ground-truth geometry
  CorrespondenceSet cs;
  cs.warp = sp.h;
  cs.patch_w = sp.pw;
  cs.patch_h = sp.ph;
  cs.reference_rotated = true;
  Rng rng(60);
  while (cs.pairs.size() < 25) {
    const PixelPoint q{rng.uniform(20, 180), rng.uniform(120, 190)};
    const auto world = pixel_to_ground(sp.geo.cam, sp.geo.pose_q, q);
    if (!world) continue;
    const auto m = ground_to_pixel(sp.geo.cam, sp.geo.pose_m, *world);
    if (!m || m->u < 0 || m->u > 199 || m->v < 0 || m->v > 199) continue;
    CorrespondencePair p;
    p.q = q;
    p.m = *m;
    cs.pairs.push_back(p);
  }

  const auto [inl, total] = inlier_count(cs, sp.geo, 3.0);
  CHECK(inl == total);
  CHECK(total == 25);

  // perturb everything by 10x the threshold
  CorrespondenceSet bad = cs;
  for (auto& p : bad.pairs) p.m.u += 30.0;
  const auto [inl_bad, total_bad] = inlier_count(bad, sp.geo, 3.0);
  CHECK(inl_bad == 0);
  CHECK(total_bad == 25);

  // monotone in the threshold
  int prev = 0;
  for (double threshold : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const auto [i, t] = inlier_count(bad, sp.geo, threshold);
    CHECK(i >= prev);
    prev = i;
  }
}

TEST_CASE("raw-vs-transformed inlier property on opposing pairs") {
  // Homo+PiRot inliers >= 5x Raw inliers, per seed
  int wins = 0;
  for (uint64_t seed = 100; seed < 105; ++seed) {
    const SimPair sp = make_sim_pair(seed);
    const CorrespondenceSet warped =
        correspond_pair(sp.x_q, sp.x_m, sp.h, sp.pw, sp.ph, true);
    const CorrespondenceSet raw = correspond_pair(
        sp.x_q, sp.x_m, Homography(), sp.x_q.width, sp.x_q.height, false);
    const auto [inl_w, tot_w] = inlier_count(warped, sp.geo, 3.0);
    const auto [inl_r, tot_r] = inlier_count(raw, sp.geo, 3.0);
    if (inl_w >= 5 * std::max(inl_r, 1)) ++wins;
  }
  CHECK(wins >= 4);
}
