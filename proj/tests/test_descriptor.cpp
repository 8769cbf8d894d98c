#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "floorloop/descriptor.hpp"
#include "floorloop/imggeom.hpp"
#include "floorloop/rng.hpp"

using namespace floorloop;

namespace {

ImageGray random_image(int w, int h, uint64_t seed) {
  ImageGray img(w, h);
  Rng rng(seed);
  for (double& v : img.data) v = rng.uniform();
  return img;
}

PlaceDescriptor random_unit(int dim, Rng& rng) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.normal();
  return make_descriptor(std::move(v));
}

}  // namespace

TEST_CASE("constant image yields the uniform descriptor") {
  const ImageGray img(16, 16, 0.37);
  const PlaceDescriptor d = grid_gradient_descriptor(img, 4, 6);
  REQUIRE(d.dimension() == 4 * 4 * 6);
  for (double v : d.values) CHECK(v == doctest::Approx(d.values[0]).epsilon(1e-12));
  double norm = 0;
  for (double v : d.values) norm += v * v;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pi-rotated image gives the cell-permuted descriptor") {
  const int g = 8, b = 9;
  const ImageGray img = random_image(64, 64, 123);
  const PlaceDescriptor d = grid_gradient_descriptor(img, g, b);
  const PlaceDescriptor dr = grid_gradient_descriptor(rotate_pi(img), g, b);
  for (int cy = 0; cy < g; ++cy)
    for (int cx = 0; cx < g; ++cx)
      for (int k = 0; k < b; ++k) {
        const int idx = (cy * g + cx) * b + k;
        const int mirrored = ((g - 1 - cy) * g + (g - 1 - cx)) * b + k;
        CHECK(dr.values[mirrored] == doctest::Approx(d.values[idx]).epsilon(1e-9));
      }
}

TEST_CASE("vertical stripes concentrate mass in the horizontal-gradient bins") {
  // 8x8 toy image, alternating columns
  ImageGray img(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) img.at(x, y) = (x % 2) ? 0.9 : 0.1;

  const int g = 2, b = 4;
  const PlaceDescriptor d = grid_gradient_descriptor(img, g, b);

  // direct oracle: orientation of every nonzero gradient is 0 mod pi, which
  // soft-assigns half-and-half to the two bins adjacent to 0
  for (int cell = 0; cell < g * g; ++cell) {
    double horizontal = d.values[cell * b + 0] + d.values[cell * b + (b - 1)];
    double rest = 0;
    for (int k = 1; k < b - 1; ++k) rest += d.values[cell * b + k];
    CHECK(rest == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(horizontal > 0.0);
    CHECK(d.values[cell * b + 0] ==
          doctest::Approx(d.values[cell * b + (b - 1)]).epsilon(1e-9));
  }
}

TEST_CASE("descriptor too-small image") {
  CHECK_THROWS_AS(grid_gradient_descriptor(ImageGray(4, 4, 0.5), 8, 9), ImageTooSmall);
}

TEST_CASE("cosine_distance basics") {
  const PlaceDescriptor a = make_descriptor({1, 0, 0});
  const PlaceDescriptor b = make_descriptor({0, 1, 0});
  PlaceDescriptor neg = a;
  for (double& v : neg.values) v = -v;
  CHECK(cosine_distance(a, a) == 0.0);
  CHECK(cosine_distance(a, b) == doctest::Approx(1.0));
  CHECK(cosine_distance(a, neg) == doctest::Approx(2.0));
  CHECK_THROWS_AS(cosine_distance(a, make_descriptor({1, 0})), DimensionMismatch);
}

TEST_CASE("cosine_distance is exactly symmetric") {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const PlaceDescriptor a = random_unit(24, rng);
    const PlaceDescriptor b = random_unit(24, rng);
    CHECK(cosine_distance(a, b) == cosine_distance(b, a));
  }
}

TEST_CASE("cost_matrix") {
  Rng rng(29);
  DescriptorSet q, r;
  for (int i = 0; i < 3; ++i) {
    q.image_ids.push_back(i);
    q.descriptors.push_back(random_unit(16, rng));
  }
  for (int j = 0; j < 4; ++j) {
    r.image_ids.push_back(100 + j);
    r.descriptors.push_back(random_unit(16, rng));
  }

  const CostMatrix c = cost_matrix(q, r);
  REQUIRE(c.rows == 3);
  REQUIRE(c.cols == 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(c.at(i, j) == cosine_distance(q.descriptors[i], r.descriptors[j]));
      CHECK(c.at(i, j) >= 0.0);
      CHECK(c.at(i, j) <= 2.0);
    }

  const CostMatrix self = cost_matrix(q, q);
  for (int i = 0; i < 3; ++i) CHECK(self.at(i, i) == doctest::Approx(0.0).epsilon(1e-12));

  DescriptorSet one_a, one_b;
  one_a.image_ids = {0};
  one_a.descriptors = {make_descriptor({1, 0})};
  one_b.image_ids = {1};
  one_b.descriptors = {make_descriptor({0, 1})};
  CHECK(cost_matrix(one_a, one_b).at(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("best_matches") {
  CostMatrix ident;
  ident.rows = ident.cols = 3;
  ident.cost = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  const auto m = best_matches(ident);
  for (int i = 0; i < 3; ++i) {
    CHECK(m[i].query_index == i);
    CHECK(m[i].ref_index == i);
    CHECK(m[i].distance == 0.0);
  }

  CostMatrix tie;
  tie.rows = 1;
  tie.cols = 2;
  tie.cost = {0.5, 0.5};
  CHECK(best_matches(tie)[0].ref_index == 0);

  CostMatrix empty;
  CHECK_THROWS_AS(best_matches(empty), EmptyMatrix);

  // random matrix vs brute-force row scan
  Rng rng(31);
  CostMatrix rnd;
  rnd.rows = 5;
  rnd.cols = 7;
  rnd.cost.resize(35);
  for (double& v : rnd.cost) v = rng.uniform(0, 2);
  const auto matches = best_matches(rnd);
  for (int i = 0; i < 5; ++i) {
    int expect = 0;
    for (int j = 0; j < 7; ++j)
      if (rnd.at(i, j) < rnd.at(i, expect)) expect = j;
    CHECK(matches[i].ref_index == expect);
    CHECK(matches[i].distance == rnd.at(i, expect));
  }
}

TEST_CASE("shortlist_top_k") {
  std::vector<LoopCandidate> three = {{0, 10, 0.3}, {1, 11, 0.1}, {2, 12, 0.2}};
  const auto all = shortlist_top_k(three, 20);
  REQUIRE(all.size() == 3);
  CHECK(all[0].distance == 0.1);
  CHECK(all[1].distance == 0.2);
  CHECK(all[2].distance == 0.3);

  const auto two = shortlist_top_k(three, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].query_id == 1);
  CHECK(two[1].query_id == 2);

  // 100 random candidates vs full sort-then-truncate oracle
  Rng rng(37);
  std::vector<LoopCandidate> many;
  for (int i = 0; i < 100; ++i)
    many.push_back({i, 1000 + i, rng.uniform(0, 2)});
  auto oracle = many;
  std::sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.query_id < b.query_id;
  });
  oracle.resize(20);
  const auto got = shortlist_top_k(many, 20);
  REQUIRE(got.size() == 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(got[i].query_id == oracle[i].query_id);
    CHECK(got[i].distance == oracle[i].distance);
  }
  for (int i = 1; i < 20; ++i) CHECK(got[i - 1].distance <= got[i].distance);
}

TEST_CASE("matching is invariant to positive scaling of raw vectors") {
  Rng rng(41);
  std::vector<std::vector<double>> raw_q(4), raw_r(6);
  for (auto& v : raw_q) {
    v.resize(12);
    for (double& x : v) x = rng.normal();
  }
  for (auto& v : raw_r) {
    v.resize(12);
    for (double& x : v) x = rng.normal();
  }

  auto build = [](const std::vector<std::vector<double>>& raw, double scale) {
    DescriptorSet s;
    for (size_t i = 0; i < raw.size(); ++i) {
      std::vector<double> scaled = raw[i];
      for (double& x : scaled) x *= scale;
      s.image_ids.push_back(static_cast<int>(i));
      s.descriptors.push_back(make_descriptor(scaled));
    }
    return s;
  };

  const auto m1 = best_matches(cost_matrix(build(raw_q, 1.0), build(raw_r, 1.0)));
  const auto m2 = best_matches(cost_matrix(build(raw_q, 7.3), build(raw_r, 0.002)));
  REQUIRE(m1.size() == m2.size());
  for (size_t i = 0; i < m1.size(); ++i) CHECK(m1[i].ref_index == m2[i].ref_index);
}

TEST_CASE("descriptor file save/load") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "floorloop_desc_test.txt";

  Rng rng(43);
  DescriptorSet set;
  set.variant_tag = VariantTag::HomoPiRot;
  for (int id : {2, 5, 7}) {
    set.image_ids.push_back(id);
    set.descriptors.push_back(random_unit(8, rng));
  }
  save_descriptors(set, path);

  const DescriptorSet loaded = load_descriptors(path, {2, 5, 7});
  REQUIRE(loaded.image_ids.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    double norm = 0;
    for (double v : loaded.descriptors[i].values) norm += v * v;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cosine_distance(loaded.descriptors[i], set.descriptors[i]) < 1e-9);
  }

  CHECK_THROWS_AS(load_descriptors(path, {2, 5, 7, 9}), MissingId);

  {
    std::ofstream f(path);
    f << "0 1 0 0\n1 0 1\n";
  }
  CHECK_THROWS_AS(load_descriptors(path, {0, 1}), DimensionMismatch);

  {
    std::ofstream f(path);
    f << "0 1 0 oops\n";
  }
  CHECK_THROWS_AS(load_descriptors(path, {0}), ParseError);

  fs::remove(path);
}
