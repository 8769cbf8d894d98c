#include "floorloop/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace floorloop {

PlaceDescriptor make_descriptor(std::vector<double> raw) {
  double norm2 = 0.0;
  for (double v : raw) norm2 += v * v;
  if (norm2 <= 0.0) {
    // zero-gradient convention: uniform mass, then normalized
    std::fill(raw.begin(), raw.end(), 1.0);
    norm2 = static_cast<double>(raw.size());
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : raw) v *= inv;
  return PlaceDescriptor{std::move(raw)};
}

std::string variant_name(VariantTag tag) {
  switch (tag) {
    case VariantTag::Raw: return "raw";
    case VariantTag::Homo: return "homo";
    case VariantTag::HomoPiRot: return "homo-pirot";
    case VariantTag::FlipLR: return "flip-lr";
  }
  return "raw";
}

VariantTag variant_from_name(const std::string& name) {
  if (name == "raw") return VariantTag::Raw;
  if (name == "homo") return VariantTag::Homo;
  if (name == "homo-pirot") return VariantTag::HomoPiRot;
  if (name == "flip-lr") return VariantTag::FlipLR;
  throw ConfigError("unknown variant tag: " + name);
}

PlaceDescriptor grid_gradient_descriptor(const ImageGray& img, int grid, int bins) {
  if (grid < 1 || bins < 2) throw ConfigError("descriptor needs grid >= 1 and bins >= 2");
  if (img.width < grid || img.height < grid)
    throw ImageTooSmall("image smaller than descriptor grid");

  std::vector<double> hist(static_cast<size_t>(grid) * grid * bins, 0.0);
  const double bin_width = M_PI / bins;

  auto clamped = [&](int x, int y) {
    return img.at(std::clamp(x, 0, img.width - 1), std::clamp(y, 0, img.height - 1));
  };

  for (int y = 0; y < img.height; ++y) {
    const int cy = std::min(y * grid / img.height, grid - 1);
    for (int x = 0; x < img.width; ++x) {
      const double gx = 0.5 * (clamped(x + 1, y) - clamped(x - 1, y));
      const double gy = 0.5 * (clamped(x, y + 1) - clamped(x, y - 1));
      const double mag = std::hypot(gx, gy);
      if (mag == 0.0) continue;

      double theta = std::atan2(gy, gx);  // orientation mod pi
      if (theta < 0) theta += M_PI;
      if (theta >= M_PI) theta -= M_PI;

      // linear soft assignment between the two adjacent bins, circular mod pi
      const double t = theta / bin_width - 0.5;
      int b0 = static_cast<int>(std::floor(t));
      const double w1 = t - b0;
      const double w0 = 1.0 - w1;
      int b1 = b0 + 1;
      b0 = (b0 % bins + bins) % bins;
      b1 = (b1 % bins + bins) % bins;

      const int cx = std::min(x * grid / img.width, grid - 1);
      double* cell = &hist[(static_cast<size_t>(cy) * grid + cx) * bins];
      cell[b0] += w0 * mag;
      cell[b1] += w1 * mag;
    }
  }
  return make_descriptor(std::move(hist));
}

double cosine_distance(const PlaceDescriptor& a, const PlaceDescriptor& b) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch("descriptor dimensions differ");
  double dot = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
  return std::clamp(1.0 - dot, 0.0, 2.0);
}

CostMatrix cost_matrix(const DescriptorSet& q, const DescriptorSet& r) {
  CostMatrix c;
  c.rows = static_cast<int>(q.descriptors.size());
  c.cols = static_cast<int>(r.descriptors.size());
  c.cost.resize(static_cast<size_t>(c.rows) * c.cols);
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j)
      c.at(i, j) = cosine_distance(q.descriptors[i], r.descriptors[j]);
  return c;
}

std::vector<BestMatch> best_matches(const CostMatrix& c) {
  if (c.rows == 0 || c.cols == 0) throw EmptyMatrix("cost matrix is empty");
  std::vector<BestMatch> out;
  out.reserve(c.rows);
  for (int i = 0; i < c.rows; ++i) {
    int best = 0;
    for (int j = 1; j < c.cols; ++j)
      if (c.at(i, j) < c.at(i, best)) best = j;
    out.push_back({i, best, c.at(i, best)});
  }
  return out;
}

std::vector<LoopCandidate> resolve_match_ids(const std::vector<BestMatch>& matches,
                                             const DescriptorSet& q,
                                             const DescriptorSet& r) {
  std::vector<LoopCandidate> out;
  out.reserve(matches.size());
  for (const auto& m : matches)
    out.push_back({q.image_ids[m.query_index], r.image_ids[m.ref_index], m.distance});
  return out;
}

std::vector<LoopCandidate> shortlist_top_k(std::vector<LoopCandidate> candidates, int k) {
  if (k < 1) throw ConfigError("shortlist k must be >= 1");
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const LoopCandidate& a, const LoopCandidate& b) {
                     if (a.distance != b.distance) return a.distance < b.distance;
                     return a.query_id < b.query_id;
                   });
  if (static_cast<int>(candidates.size()) > k) candidates.resize(k);
  return candidates;
}

void save_descriptors(const DescriptorSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(12);
  for (size_t i = 0; i < set.image_ids.size(); ++i) {
    out << set.image_ids[i];
    for (double v : set.descriptors[i].values) out << ' ' << v;
    out << '\n';
  }
  if (!out) throw IoError("short write to " + path.string());
}

DescriptorSet load_descriptors(const std::filesystem::path& path,
                               const std::vector<int>& expected_ids) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  struct Row {
    int id;
    std::vector<double> values;
  };
  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Row row;
    if (!(ls >> row.id))
      throw ParseError("line " + std::to_string(lineno) + ": missing frame id");
    double v;
    while (ls >> v) row.values.push_back(v);
    if (!ls.eof())
      throw ParseError("line " + std::to_string(lineno) + ": malformed value");
    if (row.values.empty())
      throw ParseError("line " + std::to_string(lineno) + ": no descriptor values");
    rows.push_back(std::move(row));
  }

  size_t dim = rows.empty() ? 0 : rows.front().values.size();
  for (const auto& row : rows)
    if (row.values.size() != dim)
      throw DimensionMismatch("descriptor rows have unequal length in " + path.string());

  DescriptorSet set;
  for (int id : expected_ids) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.id == id; });
    if (it == rows.end())
      throw MissingId("descriptor file missing id " + std::to_string(id));
    set.image_ids.push_back(id);
    set.descriptors.push_back(make_descriptor(it->values));
  }
  return set;
}

}  // namespace floorloop
