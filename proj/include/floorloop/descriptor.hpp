#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "floorloop/errors.hpp"
#include "floorloop/image.hpp"

namespace floorloop {

// Unit-norm global image descriptor.
struct PlaceDescriptor {
  std::vector<double> values;
  int dimension() const { return static_cast<int>(values.size()); }
};

// L2-normalizes raw values; an all-zero vector falls back to the uniform
// convention vector (equal positive entries).
PlaceDescriptor make_descriptor(std::vector<double> raw);

// Transformation applied to reference images before description.
enum class VariantTag { Raw, Homo, HomoPiRot, FlipLR };

std::string variant_name(VariantTag tag);
VariantTag variant_from_name(const std::string& name);

struct DescriptorSet {
  std::vector<int> image_ids;  // unique, strictly increasing
  std::vector<PlaceDescriptor> descriptors;
  VariantTag variant_tag = VariantTag::Raw;
};

struct CostMatrix {
  int rows = 0;  // queries
  int cols = 0;  // references
  std::vector<double> cost;
  double at(int i, int j) const { return cost[static_cast<size_t>(i) * cols + j]; }
  double& at(int i, int j) { return cost[static_cast<size_t>(i) * cols + j]; }
};

struct BestMatch {
  int query_index = 0;
  int ref_index = 0;
  double distance = 0.0;
};

struct LoopCandidate {
  int query_id = 0;
  int ref_id = 0;
  double distance = 0.0;
};

// Grid of magnitude-weighted orientation histograms (g x g cells, b bins
// over [0,pi), linear soft assignment), concatenated and L2-normalized.
PlaceDescriptor grid_gradient_descriptor(const ImageGray& img, int grid, int bins);

double cosine_distance(const PlaceDescriptor& a, const PlaceDescriptor& b);
CostMatrix cost_matrix(const DescriptorSet& q, const DescriptorSet& r);

// Per query row, the minimal-cost reference column (ties: smaller column).
std::vector<BestMatch> best_matches(const CostMatrix& c);

// Attaches frame ids to index-based matches.
std::vector<LoopCandidate> resolve_match_ids(const std::vector<BestMatch>& matches,
                                             const DescriptorSet& q,
                                             const DescriptorSet& r);

// The k lowest-distance candidates, ascending; ties broken by lower query id.
std::vector<LoopCandidate> shortlist_top_k(std::vector<LoopCandidate> candidates, int k = 20);

// Text format: one row per frame, `<id> <v1> ... <vd>`.
void save_descriptors(const DescriptorSet& set, const std::filesystem::path& path);
DescriptorSet load_descriptors(const std::filesystem::path& path,
                               const std::vector<int>& expected_ids);

}  // namespace floorloop
