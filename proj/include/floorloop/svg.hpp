#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "floorloop/descriptor.hpp"
#include "floorloop/evalkit.hpp"
#include "floorloop/imggeom.hpp"
#include "floorloop/image.hpp"

namespace floorloop {

// Minimal deterministic SVG emitters for inspection plots.

// Cost-matrix heatmap: one rect per entry, dark = low cost.
std::string svg_heatmap(const CostMatrix& c, int cell_px = 4);

// Side-by-side image pair with match lines.
std::string svg_match_lines(const ImageGray& a, const ImageGray& b,
                            const std::vector<std::pair<PixelPoint, PixelPoint>>& pairs);

// Overlay of estimated vs ground-truth trajectories.
std::string svg_trajectories(const std::vector<Trajectory>& trajectories,
                             const std::vector<std::string>& labels);

void write_text_file(const std::string& text, const std::filesystem::path& path);

}  // namespace floorloop
