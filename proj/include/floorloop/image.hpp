#pragma once

#include <filesystem>
#include <vector>

#include "floorloop/errors.hpp"

namespace floorloop {

// Row-major grayscale image with luminance in [0,1].
// Integer coordinates address pixel centers.
struct ImageGray {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  ImageGray() = default;
  ImageGray(int w, int h, double fill = 0.0);

  double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  bool contains(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

// Bilinear sample at real-valued pixel coordinates; contributions from
// outside the image are zero (zero padding).
double bilinear_sample(const ImageGray& img, double x, double y);

ImageGray flip_horizontal(const ImageGray& img);

// Binary PGM (P5, maxval 255). Luminance maps linearly to [0,1].
ImageGray read_pgm(const std::filesystem::path& path);
void write_pgm(const ImageGray& img, const std::filesystem::path& path);

}  // namespace floorloop
