#include "floorloop/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace floorloop {

ImageGray::ImageGray(int w, int h, double fill)
    : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
  if (w < 1 || h < 1) throw ImageTooSmall("image dimensions must be >= 1");
}

double bilinear_sample(const ImageGray& img, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;

  auto px = [&](int xi, int yi) -> double {
    return img.contains(xi, yi) ? img.at(xi, yi) : 0.0;
  };

  return px(x0, y0) * (1 - fx) * (1 - fy) +
         px(x0 + 1, y0) * fx * (1 - fy) +
         px(x0, y0 + 1) * (1 - fx) * fy +
         px(x0 + 1, y0 + 1) * fx * fy;
}

ImageGray flip_horizontal(const ImageGray& img) {
  ImageGray out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      out.at(x, y) = img.at(img.width - 1 - x, y);
  return out;
}

ImageGray read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  auto next_token = [&]() -> std::string {
    std::string tok;
    for (;;) {
      int c = in.get();
      if (c == EOF) throw ParseError("truncated PGM header in " + path.string());
      if (c == '#') {
        std::string line;
        std::getline(in, line);
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
  };

  if (next_token() != "P5") throw ParseError("not a binary PGM (P5): " + path.string());
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (w < 1 || h < 1) throw ParseError("bad PGM dimensions in " + path.string());
  if (maxval != 255) throw ParseError("unsupported PGM maxval in " + path.string());

  std::vector<uint8_t> raw(static_cast<size_t>(w) * h);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw ParseError("truncated PGM payload in " + path.string());

  ImageGray img(w, h);
  for (size_t i = 0; i < raw.size(); ++i) img.data[i] = raw[i] / 255.0;
  return img;
}

void write_pgm(const ImageGray& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> raw(img.data.size());
  for (size_t i = 0; i < img.data.size(); ++i) {
    const double v = std::clamp(img.data[i], 0.0, 1.0);
    raw[i] = static_cast<uint8_t>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace floorloop
