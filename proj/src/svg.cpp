#include "floorloop/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace floorloop {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string gray_fill(double v01) {
  const int g = static_cast<int>(std::lround(std::clamp(v01, 0.0, 1.0) * 255.0));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", g, g, g);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

std::string image_rects(const ImageGray& img, double x0, double y0, double px) {
  // Downsample to at most 96 cells per side to keep files small.
  const int step = std::max(1, std::max(img.width, img.height) / 96);
  std::string out;
  for (int y = 0; y < img.height; y += step)
    for (int x = 0; x < img.width; x += step) {
      out += "<rect x=\"" + num(x0 + x * px) + "\" y=\"" + num(y0 + y * px) +
             "\" width=\"" + num(step * px) + "\" height=\"" + num(step * px) +
             "\" fill=\"" + gray_fill(img.at(x, y)) + "\"/>\n";
    }
  return out;
}

}  // namespace

std::string svg_heatmap(const CostMatrix& c, int cell_px) {
  double lo = 2.0, hi = 0.0;
  for (double v : c.cost) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(c.cols * cell_px) + "\" height=\"" +
                    std::to_string(c.rows * cell_px) + "\">\n";
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j) {
      const double v = (c.at(i, j) - lo) / span;
      out += "<rect x=\"" + std::to_string(j * cell_px) + "\" y=\"" +
             std::to_string(i * cell_px) + "\" width=\"" + std::to_string(cell_px) +
             "\" height=\"" + std::to_string(cell_px) + "\" fill=\"" + gray_fill(v) +
             "\"/>\n";
    }
  out += "</svg>\n";
  return out;
}

std::string svg_match_lines(const ImageGray& a, const ImageGray& b,
                            const std::vector<std::pair<PixelPoint, PixelPoint>>& pairs) {
  const double px = 1.0;
  const double gap = 12.0;
  const double bx = a.width * px + gap;
  const double w = bx + b.width * px;
  const double h = std::max(a.height, b.height) * px;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) +
                    "\" height=\"" + num(h) + "\">\n";
  out += image_rects(a, 0, 0, px);
  out += image_rects(b, bx, 0, px);
  size_t k = 0;
  for (const auto& [pa, pb] : pairs) {
    const char* color = kPalette[k++ % 5];
    out += "<line x1=\"" + num(pa.u * px) + "\" y1=\"" + num(pa.v * px) +
           "\" x2=\"" + num(bx + pb.u * px) + "\" y2=\"" + num(pb.v * px) +
           "\" stroke=\"" + color + "\" stroke-width=\"0.8\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string svg_trajectories(const std::vector<Trajectory>& trajectories,
                             const std::vector<std::string>& labels) {
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const auto& t : trajectories)
    for (const auto& [id, p] : t.poses) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  if (min_x > max_x) {
    min_x = min_y = 0;
    max_x = max_y = 1;
  }

  const double margin = 20.0;
  const double view_w = 640.0;
  const double span = std::max(std::max(max_x - min_x, max_y - min_y), 1e-9);
  const double scale = (view_w - 2 * margin) / span;
  const double view_h = (max_y - min_y) * scale + 2 * margin + 18.0 * trajectories.size();

  auto sx = [&](double x) { return margin + (x - min_x) * scale; };
  auto sy = [&](double y) { return margin + (max_y - y) * scale; };  // y up

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(view_w) +
                    "\" height=\"" + num(view_h) + "\">\n";
  for (size_t t = 0; t < trajectories.size(); ++t) {
    const char* color = kPalette[t % 5];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [id, p] : trajectories[t].poses)
      out += num(sx(p.x)) + "," + num(sy(p.y)) + " ";
    out += "\"/>\n";
    const double ly = (max_y - min_y) * scale + 2 * margin + 14.0 * (t + 1);
    out += "<text x=\"" + num(margin) + "\" y=\"" + num(ly) + "\" fill=\"" + color +
           "\" font-size=\"12\">" + (t < labels.size() ? labels[t] : "trajectory") +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace floorloop
