#include <cmath>
#include <cstdio>
#include <sstream>

#include "floorloop/posegraph.hpp"

namespace floorloop {

namespace {

// 12 significant digits: enough that write(parse(write(g))) == write(g).
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

PoseGraph parse_g2o(const std::string& text) {
  PoseGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_anchor = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line

    if (tag == "VERTEX_SE2") {
      int id;
      double x, y, theta;
      if (!(ls >> id >> x >> y >> theta))
        throw ParseError("line " + std::to_string(lineno) + ": malformed VERTEX_SE2");
      g.vertices[id] = {x, y, theta};
      if (!have_anchor || id < g.anchor_id) {
        g.anchor_id = id;
        have_anchor = true;
      }
    } else if (tag == "EDGE_SE2") {
      SE2Constraint c;
      double i11, i12, i13, i22, i23, i33;
      if (!(ls >> c.from_id >> c.to_id >> c.dx >> c.dy >> c.dtheta >>
            i11 >> i12 >> i13 >> i22 >> i23 >> i33))
        throw ParseError("line " + std::to_string(lineno) + ": malformed EDGE_SE2");
      std::string extra;
      if (ls >> extra)
        throw ParseError("line " + std::to_string(lineno) + ": trailing tokens on EDGE_SE2");
      c.information << i11, i12, i13,
                       i12, i22, i23,
                       i13, i23, i33;
      const EdgeKind kind =
          std::abs(c.from_id - c.to_id) == 1 ? EdgeKind::Odometry : EdgeKind::Loop;
      g.edges.push_back({c, kind});
    } else {
      throw UnknownTag("line " + std::to_string(lineno) + ": unknown tag " + tag);
    }
  }

  for (const auto& e : g.edges)
    if (!g.vertices.count(e.constraint.from_id) || !g.vertices.count(e.constraint.to_id))
      throw ParseError("edge references undeclared vertex " +
                       std::to_string(g.vertices.count(e.constraint.from_id)
                                          ? e.constraint.to_id
                                          : e.constraint.from_id));
  return g;
}

std::string write_g2o(const PoseGraph& g) {
  std::string out;
  for (const auto& [id, p] : g.vertices) {
    out += "VERTEX_SE2 " + std::to_string(id) + " " + fmt(p.x) + " " + fmt(p.y) + " " +
           fmt(p.theta) + "\n";
  }
  for (const auto& e : g.edges) {
    const auto& c = e.constraint;
    const auto& m = c.information;
    out += "EDGE_SE2 " + std::to_string(c.from_id) + " " + std::to_string(c.to_id) + " " +
           fmt(c.dx) + " " + fmt(c.dy) + " " + fmt(c.dtheta) + " " +
           fmt(m(0, 0)) + " " + fmt(m(0, 1)) + " " + fmt(m(0, 2)) + " " +
           fmt(m(1, 1)) + " " + fmt(m(1, 2)) + " " + fmt(m(2, 2)) + "\n";
  }
  return out;
}

}  // namespace floorloop
