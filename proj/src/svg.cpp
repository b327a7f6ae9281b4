#include "monodraw/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace monodraw {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct Box {
  double minX = std::numeric_limits<double>::infinity();
  double minY = std::numeric_limits<double>::infinity();
  double maxX = -std::numeric_limits<double>::infinity();
  double maxY = -std::numeric_limits<double>::infinity();

  void add(Point2 p, double r = 0.0) {
    minX = std::min(minX, p.x - r);
    maxX = std::max(maxX, p.x + r);
    minY = std::min(minY, p.y - r);
    maxY = std::max(maxY, p.y + r);
  }
  bool empty() const { return minX > maxX; }
};

std::string header(const Box& b) {
  Box v = b;
  if (v.empty()) v = {0.0, 0.0, 1.0, 1.0};
  const double pad = std::max({(v.maxX - v.minX) * 0.05, (v.maxY - v.minY) * 0.05, 0.5});
  // SVG's y axis points down; render mirrored coordinates (y -> -y).
  const std::string view = num(v.minX - pad) + " " + num(-v.maxY - pad) + " " +
                           num(v.maxX - v.minX + 2 * pad) + " " +
                           num(v.maxY - v.minY + 2 * pad);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         view + "\">\n";
}

std::string line(Point2 a, Point2 b, const std::string& style) {
  return "<line x1=\"" + num(a.x) + "\" y1=\"" + num(-a.y) + "\" x2=\"" + num(b.x) +
         "\" y2=\"" + num(-b.y) + "\" " + style + "/>\n";
}

std::string circle(Point2 c, double r, const std::string& style) {
  return "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(-c.y) + "\" r=\"" + num(r) +
         "\" " + style + "/>\n";
}

std::string witnessLayer(const std::vector<Point2>& pos, const std::vector<int>& path,
                         double strokeWidth) {
  std::string out = "<g id=\"witness\">\n";
  const std::string style = "stroke=\"#d62728\" stroke-width=\"" + num(strokeWidth) +
                            "\" fill=\"none\"";
  for (size_t i = 0; i + 1 < path.size(); ++i)
    out += line(pos[path[i]], pos[path[i + 1]], style);
  out += "</g>\n";
  return out;
}

double scaleOf(const Box& b) {
  if (b.empty()) return 1.0;
  return std::max({b.maxX - b.minX, b.maxY - b.minY, 1e-9});
}

}  // namespace

std::string svgFromDrawing(const Drawing& d, const std::vector<int>* witnessPath) {
  Box box;
  for (Point2 p : d.pos) box.add(p);
  const double s = scaleOf(box);
  std::string out = header(box);
  out += "<g id=\"edges\">\n";
  const std::string edgeStyle =
      "stroke=\"#1f77b4\" stroke-width=\"" + num(s * 0.004) + "\"";
  for (const auto& [a, b] : d.graph.edges()) out += line(d.pos[a], d.pos[b], edgeStyle);
  out += "</g>\n<g id=\"vertices\">\n";
  for (Point2 p : d.pos) out += circle(p, s * 0.008, "fill=\"#000000\"");
  out += "</g>\n";
  if (witnessPath) out += witnessLayer(d.pos, *witnessPath, s * 0.006);
  out += "</svg>\n";
  return out;
}

std::string svgFromPacking(const PrimalDualPacking& p, const std::vector<int>* witnessPath) {
  Box box;
  box.add(p.outerCircle.center, p.outerCircle.radius);
  for (const Circle& c : p.vertexCircles) box.add(c.center, c.radius);
  const double s = scaleOf(box);
  const std::string thin = "\" stroke-width=\"" + num(s * 0.002) + "\" fill=\"none\"";

  std::string out = header(box);
  out += circle(p.outerCircle.center, p.outerCircle.radius, "stroke=\"#000000" + thin);
  out += "<g id=\"vertex-circles\">\n";
  for (const Circle& c : p.vertexCircles)
    out += circle(c.center, c.radius, "stroke=\"#1f77b4" + thin);
  out += "</g>\n<g id=\"face-circles\">\n";
  for (const auto& c : p.faceCircles)
    if (c) out += circle(c->center, c->radius, "stroke=\"#2ca02c" + thin);
  out += "</g>\n<g id=\"edges\">\n";
  const std::string edgeStyle =
      "stroke=\"#7f7f7f\" stroke-width=\"" + num(s * 0.002) + "\"";
  std::vector<Point2> pos;
  for (const Circle& c : p.vertexCircles) pos.push_back(c.center);
  for (const auto& [a, b] : p.emb.graph.edges()) out += line(pos[a], pos[b], edgeStyle);
  out += "</g>\n";
  if (witnessPath) out += witnessLayer(pos, *witnessPath, s * 0.004);
  out += "</svg>\n";
  return out;
}

}  // namespace monodraw
