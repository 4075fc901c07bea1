#include "fqst/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>

namespace fqst {

namespace {

constexpr double kWidth = 800.0;

struct Frame {
  double min_x, max_y, margin, scale, width, height;

  Frame(std::span<const Point> points) {
    double lo_x = points[0].x, hi_x = points[0].x, lo_y = points[0].y, hi_y = points[0].y;
    for (const Point& p : points) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    if (!(span > 0.0)) span = 1.0;
    margin = 0.1 * span;
    min_x = lo_x;
    max_y = hi_y;
    scale = kWidth / (span + 2.0 * margin);
    width = (hi_x - lo_x + 2.0 * margin) * scale;
    height = (hi_y - lo_y + 2.0 * margin) * scale;
  }
  double x(const Point& p) const { return (p.x - min_x + margin) * scale; }
  double y(const Point& p) const { return (max_y - p.y + margin) * scale; }
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string num(double v) { return fmt("%.3f", v); }

std::string header(const Frame& f) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(f.width) + "\" height=\"" + num(f.height) + "\" viewBox=\"0 0 " + num(f.width) +
         " " + num(f.height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void terminal(std::string& out, const Frame& f, const Point& p, const char* cls) {
  out += "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(f.x(p)) + "\" cy=\"" +
         num(f.y(p)) + "\" r=\"6\" fill=\"black\"/>\n";
}

}  // namespace

std::string render_svg(const SolvedTree& tree) {
  const Topology& t = tree.topology;
  const std::vector<Point> pos = tree.all_positions();
  const Frame f(pos);
  std::string out = header(f);
  out += "<g stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\">\n";
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (t.is_sink(v)) continue;
    const Point a = pos[v];
    const Point b = pos[t.parent(v)];
    out += "<line class=\"edge\" x1=\"" + num(f.x(a)) + "\" y1=\"" + num(f.y(a)) + "\" x2=\"" +
           num(f.x(b)) + "\" y2=\"" + num(f.y(b)) + "\"/>\n";
  }
  out += "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#444\">\n";
  for (NodeId v = 0; v < t.num_nodes(); ++v) {
    if (t.is_sink(v)) continue;
    const Point mid = (pos[v] + pos[t.parent(v)]) / 2.0;
    out += "<text class=\"flow\" x=\"" + num(f.x(mid) + 4.0) + "\" y=\"" + num(f.y(mid) - 4.0) +
           "\">" + fmt("%.6g", tree.flows[v]) + "</text>\n";
  }
  out += "</g>\n";
  for (NodeId v = 0; v < t.num_sources(); ++v) terminal(out, f, pos[v], "source");
  terminal(out, f, pos[t.sink()], "sink");
  for (int j = 0; j < t.num_steiner(); ++j) {
    const Point p = pos[t.steiner(j)];
    out += "<circle class=\"steiner\" cx=\"" + num(f.x(p)) + "\" cy=\"" + num(f.y(p)) +
           "\" r=\"6\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_instance_svg(const Instance& instance) {
  std::vector<Point> pos = instance.sources;
  pos.push_back(instance.sink);
  const Frame f(pos);
  std::string out = header(f);
  for (const Point& p : instance.sources) terminal(out, f, p, "source");
  terminal(out, f, instance.sink, "sink");
  out += "</svg>\n";
  return out;
}

}  // namespace fqst
