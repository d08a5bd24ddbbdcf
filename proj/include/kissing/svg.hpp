#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kissing/json_io.hpp"
#include "kissing/reflection_group.hpp"

namespace kissing {

/// Small fixed palette; index wraps around.
inline std::string svg_color(int index) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  if (index < 0) return "#000000";
  return palette[index % 10];
}

/// Collects circles and arc paths in scene coordinates and writes them with a
/// uniform viewBox.
class SvgScene {
 public:
  void add_circle(Complex center, double radius, const std::string& stroke,
                  const std::string& fill, double stroke_width = 0.004) {
    std::ostringstream el;
    el << "<circle cx=\"" << fmt(center.real()) << "\" cy=\"" << fmt(-center.imag())
       << "\" r=\"" << fmt(radius) << "\" stroke=\"" << stroke << "\" fill=\"" << fill
       << "\" stroke-width=\"" << fmt(stroke_width) << "\"/>";
    elements_.push_back(el.str());
    grow(center, radius);
  }

  void add_disk(const Circle& c, const std::string& color) {
    if (c.is_line() || c.disk_contains_infinity()) return;
    add_circle(c.center(), c.radius(), "none", color, 0.0);
  }

  /// Closed chain of arcs (a fundamental-domain tile).
  void add_tile(const Tile& tile, const std::string& fill) {
    if (tile.contains_inf || tile.arcs.empty()) return;
    std::ostringstream el;
    el << "<path d=\"";
    bool first = true;
    for (const Arc& arc : tile.arcs) {
      auto pts = detail::sample_arc(arc);
      for (size_t i = first ? 0 : 1; i < pts.size(); ++i) {
        el << (first && i == 0 ? "M" : "L") << fmt(pts[i].real()) << " " << fmt(-pts[i].imag())
           << " ";
        grow(pts[i], 0.0);
      }
      first = false;
    }
    el << "Z\" fill=\"" << fill << "\" stroke=\"none\"/>";
    elements_.push_back(el.str());
  }

  void write(std::ostream& out, int pixel_size = 1024) const {
    double w = std::max(1e-6, xmax_ - xmin_), h = std::max(1e-6, ymax_ - ymin_);
    double pad = 0.03 * std::max(w, h);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixel_size << "\" height=\""
        << pixel_size << "\" viewBox=\"" << fmt(xmin_ - pad) << " " << fmt(-ymax_ - pad) << " "
        << fmt(w + 2 * pad) << " " << fmt(h + 2 * pad) << "\">\n";
    for (const auto& el : elements_) out << el << "\n";
    out << "</svg>\n";
  }

  void write_file(const std::string& path, int pixel_size = 1024) const {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::BadDocument, "cannot write " + path);
    write(out, pixel_size);
  }

 private:
  void grow(Complex p, double r) {
    xmin_ = std::min(xmin_, p.real() - r);
    xmax_ = std::max(xmax_, p.real() + r);
    ymin_ = std::min(ymin_, p.imag() - r);
    ymax_ = std::max(ymax_, p.imag() + r);
  }

  std::vector<std::string> elements_;
  double xmin_ = 1e9, xmax_ = -1e9, ymin_ = 1e9, ymax_ = -1e9;
};

inline void packing_to_svg(const CirclePacking& p, const std::string& path) {
  SvgScene scene;
  for (int v = 0; v < p.graph.n; ++v) {
    const Circle& c = p.circles[v];
    if (c.is_line() || c.disk_contains_infinity()) continue;
    scene.add_circle(c.center(), c.radius(), "#222222", "none");
  }
  scene.write_file(path);
}

/// Level disks colored by the first letter of their word.
inline void limit_set_to_svg(const LimitSetCover& cover, const CirclePacking& p,
                             const std::string& path) {
  SvgScene scene;
  for (int v = 0; v < p.graph.n; ++v) {
    const Circle& c = p.circles[v];
    if (!c.disk_contains_infinity()) scene.add_circle(c.center(), c.radius(), "#bbbbbb", "none");
  }
  for (const auto& e : cover.disks) {
    int first = e.word.empty() ? e.vertex : e.word.front();
    scene.add_disk(e.disk, svg_color(first));
  }
  scene.write_file(path);
}

inline void side_tiles_to_svg(const SideTiles& tiles, const std::string& path) {
  SvgScene scene;
  for (const Tile& t : tiles.plus) scene.add_tile(t, "#7f7f7f");
  for (const Tile& t : tiles.minus) scene.add_tile(t, "#1f77b4");
  scene.write_file(path);
}

}  // namespace kissing
