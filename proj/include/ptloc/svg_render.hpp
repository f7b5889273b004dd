#pragma once

#include <cstdio>
#include <string>

#include "ptloc/io.hpp"
#include "ptloc/polar_grid.hpp"
#include "ptloc/slab_table.hpp"

namespace ptloc {

namespace detail {

struct SvgCanvas {
  double min_x, min_y, max_x, max_y;
  double scale;
  double pad = 20.0;

  SvgCanvas(double x0, double y0, double x1, double y1, double target = 760.0)
      : min_x(x0), min_y(y0), max_x(x1), max_y(y1) {
    const double extent = std::max(max_x - min_x, max_y - min_y);
    scale = extent > 0.0 ? target / extent : 1.0;
  }

  double w() const { return (max_x - min_x) * scale + 2 * pad; }
  double h() const { return (max_y - min_y) * scale + 2 * pad; }
  double sx(double x) const { return pad + (x - min_x) * scale; }
  double sy(double y) const { return pad + (max_y - y) * scale; }  // y grows upward in model space

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
  }
};

inline void svg_open(std::string& out, const SvgCanvas& c) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + SvgCanvas::num(c.w()) +
         "\" height=\"" + SvgCanvas::num(c.h()) + "\" viewBox=\"0 0 " + SvgCanvas::num(c.w()) +
         " " + SvgCanvas::num(c.h()) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline void svg_line(std::string& out, const SvgCanvas& c, const char* cls, Point2 a, Point2 b,
                     const char* stroke, double width) {
  out += "<line class=\"" + std::string(cls) + "\" x1=\"" + SvgCanvas::num(c.sx(a.x)) +
         "\" y1=\"" + SvgCanvas::num(c.sy(a.y)) + "\" x2=\"" + SvgCanvas::num(c.sx(b.x)) +
         "\" y2=\"" + SvgCanvas::num(c.sy(b.y)) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
         SvgCanvas::num(width) + "\"/>\n";
}

inline void svg_polygon(std::string& out, const SvgCanvas& c, const char* cls,
                        const std::vector<Point2>& pts, const char* fill, const char* stroke) {
  out += "<polygon class=\"" + std::string(cls) + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += SvgCanvas::num(c.sx(pts[i].x)) + "," + SvgCanvas::num(c.sy(pts[i].y));
  }
  out += "\" fill=\"" + std::string(fill) + "\" stroke=\"" + stroke + "\"/>\n";
}

inline std::string heat_fill(int count, int max_count) {
  const double t = max_count > 1 ? static_cast<double>(count - 1) / (max_count - 1) : 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", 40 + static_cast<int>(180 * t),
                90 + static_cast<int>(40 * (1 - t)), 190 - static_cast<int>(140 * t));
  return buf;
}

}  // namespace detail

/// Diagram of a polar grid: the source polygon, the bounding sector
/// square, one ray per sector boundary and sector wedges shaded by
/// candidate-list length.
inline std::string make_polar_svg(const PolarGrid& grid) {
  using detail::SvgCanvas;
  double cheb = 0.0;
  for (const Point2& v : grid.polygon.vertices())
    cheb = std::max({cheb, std::abs(v.x - grid.x_t.x), std::abs(v.y - grid.x_t.y)});
  const double r = 1.05 * cheb;
  const SvgCanvas canvas(grid.x_t.x - r, grid.x_t.y - r, grid.x_t.x + r, grid.x_t.y + r);

  auto square_point = [&](double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double t = r / std::max(std::abs(c), std::abs(s));
    return Point2{grid.x_t.x + t * c, grid.x_t.y + t * s};
  };

  std::string out;
  detail::svg_open(out, canvas);
  const int nsec = sector_count(grid.m);
  for (int s = 0; s < nsec; ++s) {
    const AngleInterval b = sector_angle_bounds(s, grid.m);
    // both bounds land on the same square edge, so the wedge is a triangle
    const std::vector<Point2> wedge = {grid.x_t, square_point(b.lo), square_point(b.hi)};
    const int count = grid.sectors[static_cast<std::size_t>(s)].count;
    out += "<g fill-opacity=\"0.35\">\n";
    detail::svg_polygon(out, canvas, "sector-fill", wedge,
                        detail::heat_fill(count, grid.max_candidates).c_str(), "none");
    out += "</g>\n";
  }
  for (int s = 0; s < nsec; ++s) {
    const AngleInterval b = sector_angle_bounds(s, grid.m);
    detail::svg_line(out, canvas, "sector-ray", grid.x_t, square_point(b.lo), "#888888", 0.6);
  }
  {
    const std::vector<Point2> frame = {{grid.x_t.x - r, grid.x_t.y - r},
                                       {grid.x_t.x + r, grid.x_t.y - r},
                                       {grid.x_t.x + r, grid.x_t.y + r},
                                       {grid.x_t.x - r, grid.x_t.y + r}};
    detail::svg_polygon(out, canvas, "sector-square", frame, "none", "#444444");
  }
  detail::svg_polygon(out, canvas, "shape", grid.polygon.vertices(), "none", "#d62728");
  out += "<circle class=\"reference-point\" cx=\"" + SvgCanvas::num(canvas.sx(grid.x_t.x)) +
         "\" cy=\"" + SvgCanvas::num(canvas.sy(grid.x_t.y)) + "\" r=\"3\" fill=\"#d62728\"/>\n";
  out += "</svg>\n";
  return out;
}

/// Diagram of a slab table: the polygon, one horizontal line per slab
/// (at its lower bound) and slabs shaded by candidate-list length.
inline std::string make_slab_svg(const SlabTable& table) {
  using detail::SvgCanvas;
  const std::vector<Point2>& v = table.polygon.vertices();
  double minx = v[0].x, maxx = v[0].x;
  for (const Point2& p : v) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
  }
  const double margin = 0.05 * std::max(maxx - minx, table.y_max - table.y_min);
  const SvgCanvas canvas(minx - margin, table.y_min - margin, maxx + margin,
                         table.y_max + margin);

  std::string out;
  detail::svg_open(out, canvas);
  const double width = (table.y_max - table.y_min) / table.slab_count;
  for (int s = 0; s < table.slab_count; ++s) {
    const double y0 = table.y_min + s * width;
    const int count = static_cast<int>(
        (table.left_offsets[static_cast<std::size_t>(s) + 1] -
         table.left_offsets[static_cast<std::size_t>(s)]) +
        (table.right_offsets[static_cast<std::size_t>(s) + 1] -
         table.right_offsets[static_cast<std::size_t>(s)]));
    const std::vector<Point2> band = {{minx, y0}, {maxx, y0}, {maxx, y0 + width}, {minx, y0 + width}};
    out += "<g fill-opacity=\"0.35\">\n";
    detail::svg_polygon(out, canvas, "slab-fill", band,
                        detail::heat_fill(count, std::max(table.max_candidates, 1)).c_str(),
                        "none");
    out += "</g>\n";
  }
  for (int s = 0; s < table.slab_count; ++s) {
    const double y0 = table.y_min + s * width;
    detail::svg_line(out, canvas, "slab-line", {minx, y0}, {maxx, y0}, "#888888", 0.6);
  }
  detail::svg_polygon(out, canvas, "shape", v, "none", "#d62728");
  out += "</svg>\n";
  return out;
}

/// Writes an SVG document to disk; throws Error(FileWrite) on failure.
inline void render_svg_file(const std::string& svg, const std::string& path) {
  write_text_file(path, svg);
}

}  // namespace ptloc
