#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ptloc/polygon.hpp"
#include "ptloc/polyhedron.hpp"

namespace ptloc {

namespace detail {

// shortest round-trippable decimal
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Polygon text format: first line the vertex count N, then N lines
/// "x y". Either winding is accepted on read (validation normalizes).
inline std::string polygon_to_text(const std::vector<Point2>& vertices) {
  std::string out = std::to_string(vertices.size());
  out += '\n';
  for (const Point2& p : vertices) {
    out += detail::fmt_double(p.x);
    out += ' ';
    out += detail::fmt_double(p.y);
    out += '\n';
  }
  return out;
}

inline std::vector<Point2> polygon_from_text(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n)) throw Error(Error::Code::InvalidInput, "polygon text: missing vertex count");
  std::vector<Point2> verts(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!(in >> verts[i].x >> verts[i].y))
      throw Error(Error::Code::InvalidInput, "polygon text: truncated vertex list");
  return verts;
}

inline std::vector<Point2> read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Code::InvalidInput, "cannot open " + path);
  return polygon_from_text(in);
}

/// OFF format: "OFF", a counts line "V F E", V vertex lines, then F
/// face lines "k i1 ... ik".
inline std::string polyhedron_to_off(const std::vector<Point3>& vertices,
                                     const std::vector<std::vector<std::int32_t>>& rings) {
  std::size_t edges = 0;
  for (const auto& r : rings) edges += r.size();
  std::ostringstream out;
  out << "OFF\n" << vertices.size() << ' ' << rings.size() << ' ' << edges / 2 << '\n';
  for (const Point3& p : vertices)
    out << detail::fmt_double(p.x) << ' ' << detail::fmt_double(p.y) << ' '
        << detail::fmt_double(p.z) << '\n';
  for (const auto& r : rings) {
    out << r.size();
    for (const std::int32_t i : r) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

inline std::pair<std::vector<Point3>, std::vector<std::vector<std::int32_t>>> polyhedron_from_off(
    std::istream& in) {
  std::string magic;
  if (!(in >> magic) || magic != "OFF")
    throw Error(Error::Code::InvalidInput, "OFF: missing header");
  std::size_t nv = 0, nf = 0, ne = 0;
  if (!(in >> nv >> nf >> ne)) throw Error(Error::Code::InvalidInput, "OFF: bad counts line");
  std::vector<Point3> verts(nv);
  for (std::size_t i = 0; i < nv; ++i)
    if (!(in >> verts[i].x >> verts[i].y >> verts[i].z))
      throw Error(Error::Code::InvalidInput, "OFF: truncated vertex list");
  std::vector<std::vector<std::int32_t>> rings(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    std::size_t k = 0;
    if (!(in >> k) || k < 3) throw Error(Error::Code::InvalidInput, "OFF: bad face line");
    rings[f].resize(k);
    for (std::size_t i = 0; i < k; ++i)
      if (!(in >> rings[f][i])) throw Error(Error::Code::InvalidInput, "OFF: truncated face line");
  }
  return {std::move(verts), std::move(rings)};
}

inline std::pair<std::vector<Point3>, std::vector<std::vector<std::int32_t>>> read_off_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Code::InvalidInput, "cannot open " + path);
  return polyhedron_from_off(in);
}

inline void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Code::FileWrite, "cannot open " + path + " for writing");
  out << contents;
  if (!out) throw Error(Error::Code::FileWrite, "short write to " + path);
}

}  // namespace ptloc
