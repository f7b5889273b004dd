#pragma once

// Test-side helpers and oracles. The hit-edge oracles locate geometry by
// routes independent of the sector/cell bucketing they are used to check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ptloc/cube_grid.hpp"
#include "ptloc/generators.hpp"
#include "ptloc/polar_grid.hpp"
#include "ptloc/polygon.hpp"
#include "ptloc/polyhedron.hpp"

namespace ptloc::test {

// First boundary edge crossed by the ray origin + t * dir (t > 0) from an
// interior origin, by brute force over all edge half-planes.
inline int ray_exit_edge_linear(const ConvexPolygon& poly, Point2 origin, Vec2 dir) {
  int best = -1;
  double best_t = std::numeric_limits<double>::infinity();
  const std::vector<PolygonEdge>& edges = poly.edges();
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    const PolygonEdge& e = edges[static_cast<std::size_t>(k)];
    const double slope = dot(e.normal, dir);
    if (slope >= 0.0) continue;  // ray moves inward or parallel to this edge
    const double value = half_plane_side(e, origin);
    const double t = value / -slope;
    if (t < best_t) {
      best_t = t;
      best = k;
    }
  }
  return best;
}

// Same question answered from exact vertex angles around the origin:
// edge k spans the angular wedge [phi(v_k), phi(v_k+1)).
struct AngularHitOracle {
  std::vector<double> sorted_phi;
  std::vector<int> edge_of;

  AngularHitOracle(const ConvexPolygon& poly, Point2 origin) {
    const std::vector<Point2>& v = poly.vertices();
    std::vector<std::pair<double, int>> items;
    items.reserve(v.size());
    for (int k = 0; k < static_cast<int>(v.size()); ++k)
      items.emplace_back(polar_exact(v[static_cast<std::size_t>(k)] - origin).phi, k);
    std::sort(items.begin(), items.end());
    for (const auto& [phi, k] : items) {
      sorted_phi.push_back(phi);
      edge_of.push_back(k);
    }
  }

  int hit(double phi) const {
    const auto it = std::upper_bound(sorted_phi.begin(), sorted_phi.end(), phi);
    const std::size_t idx =
        it == sorted_phi.begin() ? sorted_phi.size() - 1
                                 : static_cast<std::size_t>(it - sorted_phi.begin()) - 1;
    return edge_of[idx];
  }
};

// First face crossed by the ray origin + t * dir from an interior origin.
inline int ray_exit_face_linear(const ConvexPolyhedron& ph, Point3 origin, Vec3 dir) {
  int best = -1;
  double best_t = std::numeric_limits<double>::infinity();
  const std::vector<PolyFace>& faces = ph.faces();
  for (int k = 0; k < static_cast<int>(faces.size()); ++k) {
    const PolyFace& f = faces[static_cast<std::size_t>(k)];
    const double slope = dot(f.normal, dir);
    if (slope <= 0.0) continue;
    const double t = (f.offset - dot(f.normal, origin)) / slope;
    if (t < best_t) {
      best_t = t;
      best = k;
    }
  }
  return best;
}

inline bool sector_contains_edge(const PolarGrid& grid, int sector, int edge) {
  const SectorRange r = grid.sectors[static_cast<std::size_t>(sector)];
  const int n = grid.polygon.size();
  return (edge - r.first + n) % n < r.count;
}

inline bool cell_contains_face(const CubeGrid& grid, CellId cell, int face) {
  const int slot = grid.cell_slot(cell);
  for (std::int32_t i = grid.offsets[static_cast<std::size_t>(slot)];
       i < grid.offsets[static_cast<std::size_t>(slot) + 1]; ++i)
    if (grid.candidates[static_cast<std::size_t>(i)] == face) return true;
  return false;
}

// Minimal well-formedness scan: every tag closes, nesting matches, and
// attribute quoting is balanced. Enough to catch emitter slips.
inline bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] != '<') {
      if (text[i] == '>') return false;
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    bool closing = false, declaration = false;
    if (j < n && text[j] == '?') declaration = true;
    if (j < n && text[j] == '/') {
      closing = true;
      ++j;
    }
    std::string name;
    while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '?' ||
                     text[j] == '_' || text[j] == '-'))
      name += text[j++];
    // scan to the tag end, skipping quoted attribute values
    bool self_closing = false;
    while (j < n && text[j] != '>') {
      if (text[j] == '"') {
        ++j;
        while (j < n && text[j] != '"') ++j;
        if (j == n) return false;
      } else if (text[j] == '<') {
        return false;
      }
      ++j;
    }
    if (j == n) return false;
    if (text[j - 1] == '/' || (declaration && text[j - 1] == '?')) self_closing = true;
    if (!declaration) {
      if (closing) {
        if (stack.empty() || stack.back() != name) return false;
        stack.pop_back();
      } else if (!self_closing) {
        stack.push_back(name);
      }
    }
    i = j + 1;
  }
  return stack.empty();
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

inline ConvexPolygon square_0_2() {
  return validate_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
}

inline ConvexPolygon unit_square() {
  return validate_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline ConvexPolygon regular_ngon(int n, double rotation = 0.0) {
  return gen_polygon({.family = ShapeFamily::RegularNgon, .size = n, .rotation = rotation});
}

// regular polygon squashed flat: tiny angular spans around the centroid,
// which drives the automatic sector resolution into the cap
inline ConvexPolygon squashed_ngon(int n, double y_scale) {
  std::vector<Point2> v;
  for (int k = 0; k < n; ++k) {
    const double a = k * kTwoPi / n;
    v.push_back({std::cos(a), y_scale * std::sin(a)});
  }
  return validate_polygon(std::move(v));
}

inline ConvexPolyhedron unit_cube() {
  std::vector<Point3> verts = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  std::vector<std::vector<std::int32_t>> rings = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                                  {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  return validate_polyhedron(std::move(verts), std::move(rings));
}

inline ConvexPolyhedron regular_tetrahedron() {
  std::vector<Point3> verts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<std::vector<std::int32_t>> rings = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return validate_polyhedron(std::move(verts), std::move(rings));
}

}  // namespace ptloc::test
