#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <vector>

#include "ptloc/polyhedron.hpp"

namespace ptloc {

inline constexpr int kMaxCubeM = 256;

enum class CubeFace : int { PosX = 0, NegX = 1, PosY = 2, NegY = 3, PosZ = 4, NegZ = 5 };

inline const char* to_string(CubeFace f) {
  static constexpr const char* names[6] = {"+X", "-X", "+Y", "-Y", "+Z", "-Z"};
  return names[static_cast<int>(f)];
}

/// One cell of the direction cube: a face plus grid coordinates i (u
/// axis) and j (v axis), both in [0, m).
struct CellId {
  CubeFace face = CubeFace::PosX;
  int i = 0;
  int j = 0;
};

inline bool operator==(CellId a, CellId b) {
  return a.face == b.face && a.i == b.i && a.j == b.j;
}

/// Signed axis direction of a cube face.
inline Vec3 face_axis(CubeFace f) {
  switch (f) {
    case CubeFace::PosX: return {1, 0, 0};
    case CubeFace::NegX: return {-1, 0, 0};
    case CubeFace::PosY: return {0, 1, 0};
    case CubeFace::NegY: return {0, -1, 0};
    case CubeFace::PosZ: return {0, 0, 1};
    case CubeFace::NegZ: return {0, 0, -1};
  }
  return {1, 0, 0};
}

/// The two coordinate axes whose ratios against the dominant axis give
/// a face's (u, v). Both signs of an axis share the same mapping.
inline void face_uv_axes(CubeFace f, Vec3& u_axis, Vec3& v_axis) {
  switch (f) {
    case CubeFace::PosX:
    case CubeFace::NegX:
      u_axis = {0, 1, 0};
      v_axis = {0, 0, 1};
      break;
    case CubeFace::PosY:
    case CubeFace::NegY:
      u_axis = {1, 0, 0};
      v_axis = {0, 0, 1};
      break;
    case CubeFace::PosZ:
    case CubeFace::NegZ:
      u_axis = {1, 0, 0};
      v_axis = {0, 1, 0};
      break;
  }
}

/// Face (u, v) of a direction known to lie in the face's cone; both in
/// [-1, 1]. Scale-invariant.
inline Vec2 face_uv(CubeFace f, Vec3 d) {
  Vec3 ua, va;
  face_uv_axes(f, ua, va);
  const double a = dot(face_axis(f), d);
  return {dot(ua, d) / a, dot(va, d) / a};
}

/// Maps a nonzero direction to a cube cell: the dominant axis (largest
/// absolute component, ties resolved x over y over z) picks the face,
/// the two remaining component ratios pick the cell. No trig involved.
inline CellId cell_index(Vec3 d, int m) {
  if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0)
    throw Error(Error::Code::ZeroVector, "cell_index: zero vector");
  const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
  CubeFace face;
  if (ax >= ay && ax >= az)
    face = d.x > 0.0 ? CubeFace::PosX : CubeFace::NegX;
  else if (ay >= az)
    face = d.y > 0.0 ? CubeFace::PosY : CubeFace::NegY;
  else
    face = d.z > 0.0 ? CubeFace::PosZ : CubeFace::NegZ;
  const Vec2 uv = face_uv(face, d);
  auto bucket = [m](double c) {
    int i = static_cast<int>((c + 1.0) * 0.5 * static_cast<double>(m));
    return std::clamp(i, 0, m - 1);
  };
  return {face, bucket(uv.x), bucket(uv.y)};
}

/// Central projection of one polyhedron face onto a cube face's (u, v)
/// square: the face ring is translated so the reference point is the
/// origin, clipped against the four planes bounding the cube face's
/// direction cone, and projected. Returns an empty list when the face
/// is not visible through that cone. The result is convex but may be
/// degenerate (a segment or point) when the face only grazes the cone.
inline std::vector<Vec2> clip_face_to_cone(const ConvexPolyhedron& ph, int face_idx,
                                           CubeFace cube_face, Point3 x_t) {
  const PolyFace& f = ph.faces()[static_cast<std::size_t>(face_idx)];
  std::vector<Vec3> poly;
  poly.reserve(f.ring.size());
  for (const std::int32_t i : f.ring)
    poly.push_back(ph.vertices()[static_cast<std::size_t>(i)] - x_t);

  const Vec3 axis = face_axis(cube_face);
  Vec3 ua, va;
  face_uv_axes(cube_face, ua, va);
  const std::array<Vec3, 4> planes = {axis - ua, axis + ua, axis - va, axis + va};

  std::vector<Vec3> next;
  for (const Vec3& n : planes) {
    next.clear();
    const std::size_t sz = poly.size();
    for (std::size_t i = 0; i < sz; ++i) {
      const Vec3& a = poly[i];
      const Vec3& b = poly[(i + 1) % sz];
      const double da = dot(n, a);
      const double db = dot(n, b);
      if (da >= 0.0) next.push_back(a);
      if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
        const double t = da / (da - db);
        next.push_back(a + t * (b - a));
      }
    }
    poly.swap(next);
    if (poly.empty()) return {};
  }

  std::vector<Vec2> uv;
  uv.reserve(poly.size());
  for (const Vec3& w : poly) uv.push_back(face_uv(cube_face, w));
  return uv;
}

namespace detail {

// closed-interval overlap
inline bool intervals_touch(double alo, double ahi, double blo, double bhi) {
  return alo <= bhi && blo <= ahi;
}

// Exact separating-axis test between a convex (possibly degenerate)
// polygon and an axis-aligned box, both treated as closed sets.
inline bool convex_box_overlap(const std::vector<Vec2>& pts, Vec2 box_lo, Vec2 box_hi) {
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const Vec2& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  if (!intervals_touch(minx, maxx, box_lo.x, box_hi.x)) return false;
  if (!intervals_touch(miny, maxy, box_lo.y, box_hi.y)) return false;

  const std::array<Vec2, 4> corners = {Vec2{box_lo.x, box_lo.y}, Vec2{box_hi.x, box_lo.y},
                                       Vec2{box_hi.x, box_hi.y}, Vec2{box_lo.x, box_hi.y}};
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 edge = pts[(i + 1) % n] - pts[i];
    if (edge.x == 0.0 && edge.y == 0.0) continue;
    const Vec2 axis = perp(edge);
    double plo = dot(axis, pts[0]), phi = plo;
    for (const Vec2& p : pts) {
      const double v = dot(axis, p);
      plo = std::min(plo, v);
      phi = std::max(phi, v);
    }
    double blo = dot(axis, corners[0]), bhi = blo;
    for (const Vec2& c : corners) {
      const double v = dot(axis, c);
      blo = std::min(blo, v);
      bhi = std::max(bhi, v);
    }
    if (!intervals_touch(plo, phi, blo, bhi)) return false;
  }
  return true;
}

}  // namespace detail

/// Cells of an m-by-m grid over [-1,1]^2 whose closed box intersects
/// the closed convex polygon. Conservative by construction: touching a
/// cell border counts as coverage.
inline std::vector<std::pair<int, int>> conservative_raster(const std::vector<Vec2>& poly,
                                                            int m) {
  std::vector<std::pair<int, int>> cells;
  if (poly.empty()) return cells;
  double minx = poly[0].x, maxx = poly[0].x, miny = poly[0].y, maxy = poly[0].y;
  for (const Vec2& p : poly) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double step = 2.0 / m;
  auto lo_cell = [&](double c) {
    return std::clamp(static_cast<int>(std::floor((c + 1.0) / step)) - 1, 0, m - 1);
  };
  auto hi_cell = [&](double c) {
    return std::clamp(static_cast<int>(std::floor((c + 1.0) / step)) + 1, 0, m - 1);
  };
  for (int j = lo_cell(miny); j <= hi_cell(maxy); ++j) {
    for (int i = lo_cell(minx); i <= hi_cell(maxx); ++i) {
      const Vec2 box_lo{-1.0 + i * step, -1.0 + j * step};
      const Vec2 box_hi{-1.0 + (i + 1) * step, -1.0 + (j + 1) * step};
      if (detail::convex_box_overlap(poly, box_lo, box_hi)) cells.emplace_back(i, j);
    }
  }
  return cells;
}

/// Six m-by-m grids of candidate polyhedron faces around an interior
/// reference point. Immutable after build; queries are pure.
struct CubeGrid {
  ConvexPolyhedron polyhedron;
  Point3 x_t;
  int m = 1;
  // CSR layout over 6*m*m cells, cell index (face*m + j)*m + i
  std::vector<std::int32_t> offsets;
  std::vector<std::int32_t> candidates;
  int max_candidates = 0;

  int cell_slot(CellId c) const {
    return (static_cast<int>(c.face) * m + c.j) * m + c.i;
  }

  std::size_t table_bytes() const {
    return (offsets.size() + candidates.size()) * sizeof(std::int32_t);
  }

  std::string report() const {
    char buf[112];
    std::snprintf(buf, sizeof(buf), "cube m=%d maxcand=%d cells=%d bytes=%zu", m,
                  max_candidates, 6 * m * m, table_bytes());
    return buf;
  }

  /// O(1) containment: plane tests against the candidate faces of the
  /// cell containing p's direction from the reference point.
  Containment query(Point3 p) const {
    if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite query point");
    const Vec3 d = p - x_t;
    const double band = polyhedron.tolerance().eps_rel * polyhedron.diameter();
    if (norm2(d) <= band * band) return Containment::Inside;
    const int slot = cell_slot(cell_index(d, m));
    const std::vector<PolyFace>& faces = polyhedron.faces();
    bool boundary = false;
    for (std::int32_t i = offsets[static_cast<std::size_t>(slot)];
         i < offsets[static_cast<std::size_t>(slot) + 1]; ++i) {
      const PolyFace& f = faces[static_cast<std::size_t>(candidates[static_cast<std::size_t>(i)])];
      const double v = dot(f.normal, p) - f.offset;
      if (v > band) return Containment::Outside;
      if (v >= -band) boundary = true;
    }
    return boundary ? Containment::Boundary : Containment::Inside;
  }
};

inline int default_cube_m(int face_count) {
  const int target = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(face_count))));
  int m = 1;
  while (m < target && m < kMaxCubeM) m <<= 1;
  return m;
}

/// Builds the cube grid: every polyhedron face is clipped against each
/// cube face's direction cone, projected, and conservatively
/// rasterized into that face's cells.
inline CubeGrid build_cube_grid(const ConvexPolyhedron& ph,
                                std::optional<int> m_opt = std::nullopt) {
  const int m = m_opt.value_or(default_cube_m(ph.face_count()));
  if (m < 1 || m > (1 << 14))
    throw Error(Error::Code::InvalidInput, "build_cube_grid: m out of range");

  CubeGrid grid;
  grid.polyhedron = ph;
  grid.x_t = reference_point3(ph);
  grid.m = m;

  const int ncells = 6 * m * m;
  std::vector<std::vector<std::int32_t>> cells(static_cast<std::size_t>(ncells));
  for (int f = 0; f < ph.face_count(); ++f) {
    for (int cf = 0; cf < 6; ++cf) {
      const CubeFace cube_face = static_cast<CubeFace>(cf);
      const std::vector<Vec2> uv = clip_face_to_cone(ph, f, cube_face, grid.x_t);
      if (uv.empty()) continue;
      for (const auto& [i, j] : conservative_raster(uv, m)) {
        const int slot = (cf * m + j) * m + i;
        cells[static_cast<std::size_t>(slot)].push_back(static_cast<std::int32_t>(f));
      }
    }
  }

  grid.offsets.assign(static_cast<std::size_t>(ncells) + 1, 0);
  for (int s = 0; s < ncells; ++s) {
    const int len = static_cast<int>(cells[static_cast<std::size_t>(s)].size());
    if (len == 0) throw Error(Error::Code::InvalidInput, "empty cube cell during build");
    grid.offsets[static_cast<std::size_t>(s) + 1] =
        grid.offsets[static_cast<std::size_t>(s)] + len;
    grid.max_candidates = std::max(grid.max_candidates, len);
  }
  grid.candidates.reserve(static_cast<std::size_t>(grid.offsets.back()));
  for (const auto& c : cells) grid.candidates.insert(grid.candidates.end(), c.begin(), c.end());
  return grid;
}

}  // namespace ptloc
