#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <vector>

#include "ptloc/polygon.hpp"

namespace ptloc {

/// Largest automatic subdivision per octant. Correctness never depends
/// on m; the cap only bounds table size for very anisotropic shapes.
inline constexpr int kMaxPolarM = 4096;

inline int sector_count(int m) { return 8 * m; }

namespace detail {

// floor(t * m) with the t == 1 endpoint folded into the last bucket
inline int tan_bucket(double t, int m) {
  int i = static_cast<int>(t * static_cast<double>(m));
  if (i >= m) i = m - 1;
  if (i < 0) i = 0;
  return i;
}

}  // namespace detail

/// Maps a nonzero direction to one of 8*m angle sectors without trig.
/// Each octant splits one edge of an axis-aligned square into m equal
/// segments, so the sector boundaries are tan-spaced; ids grow
/// counterclockwise from the +x axis and boundary directions belong to
/// the counterclockwise octant. Scale-invariant: only the ratio of the
/// components matters.
inline int sector_index(Vec2 d, int m) {
  const double dx = d.x, dy = d.y;
  if (dx == 0.0 && dy == 0.0)
    throw Error(Error::Code::ZeroVector, "sector_index: zero vector");
  using detail::tan_bucket;
  if (dx > 0.0 && 0.0 <= dy && dy < dx) return tan_bucket(dy / dx, m);
  if (dy > 0.0 && 0.0 < dx && dx <= dy) return m + (m - 1 - tan_bucket(dx / dy, m));
  if (dy > 0.0 && -dy < dx && dx <= 0.0) return 2 * m + tan_bucket(-dx / dy, m);
  if (dy > 0.0 && dx <= -dy) return 3 * m + (m - 1 - tan_bucket(dy / -dx, m));
  if (dx < 0.0 && 0.0 <= -dy && -dy < -dx) return 4 * m + tan_bucket(dy / dx, m);
  if (dy < 0.0 && 0.0 < -dx && -dx <= -dy) return 5 * m + (m - 1 - tan_bucket(dx / dy, m));
  if (dy < 0.0 && 0.0 <= dx && dx < -dy) return 6 * m + tan_bucket(dx / -dy, m);
  return 7 * m + (m - 1 - tan_bucket(-dy / dx, m));
}

struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Exact angular bounds [lo, hi) of a sector id, derived from the
/// tan-spaced boundaries. Inverse of sector_index up to ties.
inline AngleInterval sector_angle_bounds(int id, int m) {
  if (m < 1 || id < 0 || id >= sector_count(m))
    throw Error(Error::Code::InvalidInput, "sector_angle_bounds: bad sector id");
  const int octant = id / m;
  const int local = id % m;
  const double quarter = std::numbers::pi / 4.0;
  if (octant % 2 == 0) {
    const double base = octant * quarter;
    return {base + std::atan(static_cast<double>(local) / m),
            base + std::atan(static_cast<double>(local + 1) / m)};
  }
  const double base = (octant + 1) * quarter;
  const int j = m - 1 - local;
  return {base - std::atan(static_cast<double>(j + 1) / m),
          base - std::atan(static_cast<double>(j) / m)};
}

/// Picks the per-octant subdivision for a polygon: the smallest power
/// of two m such that the widest sector, arctan(1/m), does not exceed
/// the smallest angular span of an edge seen from the reference point.
/// Then every sector contains at most one vertex direction, so at most
/// two candidate edges. Capped at kMaxPolarM.
inline int auto_m(const ConvexPolygon& poly) {
  const Point2 xt = reference_point(poly);
  const std::vector<Point2>& v = poly.vertices();
  const std::size_t n = v.size();
  double min_span = kTwoPi;
  double prev = polar_exact(v[0] - xt).phi;
  for (std::size_t k = 0; k < n; ++k) {
    const double next = polar_exact(v[(k + 1) % n] - xt).phi;
    double span = next - prev;
    if (span < 0.0) span += kTwoPi;
    if (span > 0.0) min_span = std::min(min_span, span);
    prev = next;
  }
  int m = 1;
  while (std::atan(1.0 / m) > min_span && m < kMaxPolarM) m <<= 1;
  return m;
}

/// Candidate edges of one sector: a cyclically contiguous run in edge
/// order starting at `first`. count == 0 never occurs for a built grid.
struct SectorRange {
  std::int32_t first = 0;
  std::int32_t count = 0;
};

/// Per-sector candidate-edge table around an interior reference point.
/// Immutable after build; queries are pure and thread-safe.
struct PolarGrid {
  ConvexPolygon polygon;
  Point2 x_t;
  int m = 1;
  std::vector<SectorRange> sectors;
  int max_candidates = 0;

  std::size_t table_bytes() const { return sectors.size() * sizeof(SectorRange); }

  std::string report() const {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "polar m=%d maxcand=%d bytes=%zu", m, max_candidates,
                  table_bytes());
    return buf;
  }

  /// O(1) containment: locate the sector of p's direction and run the
  /// half-plane test against that sector's candidate edges only.
  Containment query(Point2 p) const {
    if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite query point");
    const Vec2 d = p - x_t;
    const double eps_abs = polygon.tolerance().eps_rel * polygon.diameter();
    if (norm2(d) <= eps_abs * eps_abs) return Containment::Inside;  // x_t is strictly interior
    const SectorRange range = sectors[static_cast<std::size_t>(sector_index(d, m))];
    const std::vector<PolygonEdge>& edges = poly_edges();
    const int n = static_cast<int>(edges.size());
    bool boundary = false;
    int idx = range.first;
    for (int k = 0; k < range.count; ++k) {
      const PolygonEdge& e = edges[static_cast<std::size_t>(idx)];
      const double v = half_plane_side(e, p);
      if (v < -e.band) return Containment::Outside;
      if (v <= e.band) boundary = true;
      if (++idx == n) idx = 0;
    }
    return boundary ? Containment::Boundary : Containment::Inside;
  }

 private:
  const std::vector<PolygonEdge>& poly_edges() const { return polygon.edges(); }
};

/// Builds the sector table. Each edge is marked in the inclusive cyclic
/// sector range between its endpoint directions; sectors that contain a
/// vertex direction therefore hold both incident edges, which keeps
/// coverage conservative at shared vertices.
inline PolarGrid build_polar_grid(const ConvexPolygon& poly,
                                  std::optional<int> m_opt = std::nullopt) {
  const int m = m_opt.value_or(auto_m(poly));
  if (m < 1 || m > (1 << 20))
    throw Error(Error::Code::InvalidInput, "build_polar_grid: m out of range");

  PolarGrid grid;
  grid.polygon = poly;
  grid.x_t = reference_point(poly);
  grid.m = m;

  const int n = poly.size();
  const int nsec = sector_count(m);
  std::vector<int> vertex_sector(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    vertex_sector[static_cast<std::size_t>(k)] =
        sector_index(poly.vertices()[static_cast<std::size_t>(k)] - grid.x_t, m);

  // edge lists per sector; runs stay sorted because edges are visited in order
  std::vector<std::vector<std::int32_t>> marks(static_cast<std::size_t>(nsec));
  for (int k = 0; k < n; ++k) {
    const int sa = vertex_sector[static_cast<std::size_t>(k)];
    const int sb = vertex_sector[static_cast<std::size_t>((k + 1) % n)];
    const int span = (sb - sa + nsec) % nsec;
    int s = sa;
    for (int j = 0; j <= span; ++j) {
      marks[static_cast<std::size_t>(s)].push_back(static_cast<std::int32_t>(k));
      if (++s == nsec) s = 0;
    }
  }

  grid.sectors.resize(static_cast<std::size_t>(nsec));
  for (int s = 0; s < nsec; ++s) {
    const std::vector<std::int32_t>& run = marks[static_cast<std::size_t>(s)];
    const int t = static_cast<int>(run.size());
    if (t == 0) throw Error(Error::Code::InvalidInput, "empty sector during build");
    SectorRange r;
    r.count = static_cast<std::int32_t>(t);
    if (t == n) {
      r.first = 0;
    } else {
      // the marked set is one cyclic run; it starts after the largest gap
      int best_gap = run.front() + n - run.back();
      int start = 0;
      for (int i = 0; i + 1 < t; ++i) {
        const int gap = run[static_cast<std::size_t>(i + 1)] - run[static_cast<std::size_t>(i)];
        if (gap > best_gap) {
          best_gap = gap;
          start = i + 1;
        }
      }
      r.first = run[static_cast<std::size_t>(start)];
      // sanity: every marked edge must fall inside the chosen cyclic
      // range; if the run is not contiguous (it always is for a convex
      // polygon), widen to the full edge cycle rather than lose coverage
      for (const std::int32_t e : run) {
        if ((e - r.first + n) % n >= t) {
          r.first = 0;
          r.count = static_cast<std::int32_t>(n);
          break;
        }
      }
    }
    grid.sectors[static_cast<std::size_t>(s)] = r;
    grid.max_candidates = std::max(grid.max_candidates, static_cast<int>(r.count));
  }
  return grid;
}

}  // namespace ptloc
