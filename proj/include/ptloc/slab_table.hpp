#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <vector>

#include "ptloc/polygon.hpp"

namespace ptloc {

/// Cap on the slab count. The default sizing rule wants slabs narrower
/// than the smallest per-edge y-extent, which is unbounded for shapes
/// with a nearly horizontal edge; candidate lists are variable-length,
/// so capping loses no correctness, only constant-time tightness.
inline constexpr int kMaxSlabs = 65536;

/// One-dimensional y-axis subdivision with per-slab candidate edges,
/// split into a left and a right boundary chain. Immutable after build.
struct SlabTable {
  ConvexPolygon polygon;
  double y_min = 0.0;
  double y_max = 0.0;
  int slab_count = 0;
  // CSR layout: lists for slab k are [offsets[k], offsets[k+1])
  std::vector<std::int32_t> left_offsets, left_edges;
  std::vector<std::int32_t> right_offsets, right_edges;
  int max_candidates = 0;

  std::size_t table_bytes() const {
    return (left_offsets.size() + left_edges.size() + right_offsets.size() +
            right_edges.size()) *
           sizeof(std::int32_t);
  }

  std::string report() const {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "slab M=%d maxcand=%d bytes=%zu", slab_count,
                  max_candidates, table_bytes());
    return buf;
  }

  Containment query(Point2 p) const {
    if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite query point");
    const double eps_abs = polygon.tolerance().eps_rel * polygon.diameter();
    if (p.y < y_min - eps_abs || p.y > y_max + eps_abs) return Containment::Outside;
    const double width = (y_max - y_min) / slab_count;
    int k = width > 0.0 ? static_cast<int>((p.y - y_min) / width) : 0;
    k = std::clamp(k, 0, slab_count - 1);

    const std::vector<PolygonEdge>& edges = polygon.edges();
    bool boundary = false;
    auto scan = [&](const std::vector<std::int32_t>& offs,
                    const std::vector<std::int32_t>& list) {
      for (std::int32_t i = offs[static_cast<std::size_t>(k)];
           i < offs[static_cast<std::size_t>(k) + 1]; ++i) {
        const PolygonEdge& e = edges[static_cast<std::size_t>(list[static_cast<std::size_t>(i)])];
        const double v = half_plane_side(e, p);
        if (v < -e.band) return false;
        if (v <= e.band) boundary = true;
      }
      return true;
    };
    if (!scan(left_offsets, left_edges)) return Containment::Outside;
    if (!scan(right_offsets, right_edges)) return Containment::Outside;
    return boundary ? Containment::Boundary : Containment::Inside;
  }
};

namespace detail {

// lowest vertex, ties broken toward smaller x; highest likewise
inline int extreme_vertex(const std::vector<Point2>& v, bool top) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    const Point2 a = v[static_cast<std::size_t>(i)];
    const Point2 b = v[static_cast<std::size_t>(best)];
    const bool better = top ? (a.y > b.y || (a.y == b.y && a.x < b.x))
                            : (a.y < b.y || (a.y == b.y && a.x < b.x));
    if (better) best = i;
  }
  return best;
}

inline void build_chain_lists(const ConvexPolygon& poly, int from, int to, double y_min,
                              double width, int slabs, std::vector<std::int32_t>& offsets,
                              std::vector<std::int32_t>& list) {
  std::vector<std::vector<std::int32_t>> per_slab(static_cast<std::size_t>(slabs));
  const int n = poly.size();
  for (int k = from; k != to; k = (k + 1) % n) {
    const PolygonEdge& e = poly.edges()[static_cast<std::size_t>(k)];
    const double lo = std::min(e.a.y, e.b.y);
    const double hi = std::max(e.a.y, e.b.y);
    int klo = width > 0.0 ? static_cast<int>((lo - y_min) / width) : 0;
    int khi = width > 0.0 ? static_cast<int>((hi - y_min) / width) : 0;
    klo = std::clamp(klo, 0, slabs - 1);
    khi = std::clamp(khi, 0, slabs - 1);
    for (int s = klo; s <= khi; ++s)
      per_slab[static_cast<std::size_t>(s)].push_back(static_cast<std::int32_t>(k));
  }
  offsets.assign(static_cast<std::size_t>(slabs) + 1, 0);
  for (int s = 0; s < slabs; ++s)
    offsets[static_cast<std::size_t>(s) + 1] =
        offsets[static_cast<std::size_t>(s)] +
        static_cast<std::int32_t>(per_slab[static_cast<std::size_t>(s)].size());
  list.clear();
  list.reserve(static_cast<std::size_t>(offsets.back()));
  for (const auto& v : per_slab) list.insert(list.end(), v.begin(), v.end());
}

}  // namespace detail

/// Builds the slab table. The default slab count makes slabs about as
/// narrow as the smallest per-edge |dy| (ignoring edges flatter than
/// the epsilon band), capped at kMaxSlabs; that reproduces the memory
/// sensitivity of this subdivision to nearly horizontal edges.
inline SlabTable build_slabs(const ConvexPolygon& poly, std::optional<int> slabs_opt = std::nullopt) {
  SlabTable table;
  table.polygon = poly;
  const std::vector<Point2>& v = poly.vertices();

  const int bottom = detail::extreme_vertex(v, false);
  const int top = detail::extreme_vertex(v, true);
  table.y_min = v[static_cast<std::size_t>(bottom)].y;
  table.y_max = v[static_cast<std::size_t>(top)].y;

  int slabs;
  if (slabs_opt) {
    slabs = *slabs_opt;
    if (slabs < 1 || slabs > kMaxSlabs)
      throw Error(Error::Code::InvalidInput, "build_slabs: slab count out of range");
  } else {
    const double eps_abs = poly.tolerance().eps_rel * poly.diameter();
    double dy_min = 0.0;
    for (const PolygonEdge& e : poly.edges()) {
      const double dy = std::abs(e.b.y - e.a.y);
      if (dy < eps_abs) continue;  // nearly horizontal edges just land in one slab
      if (dy_min == 0.0 || dy < dy_min) dy_min = dy;
    }
    const double extent = table.y_max - table.y_min;
    slabs = 1;
    if (dy_min > 0.0 && extent > 0.0)
      slabs = static_cast<int>(std::min<double>(std::ceil(extent / dy_min), kMaxSlabs));
    slabs = std::max(slabs, 1);
  }
  table.slab_count = slabs;

  const double width = (table.y_max - table.y_min) / slabs;
  // counterclockwise from bottom to top is the right boundary chain
  detail::build_chain_lists(poly, bottom, top, table.y_min, width, slabs,
                            table.right_offsets, table.right_edges);
  detail::build_chain_lists(poly, top, bottom, table.y_min, width, slabs,
                            table.left_offsets, table.left_edges);
  for (int s = 0; s < slabs; ++s) {
    const int cand = static_cast<int>(
        (table.left_offsets[static_cast<std::size_t>(s) + 1] -
         table.left_offsets[static_cast<std::size_t>(s)]) +
        (table.right_offsets[static_cast<std::size_t>(s) + 1] -
         table.right_offsets[static_cast<std::size_t>(s)]));
    table.max_candidates = std::max(table.max_candidates, cand);
  }
  return table;
}

}  // namespace ptloc
