#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ptloc/geometry.hpp"

namespace ptloc {

/// Directed polygon edge a->b with a precomputed inward normal. The
/// normal is deliberately left unnormalized (length == edge length), so
/// a side test is two multiplications and two additions; `band` is the
/// matching absolute threshold eps_rel * diameter * |normal|.
struct PolygonEdge {
  Point2 a;
  Point2 b;
  Vec2 normal;
  double offset = 0.0;
  double band = 0.0;
};

/// Strictly convex polygon with counterclockwise vertices. Instances
/// are immutable once validated and safe to share across threads.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;  // empty; only validate_polygon yields a usable instance

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<PolygonEdge>& edges() const { return edges_; }
  double diameter() const { return diameter_; }
  Tolerance tolerance() const { return tol_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  friend ConvexPolygon validate_polygon(std::vector<Point2> vertices, Tolerance tol);

 private:
  std::vector<Point2> vertices_;
  std::vector<PolygonEdge> edges_;
  double diameter_ = 0.0;
  Tolerance tol_;
};

namespace detail {

inline double max_pairwise_distance(const std::vector<Point2>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, norm2(pts[j] - pts[i]));
  return std::sqrt(best);
}

inline double signed_area2(const std::vector<Point2>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2& a = pts[i];
    const Point2& b = pts[(i + 1) % pts.size()];
    s += cross(a, b);
  }
  return s;
}

}  // namespace detail

/// Validates a vertex loop as a strictly convex polygon. Clockwise
/// input is reversed, not rejected. Throws Error with TooFewVertices,
/// DegenerateEdge (repeated or collinear vertices within tolerance) or
/// NonConvex.
inline ConvexPolygon validate_polygon(std::vector<Point2> vertices, Tolerance tol = {}) {
  if (tol.eps_rel <= 0.0) throw Error(Error::Code::InvalidInput, "eps_rel must be positive");
  if (vertices.size() < 3)
    throw Error(Error::Code::TooFewVertices, "polygon needs at least 3 vertices");
  for (const Point2& p : vertices)
    if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite vertex");

  if (detail::signed_area2(vertices) < 0.0)
    std::reverse(vertices.begin(), vertices.end());

  const std::size_t n = vertices.size();
  const double diameter = detail::max_pairwise_distance(vertices);
  const double eps_len = tol.eps_rel * diameter;

  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e0 = vertices[(k + 1) % n] - vertices[k];
    const Vec2 e1 = vertices[(k + 2) % n] - vertices[(k + 1) % n];
    const double len0 = norm(e0), len1 = norm(e1);
    if (len0 <= eps_len)
      throw Error(Error::Code::DegenerateEdge, "repeated vertices at index " + std::to_string(k));
    const double turn = cross(e0, e1);
    if (turn <= tol.eps_rel * len0 * len1) {
      if (turn < -tol.eps_rel * len0 * len1)
        throw Error(Error::Code::NonConvex,
                    "reflex vertex at index " + std::to_string((k + 1) % n));
      throw Error(Error::Code::DegenerateEdge,
                  "collinear vertices at index " + std::to_string((k + 1) % n));
    }
  }

  ConvexPolygon poly;
  poly.vertices_ = std::move(vertices);
  poly.diameter_ = diameter;
  poly.tol_ = tol;
  poly.edges_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point2 a = poly.vertices_[k];
    const Point2 b = poly.vertices_[(k + 1) % n];
    PolygonEdge e;
    e.a = a;
    e.b = b;
    e.normal = perp(b - a);  // inward for counterclockwise order
    e.offset = dot(e.normal, a);
    e.band = eps_len * norm(e.normal);
    poly.edges_.push_back(e);
  }
  return poly;
}

/// Signed side value of p against an edge's inward half-plane:
/// positive inside, negative outside, |value| <= edge band on the line.
inline double half_plane_side(const PolygonEdge& edge, Point2 p) {
  return edge.normal.x * p.x + edge.normal.y * p.y - edge.offset;
}

/// O(N) half-plane separation test over all edges.
inline Containment point_in_polygon_linear(const ConvexPolygon& poly, Point2 p) {
  if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite query point");
  bool boundary = false;
  for (const PolygonEdge& e : poly.edges()) {
    const double v = half_plane_side(e, p);
    if (v < -e.band) return Containment::Outside;
    if (v <= e.band) boundary = true;
  }
  return boundary ? Containment::Boundary : Containment::Inside;
}

/// Interior pivot: midpoint of vertices 0 and floor(N/2) when that point
/// is strictly inside, otherwise the vertex centroid. The fallback
/// matters for triangles, where the midpoint lands on an edge.
inline Point2 reference_point(const ConvexPolygon& poly) {
  const std::vector<Point2>& v = poly.vertices();
  const Point2 mid = 0.5 * (v[0] + v[v.size() / 2]);
  if (point_in_polygon_linear(poly, mid) == Containment::Inside) return mid;
  Point2 c{0.0, 0.0};
  for (const Point2& p : v) c = c + p;
  return c / static_cast<double>(v.size());
}

namespace detail {

// Orders directions counterclockwise starting at a fixed ray r0.
// half() splits the circle into [0,pi) and [pi,2pi) relative to r0 so
// that two cross products give a total angular order without trig.
struct RelativeAngleOrder {
  Vec2 r0;

  int half(Vec2 a) const {
    const double c = cross(r0, a);
    if (c > 0.0) return 0;
    if (c < 0.0) return 1;
    return dot(r0, a) >= 0.0 ? 0 : 1;
  }

  // angle(a) < angle(b), both measured counterclockwise from r0
  bool less(Vec2 a, Vec2 b) const {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0.0;
  }
};

}  // namespace detail

/// O(lg N) test: binary search of the vertex fan around the interior
/// pivot, then a single half-plane test of the wedge's edge. Agrees
/// with point_in_polygon_linear under the shared tolerance contract.
/// The pivot must come from reference_point(poly); callers that test
/// many points against one polygon should precompute it.
inline Containment point_in_polygon_logn(const ConvexPolygon& poly, Point2 p, Point2 pivot) {
  if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite query point");
  const std::vector<Point2>& v = poly.vertices();
  const int n = static_cast<int>(v.size());
  const Vec2 q = p - pivot;
  if (q.x == 0.0 && q.y == 0.0) return Containment::Inside;

  const detail::RelativeAngleOrder order{v[0] - pivot};
  // largest k with angle(v[k]) <= angle(q); k = 0 always qualifies
  int lo = 0, hi = n - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (order.less(q, v[mid] - pivot))
      hi = mid - 1;
    else
      lo = mid;
  }
  const PolygonEdge& e = poly.edges()[lo];
  const double s = half_plane_side(e, p);
  if (s < -e.band) return Containment::Outside;
  if (s <= e.band) return Containment::Boundary;
  return Containment::Inside;
}

inline Containment point_in_polygon_logn(const ConvexPolygon& poly, Point2 p) {
  return point_in_polygon_logn(poly, p, reference_point(poly));
}

}  // namespace ptloc
