#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ptloc/geometry.hpp"

namespace ptloc {

/// Polyhedron face: a planar vertex ring plus its outward plane in the
/// form dot(normal, p) <= offset for interior points. Normals are unit
/// length so the tolerance band is eps_rel * diameter directly.
struct PolyFace {
  std::vector<std::int32_t> ring;
  Vec3 normal;
  double offset = 0.0;
};

/// Closed convex polyhedron with outward-oriented faces. Immutable
/// after validation and safe to share across threads.
class ConvexPolyhedron {
 public:
  ConvexPolyhedron() = default;  // empty; only validate_polyhedron yields a usable instance

  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<PolyFace>& faces() const { return faces_; }
  double diameter() const { return diameter_; }
  Tolerance tolerance() const { return tol_; }
  int face_count() const { return static_cast<int>(faces_.size()); }

  friend ConvexPolyhedron validate_polyhedron(std::vector<Point3> vertices,
                                              std::vector<std::vector<std::int32_t>> rings,
                                              Tolerance tol);

 private:
  std::vector<Point3> vertices_;
  std::vector<PolyFace> faces_;
  double diameter_ = 0.0;
  Tolerance tol_;
};

namespace detail {

inline Vec3 newell_normal(const std::vector<Point3>& verts,
                          const std::vector<std::int32_t>& ring) {
  Vec3 n{0, 0, 0};
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point3& a = verts[static_cast<std::size_t>(ring[i])];
    const Point3& b = verts[static_cast<std::size_t>(ring[(i + 1) % ring.size()])];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return n;
}

inline double max_pairwise_distance3(const std::vector<Point3>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, norm2(pts[j] - pts[i]));
  return std::sqrt(best);
}

}  // namespace detail

/// Validates vertices plus face index rings as a closed convex
/// polyhedron. Rings are reoriented so the vertex centroid lies on the
/// inner side of every face plane. Throws Error with NonPlanarFace,
/// NonConvex or OpenSurface.
inline ConvexPolyhedron validate_polyhedron(std::vector<Point3> vertices,
                                            std::vector<std::vector<std::int32_t>> rings,
                                            Tolerance tol = {}) {
  if (tol.eps_rel <= 0.0) throw Error(Error::Code::InvalidInput, "eps_rel must be positive");
  if (vertices.size() < 4)
    throw Error(Error::Code::TooFewVertices, "polyhedron needs at least 4 vertices");
  for (const Point3& p : vertices)
    if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite vertex");
  if (rings.size() < 4) throw Error(Error::Code::OpenSurface, "polyhedron needs at least 4 faces");

  const int nv = static_cast<int>(vertices.size());
  for (const auto& ring : rings) {
    if (ring.size() < 3) throw Error(Error::Code::InvalidInput, "face ring with fewer than 3 vertices");
    for (const std::int32_t i : ring)
      if (i < 0 || i >= nv) throw Error(Error::Code::InvalidInput, "face index out of range");
  }

  const double diameter = detail::max_pairwise_distance3(vertices);
  const double eps_abs = tol.eps_rel * diameter;

  Point3 centroid{0, 0, 0};
  for (const Point3& p : vertices) centroid = centroid + p;
  centroid = centroid / static_cast<double>(nv);

  ConvexPolyhedron ph;
  ph.faces_.reserve(rings.size());
  for (auto& ring : rings) {
    Vec3 n = detail::newell_normal(vertices, ring);
    const double len = norm(n);
    if (len <= 0.0) throw Error(Error::Code::NonPlanarFace, "degenerate face ring");
    n = n / len;
    Point3 fc{0, 0, 0};
    for (const std::int32_t i : ring) fc = fc + vertices[static_cast<std::size_t>(i)];
    fc = fc / static_cast<double>(ring.size());
    double d = dot(n, fc);
    if (dot(n, centroid) > d) {  // make the normal point away from the interior
      std::reverse(ring.begin(), ring.end());
      n = -1.0 * n;
      d = -d;
    }
    for (const std::int32_t i : ring)
      if (std::abs(dot(n, vertices[static_cast<std::size_t>(i)]) - d) > eps_abs)
        throw Error(Error::Code::NonPlanarFace, "face ring is not planar");
    PolyFace f;
    f.ring = std::move(ring);
    f.normal = n;
    f.offset = d;
    ph.faces_.push_back(std::move(f));
  }

  for (const PolyFace& f : ph.faces_)
    for (const Point3& p : vertices)
      if (dot(f.normal, p) > f.offset + eps_abs)
        throw Error(Error::Code::NonConvex, "vertex outside a face plane");

  // closed surface: every undirected edge shared by exactly two faces
  std::map<std::pair<std::int32_t, std::int32_t>, int> edge_use;
  for (const PolyFace& f : ph.faces_) {
    for (std::size_t i = 0; i < f.ring.size(); ++i) {
      std::int32_t a = f.ring[i];
      std::int32_t b = f.ring[(i + 1) % f.ring.size()];
      if (a == b) throw Error(Error::Code::InvalidInput, "repeated index in face ring");
      if (a > b) std::swap(a, b);
      ++edge_use[{a, b}];
    }
  }
  for (const auto& [edge, uses] : edge_use)
    if (uses != 2) throw Error(Error::Code::OpenSurface, "edge not shared by exactly two faces");

  ph.vertices_ = std::move(vertices);
  ph.diameter_ = diameter;
  ph.tol_ = tol;
  return ph;
}

/// O(F) plane test against every face.
inline Containment point_in_polyhedron_linear(const ConvexPolyhedron& ph, Point3 p) {
  if (!is_finite(p)) throw Error(Error::Code::InvalidInput, "non-finite query point");
  const double band = ph.tolerance().eps_rel * ph.diameter();
  bool boundary = false;
  for (const PolyFace& f : ph.faces()) {
    const double v = dot(f.normal, p) - f.offset;
    if (v > band) return Containment::Outside;
    if (v >= -band) boundary = true;
  }
  return boundary ? Containment::Boundary : Containment::Inside;
}

/// Interior reference point: the vertex centroid, which is strictly
/// inside any validated convex polyhedron with positive volume.
inline Point3 reference_point3(const ConvexPolyhedron& ph) {
  Point3 c{0, 0, 0};
  for (const Point3& p : ph.vertices()) c = c + p;
  c = c / static_cast<double>(ph.vertices().size());
  const double band = ph.tolerance().eps_rel * ph.diameter();
  for (const PolyFace& f : ph.faces())
    if (dot(f.normal, c) > f.offset - band)
      throw Error(Error::Code::DegenerateInterior, "centroid too close to a face plane");
  return c;
}

}  // namespace ptloc
