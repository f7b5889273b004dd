#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ptloc/polygon.hpp"
#include "ptloc/polyhedron.hpp"

namespace ptloc {

/// Deterministic RNG used by every generator. Doubles are built from
/// raw mt19937_64 output so sequences do not depend on library
/// distribution internals.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t next() { return eng(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double normal() {
    // Box-Muller; one value per call is plenty for our volumes
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
};

enum class ShapeFamily {
  RandomConvex2D,
  RegularNgon,
  Needle2D,
  GeodesicSphere,
  AffineGeodesic,
};

inline const char* to_string(ShapeFamily f) {
  switch (f) {
    case ShapeFamily::RandomConvex2D: return "random-convex-2d";
    case ShapeFamily::RegularNgon: return "regular-ngon";
    case ShapeFamily::Needle2D: return "needle-2d";
    case ShapeFamily::GeodesicSphere: return "geodesic-sphere";
    case ShapeFamily::AffineGeodesic: return "affine-geodesic";
  }
  return "?";
}

/// Deterministic shape recipe: identical spec + seed reproduce
/// bit-identical geometry.
struct CorpusSpec {
  ShapeFamily family = ShapeFamily::RegularNgon;
  int size = 4;          // vertex count (2D) or subdivision level (3D)
  double extra = 0.0;    // needle flatness exponent k
  double rotation = 0.0; // radians, applied last (2D families)
  std::uint64_t seed = 0;

  std::string label() const {
    std::string s = to_string(family);
    s += ':';
    s += std::to_string(size);
    if (family == ShapeFamily::Needle2D) s += "," + std::to_string(static_cast<int>(extra));
    if (rotation != 0.0) s += " rot=" + std::to_string(rotation);
    s += " seed=" + std::to_string(seed);
    return s;
  }
};

inline bool is_2d(ShapeFamily f) {
  return f == ShapeFamily::RandomConvex2D || f == ShapeFamily::RegularNgon ||
         f == ShapeFamily::Needle2D;
}

/// Parses "family:params", e.g. "regular-ngon:64" or "needle-2d:16,4".
inline CorpusSpec parse_corpus(const std::string& text) {
  CorpusSpec spec;
  const std::size_t colon = text.find(':');
  const std::string family = text.substr(0, colon);
  if (family == "random-convex-2d")
    spec.family = ShapeFamily::RandomConvex2D;
  else if (family == "regular-ngon")
    spec.family = ShapeFamily::RegularNgon;
  else if (family == "needle-2d")
    spec.family = ShapeFamily::Needle2D;
  else if (family == "geodesic-sphere")
    spec.family = ShapeFamily::GeodesicSphere;
  else if (family == "affine-geodesic")
    spec.family = ShapeFamily::AffineGeodesic;
  else
    throw Error(Error::Code::InvalidInput, "unknown shape family: " + family);
  if (colon == std::string::npos)
    throw Error(Error::Code::InvalidInput, "corpus spec needs a size parameter: " + text);
  const std::string params = text.substr(colon + 1);
  const std::size_t comma = params.find(',');
  try {
    spec.size = std::stoi(params.substr(0, comma));
    if (comma != std::string::npos) spec.extra = std::stod(params.substr(comma + 1));
  } catch (const std::exception&) {
    throw Error(Error::Code::InvalidInput, "bad corpus parameters: " + text);
  }
  return spec;
}

namespace detail {

inline Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

inline std::vector<Point2> regular_ngon_vertices(int n, double phase, double rotation) {
  std::vector<Point2> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = (k + phase) * kTwoPi / n + rotation;
    v[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
  }
  return v;
}

}  // namespace detail

/// Generates a polygon for a corpus spec.
///
/// random-convex-2d: stratified jittered angles on a random ellipse
/// with radial jitter small enough to keep the loop convex; resampled
/// on validation failure (bounded).
/// regular-ngon: N points on the unit circle.
/// needle-2d: regular N-gon (N divisible by 4, phase shifted so the
/// top edge is horizontal) with that edge tilted by 10^-k * diameter;
/// the slab subdivision is maximally sensitive to such an edge while
/// the polar subdivision is not.
inline ConvexPolygon gen_polygon(const CorpusSpec& spec, Tolerance tol = {}) {
  if (!is_2d(spec.family))
    throw Error(Error::Code::InvalidInput, "gen_polygon: not a 2D family");
  const int n = spec.size;
  if (n < 3) throw Error(Error::Code::InvalidInput, "gen_polygon: need at least 3 vertices");

  switch (spec.family) {
    case ShapeFamily::RegularNgon:
      return validate_polygon(detail::regular_ngon_vertices(n, 0.0, spec.rotation), tol);

    case ShapeFamily::Needle2D: {
      if (n < 8 || n % 4 != 0)
        throw Error(Error::Code::InvalidInput, "needle-2d: size must be a multiple of 4, >= 8");
      std::vector<Point2> v = detail::regular_ngon_vertices(n, 0.5, 0.0);
      // top edge runs between indices n/4-1 and n/4; its endpoints share
      // the same y, so tilting them symmetrically sets the edge's dy
      // exactly while each vertex moves only half the tilt
      const double diameter = 2.0;
      const double tilt = std::pow(10.0, -spec.extra) * diameter;
      v[static_cast<std::size_t>(n / 4 - 1)].y += tilt / 2;
      v[static_cast<std::size_t>(n / 4)].y -= tilt / 2;
      if (spec.rotation != 0.0)
        for (Point2& p : v) p = detail::rotate(p, spec.rotation);
      return validate_polygon(std::move(v), tol);
    }

    case ShapeFamily::RandomConvex2D: {
      Rng rng(spec.seed);
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const double a = rng.uniform(0.7, 1.4);
        const double b = rng.uniform(0.7, 1.4);
        // radial jitter shrinks quadratically with N so the jittered
        // ellipse stays convex almost surely
        const double amp = std::min(0.25, 12.0 / (static_cast<double>(n) * n));
        std::vector<Point2> v(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
          const double angle = (k + 0.2 + 0.6 * rng.uniform()) * kTwoPi / n;
          const double r = 1.0 + amp * (2.0 * rng.uniform() - 1.0);
          v[static_cast<std::size_t>(k)] = {a * r * std::cos(angle), b * r * std::sin(angle)};
        }
        if (spec.rotation != 0.0)
          for (Point2& p : v) p = detail::rotate(p, spec.rotation);
        try {
          return validate_polygon(std::move(v), tol);
        } catch (const Error&) {
          continue;
        }
      }
      throw Error(Error::Code::InvalidInput, "random-convex-2d: no convex sample in 1000 tries");
    }

    default:
      throw Error(Error::Code::InvalidInput, "gen_polygon: unsupported family");
  }
}

namespace detail {

struct IcosphereBuilder {
  std::vector<Point3> verts;
  std::vector<std::vector<std::int32_t>> faces;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> midpoint_cache;

  static Point3 unit(Point3 p) { return p / norm(p); }

  std::int32_t midpoint(std::int32_t a, std::int32_t b) {
    const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    const auto it = midpoint_cache.find(key);
    if (it != midpoint_cache.end()) return it->second;
    const Point3 mid =
        unit(0.5 * (verts[static_cast<std::size_t>(a)] + verts[static_cast<std::size_t>(b)]));
    verts.push_back(mid);
    const std::int32_t idx = static_cast<std::int32_t>(verts.size()) - 1;
    midpoint_cache.emplace(key, idx);
    return idx;
  }

  void build(int level) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                               {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                               {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    verts.clear();
    for (const auto& r : raw) verts.push_back(unit({r[0], r[1], r[2]}));
    static constexpr std::int32_t base[20][3] = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    faces.clear();
    for (const auto& f : base) faces.push_back({f[0], f[1], f[2]});
    for (int l = 0; l < level; ++l) {
      std::vector<std::vector<std::int32_t>> split;
      split.reserve(faces.size() * 4);
      for (const auto& f : faces) {
        const std::int32_t ab = midpoint(f[0], f[1]);
        const std::int32_t bc = midpoint(f[1], f[2]);
        const std::int32_t ca = midpoint(f[2], f[0]);
        split.push_back({f[0], ab, ca});
        split.push_back({f[1], bc, ab});
        split.push_back({f[2], ca, bc});
        split.push_back({ab, bc, ca});
      }
      faces.swap(split);
    }
  }
};

// rotation matrix from a uniformly random unit quaternion
inline std::array<Vec3, 3> random_rotation(Rng& rng) {
  double q[4];
  double len = 0.0;
  do {
    len = 0.0;
    for (double& c : q) {
      c = rng.normal();
      len += c * c;
    }
  } while (len == 0.0);
  len = std::sqrt(len);
  const double w = q[0] / len, x = q[1] / len, y = q[2] / len, z = q[3] / len;
  return {Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
          Vec3{2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
          Vec3{2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

}  // namespace detail

/// Generates a polyhedron: an icosahedron subdivided `size` times with
/// vertices on the unit sphere (20 * 4^size triangles). The affine
/// variant applies a random linear map with condition number <= 4, so
/// no convex hull construction is ever needed.
inline ConvexPolyhedron gen_polyhedron(const CorpusSpec& spec, Tolerance tol = {}) {
  if (is_2d(spec.family))
    throw Error(Error::Code::InvalidInput, "gen_polyhedron: not a 3D family");
  if (spec.size < 0 || spec.size > 5)
    throw Error(Error::Code::InvalidInput, "gen_polyhedron: subdivision level out of range");

  detail::IcosphereBuilder builder;
  builder.build(spec.size);

  if (spec.family == ShapeFamily::AffineGeodesic) {
    Rng rng(spec.seed);
    const auto r1 = detail::random_rotation(rng);
    const auto r2 = detail::random_rotation(rng);
    double s[3];
    for (double& c : s) c = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
    for (Point3& p : builder.verts) {
      const Vec3 a{dot(r2[0], p), dot(r2[1], p), dot(r2[2], p)};
      const Vec3 b{s[0] * a.x, s[1] * a.y, s[2] * a.z};
      p = {dot(r1[0], b), dot(r1[1], b), dot(r1[2], b)};
    }
  }
  return validate_polyhedron(std::move(builder.verts), std::move(builder.faces), tol);
}

/// Query mixture, fixed per block of ten points: six uniform in the
/// 2x-scaled bounding box, one pair displaced off the boundary by
/// +/- 1e-9 * diameter along the outward normal, one exact vertex and
/// one exact boundary sample. The displaced pair straddles the
/// boundary by construction.
inline std::vector<Point2> gen_queries(const ConvexPolygon& poly, int count,
                                       std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<Point2>& v = poly.vertices();
  double minx = v[0].x, maxx = v[0].x, miny = v[0].y, maxy = v[0].y;
  for (const Point2& p : v) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const Point2 center{(minx + maxx) / 2, (miny + maxy) / 2};
  const double hx = (maxx - minx), hy = (maxy - miny);  // doubled half-extents
  const double delta = 1e-9 * poly.diameter();
  const int nedges = poly.size();

  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    for (int i = 0; i < 6; ++i)
      out.push_back({center.x + (2.0 * rng.uniform() - 1.0) * hx,
                     center.y + (2.0 * rng.uniform() - 1.0) * hy});
    {
      const PolygonEdge& e = poly.edges()[static_cast<std::size_t>(rng.uniform_int(0, nedges - 1))];
      const double t = rng.uniform(0.05, 0.95);
      const Point2 q = e.a + t * (e.b - e.a);
      const Vec2 outward = -1.0 / norm(e.normal) * e.normal;
      out.push_back(q + delta * outward);
      out.push_back(q - delta * outward);
    }
    out.push_back(v[static_cast<std::size_t>(rng.uniform_int(0, nedges - 1))]);
    {
      const PolygonEdge& e = poly.edges()[static_cast<std::size_t>(rng.uniform_int(0, nedges - 1))];
      out.push_back(e.a + rng.uniform() * (e.b - e.a));
    }
  }
  out.resize(static_cast<std::size_t>(count));
  return out;
}

namespace detail {

// random point on a face ring via fan triangulation; min_bary keeps the
// sample away from the ring boundary when positive
inline Point3 face_sample(const ConvexPolyhedron& ph, const PolyFace& f, Rng& rng,
                          double min_bary) {
  const int k = static_cast<int>(f.ring.size());
  const int tri = k == 3 ? 1 : rng.uniform_int(1, k - 2);
  const Point3 a = ph.vertices()[static_cast<std::size_t>(f.ring[0])];
  const Point3 b = ph.vertices()[static_cast<std::size_t>(f.ring[static_cast<std::size_t>(tri)])];
  const Point3 c =
      ph.vertices()[static_cast<std::size_t>(f.ring[static_cast<std::size_t>(tri) + 1])];
  double b1, b2;
  do {
    b1 = rng.uniform();
    b2 = rng.uniform();
    if (b1 + b2 > 1.0) {
      b1 = 1.0 - b1;
      b2 = 1.0 - b2;
    }
  } while (std::min({b1, b2, 1.0 - b1 - b2}) < min_bary);
  return (1.0 - b1 - b2) * a + b1 * b + b2 * c;
}

}  // namespace detail

/// 3D variant of gen_queries with the same per-block mixture.
inline std::vector<Point3> gen_queries3(const ConvexPolyhedron& ph, int count,
                                        std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<Point3>& v = ph.vertices();
  Point3 lo = v[0], hi = v[0];
  for (const Point3& p : v) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const Point3 center = 0.5 * (lo + hi);
  const Vec3 ext = hi - lo;  // doubled half-extents of the scaled box
  const double delta = 1e-9 * ph.diameter();
  const int nfaces = ph.face_count();
  const int nverts = static_cast<int>(v.size());

  std::vector<Point3> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    for (int i = 0; i < 6; ++i)
      out.push_back({center.x + (2.0 * rng.uniform() - 1.0) * ext.x,
                     center.y + (2.0 * rng.uniform() - 1.0) * ext.y,
                     center.z + (2.0 * rng.uniform() - 1.0) * ext.z});
    {
      const PolyFace& f = ph.faces()[static_cast<std::size_t>(rng.uniform_int(0, nfaces - 1))];
      const Point3 q = detail::face_sample(ph, f, rng, 0.05);
      out.push_back(q + delta * f.normal);
      out.push_back(q - delta * f.normal);
    }
    out.push_back(v[static_cast<std::size_t>(rng.uniform_int(0, nverts - 1))]);
    {
      const PolyFace& f = ph.faces()[static_cast<std::size_t>(rng.uniform_int(0, nfaces - 1))];
      out.push_back(detail::face_sample(ph, f, rng, 0.0));
    }
  }
  out.resize(static_cast<std::size_t>(count));
  return out;
}

}  // namespace ptloc
