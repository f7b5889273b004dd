#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ptloc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Query verdict shared by every containment algorithm in the library.
/// Boundary is reported when the minimal signed distance to the shape
/// surface falls inside the relative epsilon band (see Tolerance).
enum class Containment { Inside, Boundary, Outside };

inline const char* to_string(Containment c) {
  switch (c) {
    case Containment::Inside: return "inside";
    case Containment::Boundary: return "boundary";
    case Containment::Outside: return "outside";
  }
  return "?";
}

/// Relative tolerance contract: every predicate classifies a signed
/// distance d as boundary when |d| <= eps_rel * shape diameter.
struct Tolerance {
  double eps_rel = 1e-12;
};

class Error : public std::runtime_error {
 public:
  enum class Code {
    ZeroVector,
    TooFewVertices,
    NonConvex,
    DegenerateEdge,
    NonPlanarFace,
    OpenSurface,
    DegenerateInterior,
    InvalidInput,
    FileWrite,
    MismatchFound,
  };

  Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};
using Point2 = Vec2;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
/// Counterclockwise perpendicular (rotation by +90 degrees).
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};
using Point3 = Vec3;

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }

inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }
inline bool is_finite(Vec3 a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

struct PolarCoord {
  double r = 0.0;
  double phi = 0.0;  // counterclockwise from +x, in [0, 2*pi)
};

struct SphericalCoord {
  double r = 0.0;
  double theta = 0.0;  // inclination from +z, in [0, pi]
  double phi = 0.0;    // azimuth as in PolarCoord
};

/// Exact polar coordinates of a relative position. Used as the trig
/// oracle that the fast sector bucketing is checked against.
inline PolarCoord polar_exact(Vec2 p_rel) {
  if (!is_finite(p_rel)) throw Error(Error::Code::InvalidInput, "polar_exact: non-finite input");
  if (p_rel.x == 0.0 && p_rel.y == 0.0)
    throw Error(Error::Code::ZeroVector, "polar_exact: zero vector");
  double phi = std::atan2(p_rel.y, p_rel.x);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return {norm(p_rel), phi};
}

/// Exact spherical coordinates; azimuth at the poles (x=y=0) is 0 by
/// convention since atan2(0,0) is unspecified.
inline SphericalCoord spherical_exact(Vec3 p_rel) {
  if (!is_finite(p_rel))
    throw Error(Error::Code::InvalidInput, "spherical_exact: non-finite input");
  double r = norm(p_rel);
  if (r == 0.0) throw Error(Error::Code::ZeroVector, "spherical_exact: zero vector");
  double c = p_rel.z / r;
  c = std::clamp(c, -1.0, 1.0);
  double theta = std::acos(c);
  double phi = 0.0;
  if (p_rel.x != 0.0 || p_rel.y != 0.0) phi = polar_exact({p_rel.x, p_rel.y}).phi;
  return {r, theta, phi};
}

}  // namespace ptloc
