#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ptloc/cube_grid.hpp"
#include "ptloc/generators.hpp"
#include "ptloc/polar_grid.hpp"
#include "ptloc/slab_table.hpp"

namespace ptloc {

struct AlgorithmSelection {
  bool polar = true;
  bool logn = true;
  bool slab = true;
  bool cube = true;

  /// Parses a comma-separated subset of polar,logn,slab,cube.
  static AlgorithmSelection parse(const std::string& csv) {
    AlgorithmSelection sel{false, false, false, false};
    std::size_t start = 0;
    while (start <= csv.size()) {
      const std::size_t comma = csv.find(',', start);
      const std::string name =
          csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (name == "polar")
        sel.polar = true;
      else if (name == "logn")
        sel.logn = true;
      else if (name == "slab")
        sel.slab = true;
      else if (name == "cube")
        sel.cube = true;
      else if (!name.empty())
        throw Error(Error::Code::InvalidInput, "unknown algorithm: " + name);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return sel;
  }
};

struct VerifyOptions {
  int queries_2d = 10000;
  int queries_3d = 100000;
  std::uint64_t seed = 1;
  Tolerance tol;
  std::optional<int> polar_m;   // override automatic sector resolution
  std::optional<int> slab_count;
};

struct VerifyResult {
  long long shapes = 0;
  long long points = 0;
  long long mismatches = 0;
  std::string report;          // deterministic: no timing fields
  std::string first_mismatch;  // shape label, point and verdicts

  bool ok() const { return mismatches == 0; }
};

namespace detail {

inline std::string format_point(Point2 p) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "(%.17g, %.17g)", p.x, p.y);
  return buf;
}

inline std::string format_point(Point3 p) {
  char buf[120];
  std::snprintf(buf, sizeof(buf), "(%.17g, %.17g, %.17g)", p.x, p.y, p.z);
  return buf;
}

}  // namespace detail

/// First disagreement between the selected 2D structures and the O(N)
/// oracle over the given points, or empty when they all agree.
inline std::string compare_verdicts_2d(const ConvexPolygon& poly, const PolarGrid* polar,
                                       const SlabTable* slab, const std::optional<Point2>& pivot,
                                       const std::vector<Point2>& points) {
  for (const Point2& p : points) {
    const Containment oracle = point_in_polygon_linear(poly, p);
    if (polar) {
      const Containment got = polar->query(p);
      if (got != oracle)
        return "polar=" + std::string(to_string(got)) + " oracle=" + to_string(oracle) +
               " at " + detail::format_point(p);
    }
    if (pivot) {
      const Containment got = point_in_polygon_logn(poly, p, *pivot);
      if (got != oracle)
        return "logn=" + std::string(to_string(got)) + " oracle=" + to_string(oracle) + " at " +
               detail::format_point(p);
    }
    if (slab) {
      const Containment got = slab->query(p);
      if (got != oracle)
        return "slab=" + std::string(to_string(got)) + " oracle=" + to_string(oracle) + " at " +
               detail::format_point(p);
    }
  }
  return "";
}

/// 3D counterpart against the O(F) plane-test oracle.
inline std::string compare_verdicts_3d(const ConvexPolyhedron& ph, const CubeGrid& grid,
                                       const std::vector<Point3>& points) {
  for (const Point3& p : points) {
    const Containment oracle = point_in_polyhedron_linear(ph, p);
    const Containment got = grid.query(p);
    if (got != oracle)
      return "cube=" + std::string(to_string(got)) + " oracle=" + to_string(oracle) + " at " +
             detail::format_point(p);
  }
  return "";
}

/// The standard 2D verification corpus: regular, random and needle
/// polygons over N in [3, 128] plus 100 random rotations of a fixed
/// 16-gon. At least 200 shapes, all derived from the seed.
inline std::vector<CorpusSpec> default_corpus_2d(std::uint64_t seed = 1) {
  std::vector<CorpusSpec> specs;
  Rng rng(seed * 0x243f6a8885a308d3ULL + 1);
  for (int n : {3, 4, 5, 6, 7, 8, 10, 12, 16, 20, 24, 32, 40, 48, 64, 96, 128})
    specs.push_back({ShapeFamily::RegularNgon, n, 0.0, 0.0, seed});
  for (int i = 0; i < 80; ++i) {
    const int n = rng.uniform_int(3, 128);
    specs.push_back({ShapeFamily::RandomConvex2D, n, 0.0, 0.0, rng.next()});
  }
  for (int n : {8, 16, 32})
    for (double k : {2.0, 4.0, 6.0})
      specs.push_back({ShapeFamily::Needle2D, n, k, 0.0, seed});
  for (int i = 0; i < 100; ++i)
    specs.push_back({ShapeFamily::RegularNgon, 16, 0.0, rng.uniform(0.0, kTwoPi), seed});
  return specs;
}

/// The standard 3D corpus: geodesic spheres at levels 0..3 plus 20
/// random affine variants.
inline std::vector<CorpusSpec> default_corpus_3d(std::uint64_t seed = 1) {
  std::vector<CorpusSpec> specs;
  Rng rng(seed * 0x452821e638d01377ULL + 2);
  for (int level : {0, 1, 2, 3})
    specs.push_back({ShapeFamily::GeodesicSphere, level, 0.0, 0.0, seed});
  for (int i = 0; i < 20; ++i)
    specs.push_back({ShapeFamily::AffineGeodesic, i % 4, 0.0, 0.0, rng.next()});
  return specs;
}

/// Runs every selected algorithm against the linear oracle over the
/// corpus, stopping at the first disagreement. The report is
/// deterministic for a fixed seed and corpus.
inline VerifyResult verify_corpus(const std::vector<CorpusSpec>& specs,
                                  const AlgorithmSelection& algos, const VerifyOptions& opts) {
  VerifyResult result;
  for (const CorpusSpec& spec : specs) {
    const std::uint64_t qseed = spec.seed * 0x9e3779b97f4a7c15ULL + opts.seed + result.shapes;
    std::string line = spec.label() + ":";
    std::string mismatch;

    if (is_2d(spec.family)) {
      const ConvexPolygon poly = gen_polygon(spec, opts.tol);
      std::optional<PolarGrid> polar;
      std::optional<SlabTable> slab;
      std::optional<Point2> pivot;
      if (algos.polar) {
        polar = build_polar_grid(poly, opts.polar_m);
        line += " " + polar->report();
      }
      if (algos.slab) {
        slab = build_slabs(poly, opts.slab_count);
        line += " " + slab->report();
      }
      if (algos.logn) pivot = reference_point(poly);
      if (!algos.polar && !algos.slab && !algos.logn) continue;
      const std::vector<Point2> points = gen_queries(poly, opts.queries_2d, qseed);
      mismatch = compare_verdicts_2d(poly, polar ? &*polar : nullptr, slab ? &*slab : nullptr,
                                     pivot, points);
      result.points += static_cast<long long>(points.size());
    } else {
      if (!algos.cube) continue;
      const ConvexPolyhedron ph = gen_polyhedron(spec, opts.tol);
      const CubeGrid grid = build_cube_grid(ph);
      line += " " + grid.report();
      const std::vector<Point3> points = gen_queries3(ph, opts.queries_3d, qseed);
      mismatch = compare_verdicts_3d(ph, grid, points);
      result.points += static_cast<long long>(points.size());
    }

    ++result.shapes;
    if (!mismatch.empty()) {
      result.mismatches = 1;
      result.first_mismatch = spec.label() + ": " + mismatch;
      result.report += line + " MISMATCH\n" + result.first_mismatch + "\n";
      break;
    }
    result.report += line + " ok\n";
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%lld shapes, %lld points, %lld mismatches\n", result.shapes,
                result.points, result.mismatches);
  result.report += buf;
  return result;
}

}  // namespace ptloc
