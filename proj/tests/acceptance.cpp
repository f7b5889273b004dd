// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one [PASS]/[FAIL] line per criterion. Exits with
// the number of failed criteria.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptloc/bench.hpp"
#include "ptloc/io.hpp"
#include "ptloc/verify.hpp"
#include "support.hpp"

using namespace ptloc;
namespace fs = std::filesystem;

namespace {

#ifndef PTLOC_CLI_PATH
#define PTLOC_CLI_PATH "./ptloc"
#endif

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& msg) {
    if (!ok && pass) {
      pass = false;
      detail = msg;
    }
  }
  void note(const std::string& msg) {
    if (!detail.empty()) detail += "; ";
    detail += msg;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct PreparedPolygon {
  CorpusSpec spec;
  ConvexPolygon poly;
  PolarGrid grid;  // automatic resolution
  double min_span = 0.0;
};

struct PreparedPolyhedron {
  CorpusSpec spec;
  ConvexPolyhedron ph;
  CubeGrid grid;
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: 2D oracle equivalence over >= 200 polygons x 10^4 queries

Criterion criterion_equivalence_2d(const std::vector<PreparedPolygon>& corpus,
                                   double time_budget_s) {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  long long points = 0;
  for (const PreparedPolygon& item : corpus) {
    const SlabTable slab = build_slabs(item.poly);
    const Point2 pivot = reference_point(item.poly);
    std::vector<Point2> pts =
        gen_queries(item.poly, 10000, item.spec.seed * 0x9e3779b97f4a7c15ULL + 11);
    for (const Point2& v : item.poly.vertices()) pts.push_back(v);
    const double delta = 1e-9 * item.poly.diameter();
    for (const PolygonEdge& e : item.poly.edges()) {
      const Point2 mid = 0.5 * (e.a + e.b);
      const Vec2 outward = -1.0 / norm(e.normal) * e.normal;
      pts.push_back(mid);
      pts.push_back(mid + delta * outward);  // straddle every edge
      pts.push_back(mid - delta * outward);
    }
    pts.push_back(item.grid.x_t);
    const std::string mismatch =
        compare_verdicts_2d(item.poly, &item.grid, &slab, pivot, pts);
    points += static_cast<long long>(pts.size());
    c.require(mismatch.empty(), item.spec.label() + ": " + mismatch);
    if (!c.pass) break;
  }
  const double elapsed = seconds_since(t0);
  c.require(elapsed <= time_budget_s, fmt("runtime %.1fs exceeds %.0fs", elapsed, time_budget_s));
  if (c.pass)
    c.note(fmt("%zu shapes, %lld points, 0 mismatches", corpus.size(), points));
  return c;
}

// criterion 2: 3D oracle equivalence over the geodesic corpus x 10^5 queries

Criterion criterion_equivalence_3d(const std::vector<PreparedPolyhedron>& corpus,
                                   double time_budget_s) {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  long long points = 0;
  for (const PreparedPolyhedron& item : corpus) {
    std::vector<Point3> pts =
        gen_queries3(item.ph, 100000, item.spec.seed * 0x9e3779b97f4a7c15ULL + 13);
    for (const Point3& v : item.ph.vertices()) pts.push_back(v);
    for (const PolyFace& f : item.ph.faces()) {
      Point3 centroid{0, 0, 0};
      for (const std::int32_t i : f.ring)
        centroid = centroid + item.ph.vertices()[static_cast<std::size_t>(i)];
      pts.push_back(centroid / static_cast<double>(f.ring.size()));
    }
    const std::string mismatch = compare_verdicts_3d(item.ph, item.grid, pts);
    points += static_cast<long long>(pts.size());
    c.require(mismatch.empty(), item.spec.label() + ": " + mismatch);
    if (!c.pass) break;
  }
  const double elapsed = seconds_since(t0);
  c.require(elapsed <= time_budget_s, fmt("runtime %.1fs exceeds %.0fs", elapsed, time_budget_s));
  if (c.pass)
    c.note(fmt("%zu shapes, %lld points, 0 mismatches", corpus.size(), points));
  return c;
}

// criterion 3: conservative coverage via ray casting

Criterion criterion_coverage(const std::vector<PreparedPolygon>& corpus2d,
                             const std::vector<PreparedPolyhedron>& corpus3d) {
  Criterion c;
  long long rays2d = 0, rays3d = 0;
  Rng rng(0x5eed);
  for (const PreparedPolygon& item : corpus2d) {
    const PolarGrid& grid = item.grid;
    const test::AngularHitOracle oracle(grid.polygon, grid.x_t);
    for (int s = 0; s < sector_count(grid.m) && c.pass; ++s) {
      const AngleInterval bounds = sector_angle_bounds(s, grid.m);
      for (int i = 0; i < 10000; ++i) {
        const double phi = bounds.lo + (bounds.hi - bounds.lo) * rng.uniform();
        const Vec2 dir{std::cos(phi), std::sin(phi)};
        const int sector = sector_index(dir, grid.m);
        const int hit = oracle.hit(phi);
        if (!test::sector_contains_edge(grid, sector, hit)) {
          c.require(false, fmt("%s: sector %d misses edge %d",
                               item.spec.label().c_str(), sector, hit));
          break;
        }
        // keep the angular oracle honest against plain ray casting
        if ((i & 255) == 0 &&
            hit != test::ray_exit_edge_linear(grid.polygon, grid.x_t, dir)) {
          c.require(false, item.spec.label() + ": hit oracles disagree");
          break;
        }
        ++rays2d;
      }
    }
    if (!c.pass) break;
  }
  for (const PreparedPolyhedron& item : corpus3d) {
    if (!c.pass) break;
    for (int i = 0; i < 100000; ++i) {
      Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      if (d.x == 0 && d.y == 0 && d.z == 0) continue;
      const int face = test::ray_exit_face_linear(item.ph, item.grid.x_t, d);
      if (!test::cell_contains_face(item.grid, cell_index(d, item.grid.m), face)) {
        c.require(false, item.spec.label() + ": cell misses the hit face");
        break;
      }
      ++rays3d;
    }
  }
  if (c.pass) c.note(fmt("%lld sector rays + %lld cell rays, 0 violations", rays2d, rays3d));
  return c;
}

// criterion 4: totality and angle-order of the direction indices

Criterion criterion_totality() {
  Criterion c;
  Rng rng(0xfeed);
  const int m = 16;
  std::vector<std::pair<double, int>> by_angle;
  by_angle.reserve(1000000);
  while (by_angle.size() < 1000000) {
    const Vec2 d{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (d.x == 0 && d.y == 0) continue;
    const int id = sector_index(d, m);
    if (id < 0 || id >= sector_count(m)) {
      c.require(false, "sector id out of range");
      return c;
    }
    by_angle.emplace_back(polar_exact(d).phi, id);
  }
  std::sort(by_angle.begin(), by_angle.end());
  int wraps = 0;
  for (std::size_t i = 1; i < by_angle.size(); ++i)
    if (by_angle[i].second < by_angle[i - 1].second) ++wraps;
  c.require(wraps <= 1, fmt("%d sector-order wraps against the angle oracle", wraps));

  long long cube_checks = 0;
  const int cm = 8;
  const double step = 2.0 / cm;
  while (cube_checks < 1000000) {
    const Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (d.x == 0 && d.y == 0 && d.z == 0) continue;
    const CellId cell = cell_index(d, cm);
    const Vec2 uv = face_uv(cell.face, d);
    const bool inside_cone = dot(face_axis(cell.face), d) > 0.0 &&
                             uv.x >= -1.0 + cell.i * step && uv.x <= -1.0 + (cell.i + 1) * step &&
                             uv.y >= -1.0 + cell.j * step && uv.y <= -1.0 + (cell.j + 1) * step;
    if (!inside_cone) {
      c.require(false, fmt("direction outside its reconstructed cell cone (face %s i=%d j=%d)",
                           to_string(cell.face), cell.i, cell.j));
      break;
    }
    ++cube_checks;
  }
  if (c.pass) c.note(fmt("10^6 sector ids (%d wraps), 10^6 cell cones, 0 violations", wraps));
  return c;
}

// criterion 5: at most two candidates per sector when auto_m is uncapped

Criterion criterion_candidate_bound(const std::vector<PreparedPolygon>& corpus) {
  Criterion c;
  int checked = 0, capped = 0;
  for (const PreparedPolygon& item : corpus) {
    const bool is_capped =
        item.grid.m == kMaxPolarM && std::atan(1.0 / kMaxPolarM) > item.min_span;
    if (is_capped) {
      ++capped;
      continue;
    }
    ++checked;
    c.require(item.grid.max_candidates <= 2,
              fmt("%s: maxcand=%d with m=%d uncapped", item.spec.label().c_str(),
                  item.grid.max_candidates, item.grid.m));
    if (!c.pass) break;
  }
  if (c.pass) c.note(fmt("%d uncapped grids all have maxcand <= 2 (%d capped)", checked, capped));
  return c;
}

// criterion 6: constant-time demonstration at desk scale

Criterion criterion_o1(double time_budget_s) {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  BenchOptions opts;
  opts.queries = 100000;
  opts.reps = 5;
  opts.seed = 20;
  const std::vector<CorpusSpec> specs = {
      {ShapeFamily::RegularNgon, 8, 0.0, 0.0, opts.seed},
      {ShapeFamily::RegularNgon, 1024, 0.0, 0.0, opts.seed},
      {ShapeFamily::GeodesicSphere, 0, 0.0, 0.0, opts.seed},
      {ShapeFamily::GeodesicSphere, 3, 0.0, 0.0, opts.seed},
  };
  const std::vector<BenchRecord> records =
      run_bench(specs, {"linear", "polar", "linear3", "cube"}, opts);

  double linear_ratio = 0, polar_ratio = 0, cube_ratio = 0, linear3_ratio = 0;
  for (const RatioSummary& s : o1_ratio_summary(records)) {
    if (s.algorithm == "linear") linear_ratio = s.ratio;
    if (s.algorithm == "polar") polar_ratio = s.ratio;
    if (s.algorithm == "cube") cube_ratio = s.ratio;
    if (s.algorithm == "linear3") linear3_ratio = s.ratio;
  }
  c.require(polar_ratio > 0 && polar_ratio <= 3.0, fmt("polar ratio %.2f > 3", polar_ratio));
  c.require(cube_ratio > 0 && cube_ratio <= 3.0, fmt("cube ratio %.2f > 3", cube_ratio));
  c.require(linear_ratio >= 20.0, fmt("linear ratio %.2f < 20", linear_ratio));
  const double elapsed = seconds_since(t0);
  c.require(elapsed <= time_budget_s, fmt("runtime %.1fs exceeds %.0fs", elapsed, time_budget_s));
  if (c.pass)
    c.note(fmt("ratios n=1024/8: polar %.2f, linear %.1f; f=1280/20: cube %.2f, linear3 %.1f",
               polar_ratio, linear_ratio, cube_ratio, linear3_ratio));
  return c;
}

// criterion 7: scale invariance of both direction indices

Criterion criterion_scale_invariance() {
  Criterion c;
  Rng rng(0x5ca1e);
  for (int i = 0; i < 100000 && c.pass; ++i) {
    const Vec2 d{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (d.x == 0 && d.y == 0) continue;
    const double lambda = std::exp(rng.uniform(std::log(1e-6), std::log(1e6)));
    if (sector_index(d, 16) != sector_index(lambda * d, 16))
      c.require(false, fmt("sector_index changed under scale %.3g", lambda));
  }
  for (int i = 0; i < 100000 && c.pass; ++i) {
    const Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (d.x == 0 && d.y == 0 && d.z == 0) continue;
    const double lambda = std::exp(rng.uniform(std::log(1e-6), std::log(1e6)));
    if (!(cell_index(d, 8) == cell_index(lambda * d, 8)))
      c.require(false, fmt("cell_index changed under scale %.3g", lambda));
  }
  if (c.pass) c.note("10^5 scaled pairs per index, 0 violations");
  return c;
}

// criterion 8: slab memory sensitivity vs polar insensitivity

Criterion criterion_slab_sensitivity() {
  Criterion c;
  const PolarGrid baseline = build_polar_grid(gen_polygon({
      .family = ShapeFamily::RegularNgon, .size = 16}));
  std::size_t prev_bytes = 0;
  std::size_t needle_polar_bytes = 0;
  bool cap_hit = false;
  std::string table_note = "slab bytes";
  for (const double k : {2.0, 4.0, 6.0}) {
    const ConvexPolygon needle =
        gen_polygon({.family = ShapeFamily::Needle2D, .size = 16, .extra = k});
    const SlabTable slab = build_slabs(needle);
    const PolarGrid polar = build_polar_grid(needle);
    needle_polar_bytes = std::max(needle_polar_bytes, polar.table_bytes());
    c.require(slab.table_bytes() > prev_bytes,
              fmt("slab bytes not growing at k=%.0f (%zu <= %zu)", k, slab.table_bytes(),
                  prev_bytes));
    prev_bytes = slab.table_bytes();
    if (k == 6.0) cap_hit = slab.slab_count == kMaxSlabs;
    c.require(polar.table_bytes() <= 4 * baseline.table_bytes(),
              fmt("polar bytes %zu exceed 4x baseline %zu at k=%.0f", polar.table_bytes(),
                  baseline.table_bytes(), k));
    table_note += fmt(" k=%.0f:%zu(M=%d)", k, slab.table_bytes(), slab.slab_count);
  }
  c.require(cap_hit, "slab count did not reach the cap at k=6");
  if (c.pass)
    c.note(table_note + fmt("; polar <= %zu bytes vs baseline %zu", needle_polar_bytes,
                            baseline.table_bytes()));
  return c;
}

// criterion 9: byte-identical gen/verify runs through the CLI

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Criterion criterion_determinism() {
  Criterion c;
  const std::string dir = (fs::temp_directory_path() / "ptloc-acceptance").string();
  fs::create_directories(dir);
  const std::string cli = PTLOC_CLI_PATH;

  auto run = [&](const std::string& args, const std::string& capture) {
    const std::string cmd = cli + " " + args + " > " + capture + " 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  const std::vector<std::pair<std::string, std::string>> gens = {
      {"gen --corpus random-convex-2d:48 --seed 77 --out ", "poly"},
      {"gen --corpus affine-geodesic:1 --seed 77 --out ", "shape"},
  };
  for (const auto& [args, stem] : gens) {
    const std::string f1 = dir + "/" + stem + "-a", f2 = dir + "/" + stem + "-b";
    const std::string log = dir + "/gen-log";
    c.require(run(args + f1, log) && run(args + f2, log), "gen run failed");
    if (!c.pass) return c;
    c.require(!slurp(f1).empty() && slurp(f1) == slurp(f2),
              stem + " files differ between identical runs");
  }

  const std::string verify_args =
      "verify --corpus regular-ngon:16 --corpus needle-2d:16,4 --corpus random-convex-2d:24 "
      "--corpus geodesic-sphere:1 --queries2d 2000 --queries3d 2000 --seed 5";
  const std::string v1 = dir + "/verify-a", v2 = dir + "/verify-b";
  c.require(run(verify_args, v1) && run(verify_args, v2), "verify run failed");
  if (c.pass) {
    const std::string r1 = slurp(v1);
    c.require(r1 == slurp(v2), "verify reports differ between identical runs");
    c.require(r1.find("0 mismatches") != std::string::npos, "verify report not clean");
  }
  if (c.pass) c.note("gen (2D+3D) and verify byte-identical across reruns");
  return c;
}

}  // namespace

int main() {
  const std::uint64_t corpus_seed = 1;

  std::printf("preparing corpora...\n");
  std::fflush(stdout);
  std::vector<PreparedPolygon> corpus2d;
  for (const CorpusSpec& spec : default_corpus_2d(corpus_seed)) {
    ConvexPolygon poly = gen_polygon(spec);
    PolarGrid grid = build_polar_grid(poly);
    const Point2 xt = grid.x_t;
    double min_span = kTwoPi;
    double prev = polar_exact(poly.vertices()[0] - xt).phi;
    for (std::size_t k = 0; k < poly.vertices().size(); ++k) {
      const double next =
          polar_exact(poly.vertices()[(k + 1) % poly.vertices().size()] - xt).phi;
      double span = next - prev;
      if (span < 0) span += kTwoPi;
      if (span > 0) min_span = std::min(min_span, span);
      prev = next;
    }
    corpus2d.push_back({spec, std::move(poly), std::move(grid), min_span});
  }
  std::vector<PreparedPolyhedron> corpus3d;
  for (const CorpusSpec& spec : default_corpus_3d(corpus_seed)) {
    ConvexPolyhedron ph = gen_polyhedron(spec);
    CubeGrid grid = build_cube_grid(ph);
    corpus3d.push_back({spec, std::move(ph), std::move(grid)});
  }

  struct Entry {
    int id;
    const char* name;
    Criterion result;
    double seconds;
  };
  std::vector<Entry> entries;
  auto run = [&](int id, const char* name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion result = fn();
    entries.push_back({id, name, std::move(result), seconds_since(t0)});
  };

  run(1, "oracle equivalence 2D (polar/logn/slab vs linear)",
      [&] { return criterion_equivalence_2d(corpus2d, 120.0); });
  run(2, "oracle equivalence 3D (cube vs linear)",
      [&] { return criterion_equivalence_3d(corpus3d, 180.0); });
  run(3, "conservative coverage (ray casting)",
      [&] { return criterion_coverage(corpus2d, corpus3d); });
  run(4, "sector/cell totality and monotonicity", [&] { return criterion_totality(); });
  run(5, "candidate bound <= 2 when uncapped",
      [&] { return criterion_candidate_bound(corpus2d); });
  run(6, "O(1) demonstration", [&] { return criterion_o1(120.0); });
  run(7, "scale invariance", [&] { return criterion_scale_invariance(); });
  run(8, "slab sensitivity vs polar stability", [&] { return criterion_slab_sensitivity(); });
  run(9, "determinism of gen/verify", [&] { return criterion_determinism(); });

  int failures = 0;
  for (const Entry& e : entries) {
    if (!e.result.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", e.result.pass ? "PASS" : "FAIL", e.id,
                e.name, e.seconds, e.result.detail.empty() ? "" : " -- ",
                e.result.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures;
}
