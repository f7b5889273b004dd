#pragma once

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ptloc/cube_grid.hpp"
#include "ptloc/generators.hpp"
#include "ptloc/polar_grid.hpp"
#include "ptloc/slab_table.hpp"

namespace ptloc {

/// One benchmark cell: an algorithm against one shape size. p99 comes
/// from per-chunk means, so a heavy-tailed run can put it below the
/// mean; no ordering between the two is implied.
struct BenchRecord {
  std::string algorithm;
  int n = 0;      // vertex count (2D) or face count (3D)
  int param = 0;  // sector/cell subdivision or slab count; 0 if none
  double build_ns = 0.0;
  double query_ns_mean = 0.0;
  double query_ns_p99 = 0.0;
  long long queries = 0;
  std::uint64_t seed = 0;
};

inline const char* bench_csv_header() {
  return "algorithm,n,param,build_ns,query_ns_mean,query_ns_p99,queries,seed";
}

inline std::string to_csv(const BenchRecord& r) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.1f,%.4f,%.4f,%lld,%" PRIu64, r.algorithm.c_str(),
                r.n, r.param, r.build_ns, r.query_ns_mean, r.query_ns_p99, r.queries, r.seed);
  return buf;
}

struct BenchOptions {
  long long queries = 100000;
  int reps = 5;
  std::uint64_t seed = 1;
  Tolerance tol;
};

namespace detail {

inline volatile std::uint64_t bench_sink = 0;

template <class F>
double elapsed_ns(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count();
}

struct QueryTiming {
  double mean_ns = 0.0;  // median over repetitions of the per-query mean
  double p99_ns = 0.0;   // 99th percentile of per-chunk means, all reps pooled
};

template <class Query>
QueryTiming measure_queries(Query&& query, std::size_t count, int reps) {
  std::uint64_t sink = 0;
  for (std::size_t i = 0; i < count; ++i) sink += static_cast<std::uint64_t>(query(i));  // warm-up

  constexpr std::size_t kChunk = 1024;
  std::vector<double> rep_means;
  std::vector<double> chunk_means;
  rep_means.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    double total = 0.0;
    for (std::size_t base = 0; base < count; base += kChunk) {
      const std::size_t end = std::min(base + kChunk, count);
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t i = base; i < end; ++i) sink += static_cast<std::uint64_t>(query(i));
      const auto t1 = std::chrono::steady_clock::now();
      const double ns = std::chrono::duration<double, std::nano>(t1 - t0).count();
      total += ns;
      chunk_means.push_back(ns / static_cast<double>(end - base));
    }
    rep_means.push_back(total / static_cast<double>(count));
  }
  bench_sink = bench_sink + sink;

  std::sort(rep_means.begin(), rep_means.end());
  std::sort(chunk_means.begin(), chunk_means.end());
  QueryTiming t;
  t.mean_ns = rep_means[rep_means.size() / 2];
  t.p99_ns = chunk_means[static_cast<std::size_t>(0.99 * (chunk_means.size() - 1))];
  return t;
}

}  // namespace detail

inline bool bench_algo_selected(const std::vector<std::string>& algos, const std::string& name) {
  return std::find(algos.begin(), algos.end(), name) != algos.end();
}

/// Times the selected algorithms over the given shapes. 2D shapes use
/// linear / logn / slab / polar, 3D shapes linear3 / cube. Query points
/// come from the standard mixture; timings cycle through them.
inline std::vector<BenchRecord> run_bench(const std::vector<CorpusSpec>& specs,
                                          const std::vector<std::string>& algos,
                                          const BenchOptions& opts) {
  std::vector<BenchRecord> records;
  for (const CorpusSpec& spec : specs) {
    const std::uint64_t qseed = spec.seed * 0x9e3779b97f4a7c15ULL + opts.seed;
    auto make_record = [&](const std::string& algo, int n, int param, double build_ns) {
      BenchRecord r;
      r.algorithm = algo;
      r.n = n;
      r.param = param;
      r.build_ns = build_ns;
      r.queries = opts.queries;
      r.seed = opts.seed;
      return r;
    };

    if (is_2d(spec.family)) {
      const ConvexPolygon poly = gen_polygon(spec, opts.tol);
      const std::vector<Point2> pts =
          gen_queries(poly, static_cast<int>(opts.queries), qseed);
      const std::size_t np = pts.size();

      if (bench_algo_selected(algos, "linear")) {
        BenchRecord r = make_record("linear", poly.size(), 0, 0.0);
        const auto t = detail::measure_queries(
            [&](std::size_t i) { return point_in_polygon_linear(poly, pts[i % np]); }, np,
            opts.reps);
        r.query_ns_mean = t.mean_ns;
        r.query_ns_p99 = t.p99_ns;
        records.push_back(r);
      }
      if (bench_algo_selected(algos, "logn")) {
        Point2 pivot;
        const double build_ns = detail::elapsed_ns([&] { pivot = reference_point(poly); });
        BenchRecord r = make_record("logn", poly.size(), 0, build_ns);
        const auto t = detail::measure_queries(
            [&](std::size_t i) { return point_in_polygon_logn(poly, pts[i % np], pivot); }, np,
            opts.reps);
        r.query_ns_mean = t.mean_ns;
        r.query_ns_p99 = t.p99_ns;
        records.push_back(r);
      }
      if (bench_algo_selected(algos, "slab")) {
        SlabTable table;
        const double build_ns = detail::elapsed_ns([&] { table = build_slabs(poly); });
        BenchRecord r = make_record("slab", poly.size(), table.slab_count, build_ns);
        const auto t = detail::measure_queries(
            [&](std::size_t i) { return table.query(pts[i % np]); }, np, opts.reps);
        r.query_ns_mean = t.mean_ns;
        r.query_ns_p99 = t.p99_ns;
        records.push_back(r);
      }
      if (bench_algo_selected(algos, "polar")) {
        PolarGrid grid;
        const double build_ns = detail::elapsed_ns([&] { grid = build_polar_grid(poly); });
        BenchRecord r = make_record("polar", poly.size(), grid.m, build_ns);
        const auto t = detail::measure_queries(
            [&](std::size_t i) { return grid.query(pts[i % np]); }, np, opts.reps);
        r.query_ns_mean = t.mean_ns;
        r.query_ns_p99 = t.p99_ns;
        records.push_back(r);
      }
    } else {
      const ConvexPolyhedron ph = gen_polyhedron(spec, opts.tol);
      const std::vector<Point3> pts =
          gen_queries3(ph, static_cast<int>(opts.queries), qseed);
      const std::size_t np = pts.size();

      if (bench_algo_selected(algos, "linear3")) {
        BenchRecord r = make_record("linear3", ph.face_count(), 0, 0.0);
        const auto t = detail::measure_queries(
            [&](std::size_t i) { return point_in_polyhedron_linear(ph, pts[i % np]); }, np,
            opts.reps);
        r.query_ns_mean = t.mean_ns;
        r.query_ns_p99 = t.p99_ns;
        records.push_back(r);
      }
      if (bench_algo_selected(algos, "cube")) {
        CubeGrid grid;
        const double build_ns = detail::elapsed_ns([&] { grid = build_cube_grid(ph); });
        BenchRecord r = make_record("cube", ph.face_count(), grid.m, build_ns);
        const auto t = detail::measure_queries(
            [&](std::size_t i) { return grid.query(pts[i % np]); }, np, opts.reps);
        r.query_ns_mean = t.mean_ns;
        r.query_ns_p99 = t.p99_ns;
        records.push_back(r);
      }
    }
  }
  return records;
}

struct RatioSummary {
  std::string algorithm;
  int n_small = 0;
  int n_large = 0;
  double ratio = 0.0;
};

/// Per algorithm, the mean-query-time ratio between the largest and
/// smallest shape present; near 1 demonstrates constant-time behavior.
inline std::vector<RatioSummary> o1_ratio_summary(const std::vector<BenchRecord>& records) {
  std::vector<RatioSummary> out;
  std::vector<std::string> names;
  for (const BenchRecord& r : records)
    if (std::find(names.begin(), names.end(), r.algorithm) == names.end())
      names.push_back(r.algorithm);
  for (const std::string& name : names) {
    const BenchRecord* lo = nullptr;
    const BenchRecord* hi = nullptr;
    for (const BenchRecord& r : records) {
      if (r.algorithm != name) continue;
      if (!lo || r.n < lo->n) lo = &r;
      if (!hi || r.n > hi->n) hi = &r;
    }
    if (!lo || !hi || lo->n == hi->n || lo->query_ns_mean <= 0.0) continue;
    out.push_back({name, lo->n, hi->n, hi->query_ns_mean / lo->query_ns_mean});
  }
  return out;
}

inline std::string ratio_summary_text(const std::vector<RatioSummary>& summary) {
  std::string out;
  for (const RatioSummary& s : summary) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# o1-ratio algorithm=%s n=%d..%d ratio=%.3f\n",
                  s.algorithm.c_str(), s.n_small, s.n_large, s.ratio);
    out += buf;
  }
  return out;
}

}  // namespace ptloc
