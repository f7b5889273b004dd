// Command-line front end: corpus generation, cross-algorithm
// verification, scaling benchmarks and SVG diagrams.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptloc/bench.hpp"
#include "ptloc/io.hpp"
#include "ptloc/svg_render.hpp"
#include "ptloc/verify.hpp"

namespace {

struct CommonFlags {
  std::uint64_t seed = 1;
  double eps = 1e-12;
  double rotation = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "generator seed");
  cmd->add_option("--eps", flags.eps, "relative tolerance eps_rel");
  cmd->add_option("--rot", flags.rotation, "rotation angle in radians (2D shapes)");
}

ptloc::CorpusSpec make_spec(const std::string& corpus, const CommonFlags& flags) {
  ptloc::CorpusSpec spec = ptloc::parse_corpus(corpus);
  spec.seed = flags.seed;
  spec.rotation = flags.rotation;
  return spec;
}

int run_gen(const std::string& corpus, const CommonFlags& flags, const std::string& out_path) {
  const ptloc::CorpusSpec spec = make_spec(corpus, flags);
  const ptloc::Tolerance tol{flags.eps};
  if (ptloc::is_2d(spec.family)) {
    const ptloc::ConvexPolygon poly = ptloc::gen_polygon(spec, tol);
    ptloc::write_text_file(out_path, ptloc::polygon_to_text(poly.vertices()));
  } else {
    const ptloc::ConvexPolyhedron ph = ptloc::gen_polyhedron(spec, tol);
    std::vector<std::vector<std::int32_t>> rings;
    rings.reserve(ph.faces().size());
    for (const ptloc::PolyFace& f : ph.faces()) rings.push_back(f.ring);
    ptloc::write_text_file(out_path, ptloc::polyhedron_to_off(ph.vertices(), rings));
  }
  std::cout << "wrote " << out_path << " (" << spec.label() << ")\n";
  return 0;
}

int run_verify(const std::vector<std::string>& corpora, const std::string& algos,
               const CommonFlags& flags, int queries_2d, int queries_3d,
               std::optional<int> m_override, std::optional<int> slabs_override,
               const std::string& out_path) {
  std::vector<ptloc::CorpusSpec> specs;
  for (const std::string& c : corpora) {
    if (c == "default-2d") {
      const auto block = ptloc::default_corpus_2d(flags.seed);
      specs.insert(specs.end(), block.begin(), block.end());
    } else if (c == "default-3d") {
      const auto block = ptloc::default_corpus_3d(flags.seed);
      specs.insert(specs.end(), block.begin(), block.end());
    } else {
      specs.push_back(make_spec(c, flags));
    }
  }
  ptloc::VerifyOptions opts;
  opts.queries_2d = queries_2d;
  opts.queries_3d = queries_3d;
  opts.seed = flags.seed;
  opts.tol = ptloc::Tolerance{flags.eps};
  opts.polar_m = m_override;
  opts.slab_count = slabs_override;

  const ptloc::VerifyResult result =
      ptloc::verify_corpus(specs, ptloc::AlgorithmSelection::parse(algos), opts);
  if (out_path.empty())
    std::cout << result.report;
  else
    ptloc::write_text_file(out_path, result.report);
  if (!result.ok()) {
    std::cerr << "mismatch: " << result.first_mismatch << "\n";
    return 1;
  }
  return 0;
}

int run_bench(const std::vector<std::string>& corpora, const std::string& algos_csv,
              const CommonFlags& flags, long long queries, int reps,
              const std::string& out_path) {
  std::vector<ptloc::CorpusSpec> specs;
  if (corpora.empty()) {
    for (int n : {8, 16, 64, 256, 1024})
      specs.push_back({ptloc::ShapeFamily::RegularNgon, n, 0.0, 0.0, flags.seed});
    for (int level : {0, 1, 2, 3})
      specs.push_back({ptloc::ShapeFamily::GeodesicSphere, level, 0.0, 0.0, flags.seed});
  } else {
    for (const std::string& c : corpora) specs.push_back(make_spec(c, flags));
  }

  std::vector<std::string> algos;
  if (algos_csv == "all") {
    algos = {"linear", "logn", "slab", "polar", "linear3", "cube"};
  } else {
    std::size_t start = 0;
    while (start <= algos_csv.size()) {
      const std::size_t comma = algos_csv.find(',', start);
      const std::string name = algos_csv.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!name.empty()) algos.push_back(name);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  ptloc::BenchOptions opts;
  opts.queries = queries;
  opts.reps = reps;
  opts.seed = flags.seed;
  opts.tol = ptloc::Tolerance{flags.eps};

  const std::vector<ptloc::BenchRecord> records = ptloc::run_bench(specs, algos, opts);
  std::string csv = std::string(ptloc::bench_csv_header()) + "\n";
  for (const ptloc::BenchRecord& r : records) csv += ptloc::to_csv(r) + "\n";
  const std::string summary = ptloc::ratio_summary_text(ptloc::o1_ratio_summary(records));

  if (out_path.empty()) {
    std::cout << csv;
    std::cerr << summary;  // keep stdout parseable as pure CSV
  } else {
    ptloc::write_text_file(out_path, csv);
    std::cout << summary;
  }
  return 0;
}

int run_render(const std::string& corpus, const std::string& grid_kind, const CommonFlags& flags,
               std::optional<int> m_override, std::optional<int> slabs_override,
               const std::string& out_path) {
  const ptloc::CorpusSpec spec = make_spec(corpus, flags);
  if (!ptloc::is_2d(spec.family))
    throw ptloc::Error(ptloc::Error::Code::InvalidInput, "render expects a 2D shape family");
  const ptloc::ConvexPolygon poly = ptloc::gen_polygon(spec, ptloc::Tolerance{flags.eps});
  std::string svg;
  if (grid_kind == "polar") {
    svg = ptloc::make_polar_svg(ptloc::build_polar_grid(poly, m_override));
  } else if (grid_kind == "slab") {
    svg = ptloc::make_slab_svg(ptloc::build_slabs(poly, slabs_override));
  } else {
    throw ptloc::Error(ptloc::Error::Code::InvalidInput, "unknown grid kind: " + grid_kind);
  }
  ptloc::render_svg_file(svg, out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constant-time point-in-convex-polygon/polyhedron queries"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* gen = app.add_subcommand("gen", "write a polygon text file or an OFF file");
  std::string gen_corpus;
  std::string gen_out;
  add_common(gen, flags);
  gen->add_option("--corpus", gen_corpus, "shape spec, e.g. regular-ngon:64")->required();
  gen->add_option("--out", gen_out, "output path")->required();

  auto* verify = app.add_subcommand("verify", "cross-check all algorithms against the oracle");
  std::vector<std::string> verify_corpora{"default-2d", "default-3d"};
  std::string verify_algos = "polar,logn,slab,cube";
  int queries_2d = 10000, queries_3d = 100000;
  std::optional<int> m_override, slabs_override;
  std::string verify_out;
  add_common(verify, flags);
  verify->add_option("--corpus", verify_corpora,
                     "shape specs or default-2d/default-3d (repeatable)");
  verify->add_option("--algos", verify_algos, "comma-separated algorithm subset");
  verify->add_option("--queries2d", queries_2d, "query points per 2D shape");
  verify->add_option("--queries3d", queries_3d, "query points per 3D shape");
  verify->add_option("--m", m_override, "fixed sector subdivision (default: automatic)");
  verify->add_option("--slabs", slabs_override, "fixed slab count (default: automatic)");
  verify->add_option("--out", verify_out, "write the report here instead of stdout");

  auto* bench = app.add_subcommand("bench", "timing benchmark, CSV output");
  std::vector<std::string> bench_corpora;
  std::string bench_algos = "all";
  long long bench_queries = 100000;
  int bench_reps = 5;
  std::string bench_out;
  add_common(bench, flags);
  bench->add_option("--corpus", bench_corpora, "shape specs (default: builtin scaling set)");
  bench->add_option("--algos", bench_algos, "comma-separated algorithms or 'all'");
  bench->add_option("--queries", bench_queries, "queries per measurement");
  bench->add_option("--reps", bench_reps, "repetitions per measurement");
  bench->add_option("--out", bench_out, "CSV output path (default: stdout)");

  auto* render = app.add_subcommand("render", "SVG diagram of a subdivision");
  std::string render_corpus, render_grid = "polar", render_out;
  add_common(render, flags);
  render->add_option("--corpus", render_corpus, "2D shape spec")->required();
  render->add_option("--grid", render_grid, "polar or slab");
  render->add_option("--m", m_override, "fixed sector subdivision");
  render->add_option("--slabs", slabs_override, "fixed slab count");
  render->add_option("--out", render_out, "SVG output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(gen_corpus, flags, gen_out);
    if (verify->parsed())
      return run_verify(verify_corpora, verify_algos, flags, queries_2d, queries_3d, m_override,
                        slabs_override, verify_out);
    if (bench->parsed())
      return run_bench(bench_corpora, bench_algos, flags, bench_queries, bench_reps, bench_out);
    if (render->parsed())
      return run_render(render_corpus, render_grid, flags, m_override, slabs_override,
                        render_out);
  } catch (const ptloc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
