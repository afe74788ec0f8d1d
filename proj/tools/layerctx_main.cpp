#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "layerctx/bench.hpp"
#include "layerctx/case_study.hpp"
#include "layerctx/config.hpp"
#include "layerctx/demos.hpp"
#include "layerctx/report.hpp"
#include "layerctx/version.hpp"

namespace {

using layerctx::AppConfig;
using layerctx::BenchReport;

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("LAYERCTX_SEED");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0')
    throw layerctx::ConfigError("LAYERCTX_SEED", "must be a non-negative integer");
  return v;
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

void print_segments(const layerctx::BandwidthSeries& series, const AppConfig& cfg) {
  std::printf("run %s: %zu windows, %lld pages, %lld sessions\n", series.run.c_str(),
              series.rows.size(), static_cast<long long>(series.total_pages),
              static_cast<long long>(series.sessions_created));
  for (const layerctx::SegmentStats& seg : layerctx::tracking_segments(series, cfg)) {
    if (seg.windows == 0) continue;
    std::printf(
        "  segment [%.0f,%.0f) setpoint %.2f MB/s: mean %.2f MB/s, "
        "mean |err| %.1f%%, max |err| %.1f%%\n",
        seg.t0, seg.t1, seg.setpoint / 1e6, seg.mean_bandwidth / 1e6,
        seg.mean_abs_err_pct, seg.max_abs_err_pct);
  }
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::string& runs, std::optional<std::uint64_t> seed_flag) {
  AppConfig cfg =
      config_path.empty() ? AppConfig{} : layerctx::load_app_config(config_path);
  if (seed_flag)
    cfg.simulation.seed = *seed_flag;
  else if (auto env = env_seed())
    cfg.simulation.seed = *env;

  bool run_a = false, run_b = false, run_c = false;
  for (char c : runs) {
    if (c == ',') continue;
    if (c == 'a') run_a = true;
    else if (c == 'b') run_b = true;
    else if (c == 'c') run_c = true;
    else throw CLI::ValidationError("--runs", "must name runs from {a,b,c}");
  }
  if (!run_a && !run_b && !run_c)
    throw CLI::ValidationError("--runs", "must select at least one run");

  const layerctx::ComparisonResult result =
      layerctx::run_comparison(cfg, run_a, run_b, run_c);

  std::vector<const layerctx::BandwidthSeries*> ordered;
  if (result.a) ordered.push_back(&*result.a);
  if (result.b) ordered.push_back(&*result.b);
  if (result.c) ordered.push_back(&*result.c);
  for (const layerctx::BandwidthSeries* s : ordered) print_segments(*s, cfg);

  const std::string csv_path = out_path(out_dir, "series.csv");
  layerctx::write_text_file(csv_path, layerctx::series_csv(ordered));
  const std::string svg_path = out_path(out_dir, "figure7.svg");
  layerctx::write_text_file(svg_path, layerctx::comparison_svg(result));
  const std::string manifest_path = out_path(out_dir, "manifest.json");
  layerctx::write_text_file(manifest_path, layerctx::manifest_json(cfg, "simulate"));
  std::printf("wrote %s\nwrote %s\nwrote %s\n", csv_path.c_str(), svg_path.c_str(),
              manifest_path.c_str());
  return 0;
}

int run_bench(const std::string& kind, int layers, std::uint64_t calls,
              std::uint64_t iterations, int reps, bool full, const std::string& out_dir) {
  std::vector<BenchReport> reports;
  std::string title;
  if (kind == "dispatch") {
    if (full) calls = 10'000'000;
    const int lo = layers == 0 ? 1 : layers;
    const int hi = layers == 0 ? 5 : layers;
    for (int k = lo; k <= hi; ++k) {
      const layerctx::DispatchBenchResult r = layerctx::bench_dispatch(k, calls, reps);
      reports.push_back(r.cop);
      reports.push_back(r.plain);
      std::printf("dispatch k=%d: cop %.1f ns/call, plain %.1f ns/call, ratio %.1fx\n",
                  k, r.cop.per_call_ns(), r.plain.per_call_ns(),
                  r.cop.per_call_ns() / r.plain.per_call_ns());
    }
    title = "layered dispatch vs plain call chain";
  } else {
    if (full) iterations = 100'000;
    const layerctx::PageBenchResult r = layerctx::bench_page_both(iterations, reps);
    reports.push_back(r.cop);
    reports.push_back(r.conditional);
    std::printf("page: cop %.1f ns/page, conditional %.1f ns/page, ratio %.1fx\n",
                r.cop.per_call_ns(), r.conditional.per_call_ns(),
                r.cop.per_call_ns() / r.conditional.per_call_ns());
    title = "layered page rendering vs conditional dispatch";
  }

  const std::string csv_path = out_path(out_dir, "bench.csv");
  layerctx::write_text_file(csv_path, layerctx::bench_csv(reports));
  const std::string svg_path = out_path(out_dir, "bench_" + kind + ".svg");
  layerctx::write_text_file(svg_path, layerctx::bench_svg(reports, title));

  nlohmann::ordered_json manifest;
  manifest["tool"] = "layerctx";
  manifest["version"] = layerctx::kVersion;
  manifest["subcommand"] = "bench";
  manifest["kind"] = kind;
  manifest["params"] = {{"layers", layers},
                        {"calls", calls},
                        {"iterations", iterations},
                        {"reps", reps},
                        {"full", full}};
  const std::string manifest_path = out_path(out_dir, "manifest.json");
  layerctx::write_text_file(manifest_path, manifest.dump(2) + "\n");
  std::printf("wrote %s\nwrote %s\nwrote %s\n", csv_path.c_str(), svg_path.c_str(),
              manifest_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layer-oriented adaptation runtime"};
  app.require_subcommand(1);
  app.set_version_flag("--version", layerctx::kVersion);

  auto* demo = app.add_subcommand("demo", "print a built-in demo trace");
  std::string demo_name;
  demo->add_option("name", demo_name, "demo to run")
      ->required()
      ->check(CLI::IsMember({"figure", "storage"}));

  auto* simulate = app.add_subcommand("simulate", "run the adaptive web application study");
  std::string config_path, out_dir = "out", runs = "abc";
  std::uint64_t seed_value = 0;
  simulate->add_option("--config", config_path, "JSON config or manifest file")
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--runs", runs, "runs to execute, subset of a,b,c");
  auto* seed_opt = simulate->add_option("--seed", seed_value, "override the RNG seed");

  auto* bench = app.add_subcommand("bench", "run micro-benchmarks");
  std::string bench_kind;
  int bench_layers = 0;
  std::uint64_t bench_calls = 1'000'000, bench_iterations = 10'000;
  int bench_reps = 0;
  bool bench_full = false;
  std::string bench_out = "out";
  bench->add_option("kind", bench_kind, "benchmark to run")
      ->required()
      ->check(CLI::IsMember({"dispatch", "page"}));
  bench->add_option("--layers", bench_layers, "active layer count (dispatch)")
      ->check(CLI::Range(1, 5));
  bench->add_option("--calls", bench_calls, "calls per repetition (dispatch)");
  bench->add_option("--iterations", bench_iterations, "pages per repetition (page)");
  bench->add_option("--reps", bench_reps, "measured repetitions");
  bench->add_flag("--full", bench_full, "full-scale workload sizes");
  bench->add_option("--out", bench_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (demo->parsed()) {
      const layerctx::TraceSink sink = layerctx::stdout_sink();
      if (demo_name == "figure")
        layerctx::demo_figure(sink);
      else
        layerctx::demo_resource_storage(sink);
      return 0;
    }
    if (simulate->parsed()) {
      return run_simulate(config_path, out_dir, runs,
                          seed_opt->count() ? std::optional<std::uint64_t>(seed_value)
                                            : std::nullopt);
    }
    if (bench->parsed()) {
      const int reps = bench_reps > 0 ? bench_reps : (bench_kind == "page" ? 10 : 3);
      return run_bench(bench_kind, bench_layers, bench_calls, bench_iterations, reps,
                       bench_full, bench_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const layerctx::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
