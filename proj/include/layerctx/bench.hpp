#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace layerctx {

struct BenchReport {
  std::string bench;    // "dispatch" | "page"
  std::string variant;  // "cop" | "plain" | "conditional"
  std::int64_t param = 0;  // dispatch: active layer count; page: iterations
  std::uint64_t iterations = 0;  // operations per repetition
  std::vector<double> rep_seconds;  // measured repetitions, warm-up excluded
  double warmup_seconds = 0;
  std::uint64_t checksum = 0;

  double mean_seconds() const;
  double per_call_ns() const;
};

struct DispatchBenchResult {
  BenchReport cop;    // layered call through the runtime, k partials active
  BenchReport plain;  // noinline function chain of the same depth
};

// Micro-benchmark of one layered call with `active_layers` pass-through
// around partials (1..5) against a plain call chain of equal depth. Both
// variants accumulate results; mismatching checksums raise Error.
DispatchBenchResult bench_dispatch(int active_layers, std::uint64_t calls,
                                   int repetitions = 3);

// Page rendering: the layered page model against a hand-written conditional
// version branching on a quality flag per component. The first repetition is
// a discarded warm-up.
BenchReport bench_page(const std::string& variant, std::uint64_t iterations,
                       int repetitions = 10);

struct PageBenchResult {
  BenchReport cop;
  BenchReport conditional;
};

// Both page variants, with checksum equality enforced.
PageBenchResult bench_page_both(std::uint64_t iterations, int repetitions = 10);

}  // namespace layerctx
