#include "layerctx/bench.hpp"

#include <chrono>
#include <numeric>

#include "layerctx/errors.hpp"
#include "layerctx/page_model.hpp"
#include "layerctx/runtime.hpp"

namespace layerctx {

double BenchReport::mean_seconds() const {
  if (rep_seconds.empty()) return 0.0;
  return std::accumulate(rep_seconds.begin(), rep_seconds.end(), 0.0) /
         static_cast<double>(rep_seconds.size());
}

double BenchReport::per_call_ns() const {
  if (iterations == 0) return 0.0;
  return mean_seconds() * 1e9 / static_cast<double>(iterations);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Plain call chain of fixed depth; noinline keeps each hop a real call, like
// a partial handing off to the next definition.
[[gnu::noinline]] std::int64_t chain0(std::int64_t x) { return x + 1; }
[[gnu::noinline]] std::int64_t chain1(std::int64_t x) { return chain0(x); }
[[gnu::noinline]] std::int64_t chain2(std::int64_t x) { return chain1(x); }
[[gnu::noinline]] std::int64_t chain3(std::int64_t x) { return chain2(x); }
[[gnu::noinline]] std::int64_t chain4(std::int64_t x) { return chain3(x); }
[[gnu::noinline]] std::int64_t chain5(std::int64_t x) { return chain4(x); }

std::int64_t (*const kChainEntry[6])(std::int64_t) = {chain0, chain1, chain2,
                                                      chain3, chain4, chain5};

// Runs `rep` once for warm-up, then `repetitions` measured times. The body
// returns the run's checksum, which must not vary between repetitions.
template <typename Rep>
void run_reps(BenchReport& report, int repetitions, Rep&& rep) {
  if (repetitions < 1) throw Error("bench repetitions must be >= 1");
  {
    const auto start = Clock::now();
    report.checksum = rep();
    report.warmup_seconds = seconds_since(start);
  }
  for (int r = 0; r < repetitions; ++r) {
    const auto start = Clock::now();
    const std::uint64_t sum = rep();
    report.rep_seconds.push_back(seconds_since(start));
    if (sum != report.checksum)
      throw Error("bench checksum varied between repetitions");
  }
}

// Conditional-dispatch page: the same component tree as PageModel but with
// an explicit quality flag branched on inside each component.
struct ConditionalPage {
  bool high = true;
  PageBytes bytes;
  int first_level = 4;
  int second_per_first = 2;

  [[gnu::noinline]] std::int64_t render_second() const {
    return high ? bytes.second_high : bytes.second_low;
  }
  [[gnu::noinline]] std::int64_t render_first() const {
    std::int64_t total = high ? bytes.first_high : bytes.first_low;
    for (int j = 0; j < second_per_first; ++j) total += render_second();
    return total;
  }
  std::int64_t render_page() const {
    std::int64_t total = 0;
    for (int i = 0; i < first_level; ++i) total += render_first();
    return total;
  }
};

}  // namespace

DispatchBenchResult bench_dispatch(int active_layers, std::uint64_t calls, int repetitions) {
  if (active_layers < 1 || active_layers > 5)
    throw Error("bench_dispatch: active_layers must be in 1..5");
  if (calls == 0) throw Error("bench_dispatch: calls must be > 0");

  Runtime rt;
  std::vector<Layer> layers;
  for (int i = 1; i <= 5; ++i) layers.push_back(rt.define_layer("l" + std::to_string(i)));
  const Method target = rt.register_method(
      "bench.increment", BaseFn([](Args args) -> Value { return as_int(args[0]) + 1; }));
  // Pass-through partials: proceed with unchanged arguments and result, so
  // every variant computes the same sums.
  for (Layer l : layers)
    rt.add_around(target, l,
                  [](DispatchCursor& cur, Args args) -> Value { return cur.proceed(args); });

  DispatchBenchResult result;
  result.cop = {"dispatch", "cop", active_layers, calls, {}, 0, 0};
  result.plain = {"dispatch", "plain", active_layers, calls, {}, 0, 0};

  ContextState ctx = rt.make_context();
  const std::span<const Layer> active(layers.data(), static_cast<std::size_t>(active_layers));
  ctx.with_layers(active, [&] {
    run_reps(result.cop, repetitions, [&]() -> std::uint64_t {
      std::uint64_t sum = 0;
      Value arg[1];
      for (std::uint64_t i = 0; i < calls; ++i) {
        arg[0] = static_cast<std::int64_t>(i);
        sum += static_cast<std::uint64_t>(as_int(rt.call(ctx, target, arg)));
      }
      return sum;
    });
  });

  const auto entry = kChainEntry[active_layers];
  run_reps(result.plain, repetitions, [&]() -> std::uint64_t {
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < calls; ++i)
      sum += static_cast<std::uint64_t>(entry(static_cast<std::int64_t>(i)));
    return sum;
  });

  if (result.cop.checksum != result.plain.checksum)
    throw Error("bench_dispatch: variants computed different checksums");
  return result;
}

BenchReport bench_page(const std::string& variant, std::uint64_t iterations, int repetitions) {
  if (iterations == 0) throw Error("bench_page: iterations must be > 0");
  BenchReport report{"page", variant, static_cast<std::int64_t>(iterations),
                     iterations, {}, 0, 0};

  if (variant == "cop") {
    Runtime rt;
    const Layer high = rt.define_layer("high_band");
    const Layer low = rt.define_layer("low_band");
    const PageModel model(rt, high, low, 4, 2, PageBytes{});
    ContextState ctx = rt.make_context();
    run_reps(report, repetitions, [&]() -> std::uint64_t {
      std::uint64_t sum = 0;
      for (std::uint64_t i = 0; i < iterations; ++i)
        sum += static_cast<std::uint64_t>(
            ctx.with_layers({high}, [&] { return model.render_page(ctx); }));
      return sum;
    });
  } else if (variant == "conditional") {
    const ConditionalPage page;
    run_reps(report, repetitions, [&]() -> std::uint64_t {
      std::uint64_t sum = 0;
      for (std::uint64_t i = 0; i < iterations; ++i)
        sum += static_cast<std::uint64_t>(page.render_page());
      return sum;
    });
  } else {
    throw Error("bench_page: unknown variant '" + variant + "'");
  }
  return report;
}

PageBenchResult bench_page_both(std::uint64_t iterations, int repetitions) {
  PageBenchResult result{bench_page("cop", iterations, repetitions),
                         bench_page("conditional", iterations, repetitions)};
  if (result.cop.checksum != result.conditional.checksum)
    throw Error("bench_page: variants computed different checksums");
  return result;
}

}  // namespace layerctx
