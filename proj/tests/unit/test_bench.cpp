#include <doctest.h>

#include "layerctx/bench.hpp"
#include "layerctx/errors.hpp"

using namespace layerctx;

TEST_CASE("dispatch bench computes the arithmetic series on both variants") {
  const std::uint64_t calls = 20000;
  DispatchBenchResult r = bench_dispatch(2, calls, 2);
  // Sum of (i+1) over i in [0, calls).
  const std::uint64_t expect = calls * (calls + 1) / 2;
  CHECK(r.cop.checksum == expect);
  CHECK(r.plain.checksum == expect);
  CHECK(r.cop.variant == "cop");
  CHECK(r.plain.variant == "plain");
  CHECK(r.cop.param == 2);
  CHECK(r.cop.rep_seconds.size() == 2);
  CHECK(r.plain.rep_seconds.size() == 2);
  CHECK(r.cop.mean_seconds() > 0.0);
  CHECK(r.cop.per_call_ns() > 0.0);
  CHECK(r.cop.warmup_seconds > 0.0);
}

TEST_CASE("dispatch bench validates its parameters") {
  CHECK_THROWS_AS(bench_dispatch(0, 100), Error);
  CHECK_THROWS_AS(bench_dispatch(6, 100), Error);
  CHECK_THROWS_AS(bench_dispatch(1, 0), Error);
  CHECK_THROWS_AS(bench_dispatch(1, 100, 0), Error);
}

TEST_CASE("page bench variants agree on total bytes") {
  const std::uint64_t iterations = 2000;
  PageBenchResult r = bench_page_both(iterations, 2);
  CHECK(r.cop.checksum == iterations * 50000);
  CHECK(r.conditional.checksum == r.cop.checksum);
  CHECK(r.cop.bench == "page");
  CHECK(r.conditional.variant == "conditional");
  CHECK(r.cop.rep_seconds.size() == 2);
}

TEST_CASE("page bench rejects unknown variants") {
  CHECK_THROWS_AS(bench_page("turbo", 100), Error);
  CHECK_THROWS_AS(bench_page("cop", 0), Error);
}

TEST_CASE("report statistics") {
  BenchReport r;
  CHECK(r.mean_seconds() == 0.0);
  CHECK(r.per_call_ns() == 0.0);
  r.iterations = 1000;
  r.rep_seconds = {0.001, 0.003};
  CHECK(r.mean_seconds() == doctest::Approx(0.002));
  CHECK(r.per_call_ns() == doctest::Approx(2000.0));
}
