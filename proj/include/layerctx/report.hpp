#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "layerctx/bench.hpp"
#include "layerctx/case_study.hpp"
#include "layerctx/simulation.hpp"

namespace layerctx {

// Shortest round-trip decimal form, locale independent; integral values have
// no trailing ".0". Keeps emitted files byte-deterministic.
std::string format_double(double v);

// Columns: t,bandwidth_bytes_per_sec,setpoint,high_sessions_per_sec,
// low_sessions_per_sec,run. Runs appear in the order given.
std::string series_csv(const std::vector<const BandwidthSeries*>& runs);

// Columns: bench,variant,param,per_call_ns,mean_ms,reps.
std::string bench_csv(const std::vector<BenchReport>& reports);

std::string comparison_svg(const ComparisonResult& result);
std::string bench_svg(const std::vector<BenchReport>& reports, std::string_view title);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

// Tracking quality of one run per setpoint segment. Windows before
// max(segment start, ramp end) + settle seconds are excluded.
struct SegmentStats {
  double t0;
  double t1;
  double setpoint;
  double mean_bandwidth;
  double mean_abs_err_pct;
  double max_abs_err_pct;
  int windows = 0;
};

std::vector<SegmentStats> tracking_segments(const BandwidthSeries& series,
                                            const AppConfig& cfg, double settle = 50.0);

}  // namespace layerctx
