#pragma once

#include <memory>
#include <optional>
#include <string>

#include "layerctx/config.hpp"
#include "layerctx/manager.hpp"
#include "layerctx/runtime.hpp"
#include "layerctx/simulation.hpp"

namespace layerctx {

// Controller pinning for comparison runs: AllHigh/AllLow clamp the output
// bounds so every session gets one band regardless of measurements.
enum class RunPin { Controlled, AllHigh, AllLow };

// Everything one simulation run needs, freshly built so runs cannot leak
// state into each other.
struct CaseStudy {
  std::unique_ptr<Runtime> runtime;
  Layer high_band;
  Layer low_band;
  std::unique_ptr<AutonomicManager> manager;
};

CaseStudy make_case_study(const AppConfig& cfg, RunPin pin = RunPin::Controlled);

// Every scheduled setpoint must be strictly between the all-low and all-high
// steady-state bandwidths, otherwise no admission fraction can reach it.
// Throws ConfigError with the offending entry and the feasible range.
void check_setpoints_controllable(const AppConfig& cfg);

BandwidthSeries run_case_study(const AppConfig& cfg, RunPin pin, std::string run_label,
                               const SimHooks* hooks = nullptr);

struct ComparisonResult {
  std::optional<BandwidthSeries> a;  // pinned all-high
  std::optional<BandwidthSeries> b;  // controlled
  std::optional<BandwidthSeries> c;  // pinned all-low
};

// Runs the selected variants over identical config and seed.
ComparisonResult run_comparison(const AppConfig& cfg, bool run_a = true, bool run_b = true,
                                bool run_c = true);

}  // namespace layerctx
