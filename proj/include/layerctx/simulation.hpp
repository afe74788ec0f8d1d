#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "layerctx/manager.hpp"
#include "layerctx/page_model.hpp"
#include "layerctx/runtime.hpp"

namespace layerctx {

// Which unit of work gets a (possibly new) layer assignment.
enum class Granularity { Session, Page, Component };

struct SimulationConfig {
  int n_users = 200;
  double ramp_interval = 200.0;      // seconds over which users arrive
  int pages_per_session = 5;
  double inter_request_delay = 1.0;  // seconds between a user's requests
  double duration = 800.0;           // virtual seconds
  double measurement_window = 1.0;   // seconds per bandwidth sample
  std::uint64_t seed = 1;
  Granularity granularity = Granularity::Session;
  bool think_time_jitter = false;  // uniform +-10% on the request delay
  int first_level_components = 4;
  int second_level_per_component = 2;
  PageBytes page_bytes;

  void validate() const;  // throws ConfigError naming the field
  std::int64_t page_bytes_high() const;
  std::int64_t page_bytes_low() const;
  double steady_page_rate() const { return n_users / inter_request_delay; }
  // Closed-form steady-state bandwidth with every page served high/low.
  double all_high_bandwidth() const { return steady_page_rate() * page_bytes_high(); }
  double all_low_bandwidth() const { return steady_page_rate() * page_bytes_low(); }
};

// One bandwidth measurement window.
struct WindowRow {
  double t;          // window start, virtual seconds
  double bandwidth;  // bytes per second over the window
  double setpoint;   // setpoint in effect during the window
  double high_rate;  // high_band sessions created per second in the window
  double low_rate;
};

struct BandwidthSeries {
  std::string run;  // "a" | "b" | "c"
  std::vector<WindowRow> rows;
  std::int64_t total_bytes = 0;     // every byte rendered
  std::int64_t measured_bytes = 0;  // bytes attributed to windows
  std::int64_t total_pages = 0;
  std::int64_t sessions_created = 0;
};

struct PageRenderRecord {
  std::uint64_t session_id;
  int user;
  double t;
  std::vector<Layer> layers;  // activation the page was rendered under
  std::int64_t bytes;
};

struct SimHooks {
  std::function<void(const PageRenderRecord&)> on_page;
};

// Virtual-time discrete-event run: users arrive over the ramp interval, each
// issuing one page request per inter_request_delay; sessions expire after
// pages_per_session pages and are replaced on the next request in the same
// tick. The manager assigns layer sets per the configured granularity and is
// fed one bandwidth sample per measurement window. Wall-clock free and
// deterministic for a fixed config and seed.
BandwidthSeries run_simulation(const SimulationConfig& cfg, Runtime& rt,
                               AutonomicManager& manager, const SimHooks* hooks = nullptr);

}  // namespace layerctx
