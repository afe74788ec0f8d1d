#include "layerctx/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "layerctx/errors.hpp"

namespace layerctx {

namespace {

constexpr int kWindowPriority = 0;  // boundaries settle before same-tick requests
constexpr int kRequestPriority = 1;

struct Event {
  double t;
  int priority;
  std::uint64_t seq;
  int user;  // request events only
};

struct LaterEvent {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.seq > b.seq;
  }
};

struct UserState {
  bool has_session = false;
  std::uint64_t session_id = 0;
  int pages_served = 0;
  bool classified = false;
  std::vector<Layer> session_layers;
};

}  // namespace

void SimulationConfig::validate() const {
  if (n_users <= 0) throw ConfigError("simulation.n_users", "must be > 0");
  if (!(ramp_interval >= 0)) throw ConfigError("simulation.ramp_interval", "must be >= 0");
  if (pages_per_session <= 0)
    throw ConfigError("simulation.pages_per_session", "must be > 0");
  if (!(inter_request_delay > 0))
    throw ConfigError("simulation.inter_request_delay", "must be > 0");
  if (!(duration > 0)) throw ConfigError("simulation.duration", "must be > 0");
  if (!(measurement_window > 0))
    throw ConfigError("simulation.measurement_window", "must be > 0");
  const double windows = duration / measurement_window;
  if (std::abs(windows - std::round(windows)) > 1e-9)
    throw ConfigError("simulation.duration",
                      "must be an integral number of measurement windows");
  if (first_level_components <= 0)
    throw ConfigError("simulation.page.first_level", "must be > 0");
  if (second_level_per_component <= 0)
    throw ConfigError("simulation.page.second_per_first", "must be > 0");
  if (page_bytes.first_high <= page_bytes.first_low)
    throw ConfigError("simulation.page.bytes.first_high", "must exceed first_low");
  if (page_bytes.second_high <= page_bytes.second_low)
    throw ConfigError("simulation.page.bytes.second_high", "must exceed second_low");
}

std::int64_t SimulationConfig::page_bytes_high() const {
  return static_cast<std::int64_t>(first_level_components) *
         (page_bytes.first_high +
          static_cast<std::int64_t>(second_level_per_component) * page_bytes.second_high);
}

std::int64_t SimulationConfig::page_bytes_low() const {
  return static_cast<std::int64_t>(first_level_components) *
         (page_bytes.first_low +
          static_cast<std::int64_t>(second_level_per_component) * page_bytes.second_low);
}

BandwidthSeries run_simulation(const SimulationConfig& cfg, Runtime& rt,
                               AutonomicManager& manager, const SimHooks* hooks) {
  cfg.validate();
  if (!manager.high_band() || !manager.low_band())
    throw Error("simulation requires a manager with high_band and low_band layers");
  const Layer high = *manager.high_band();
  const Layer low = *manager.low_band();

  std::mt19937_64 rng(cfg.seed);
  BandwidthSeries series;

  // Component granularity draws a fresh assignment around every component
  // dispatch; the first draw of a session classifies it for the rate rows.
  UserState* classifying = nullptr;
  std::int64_t window_high_created = 0;
  std::int64_t window_low_created = 0;
  auto classify = [&](UserState& u, const std::vector<Layer>& layers) {
    if (u.classified) return;
    u.classified = true;
    const bool is_high = std::find(layers.begin(), layers.end(), high) != layers.end();
    (is_high ? window_high_created : window_low_created) += 1;
  };

  PageModel::Reassign reassign;
  if (cfg.granularity == Granularity::Component) {
    reassign = [&]() {
      std::vector<Layer> layers = manager.assign_session_layers(rng);
      if (classifying) classify(*classifying, layers);
      return layers;
    };
  }
  PageModel model(rt, high, low, cfg.first_level_components,
                  cfg.second_level_per_component, cfg.page_bytes, std::move(reassign));
  ContextState ctx = rt.make_context();

  std::priority_queue<Event, std::vector<Event>, LaterEvent> queue;
  std::uint64_t seq = 0;
  const int n_windows = static_cast<int>(std::llround(cfg.duration / cfg.measurement_window));
  for (int w = 1; w <= n_windows; ++w)
    queue.push({w * cfg.measurement_window, kWindowPriority, seq++, -1});
  const double user_spacing = cfg.ramp_interval / cfg.n_users;
  for (int i = 0; i < cfg.n_users; ++i) {
    const double start = i * user_spacing;
    if (start < cfg.duration) queue.push({start, kRequestPriority, seq++, i});
  }

  std::vector<UserState> users(cfg.n_users);
  std::uint64_t session_counter = 0;
  std::int64_t window_bytes = 0;

  manager.update_setpoint(0.0);
  double setpoint_now = manager.current_setpoint();

  while (!queue.empty()) {
    const Event ev = queue.top();
    queue.pop();

    if (ev.priority == kWindowPriority) {
      const double start = ev.t - cfg.measurement_window;
      const double bandwidth = window_bytes / cfg.measurement_window;
      series.rows.push_back({start, bandwidth, setpoint_now,
                             window_high_created / cfg.measurement_window,
                             window_low_created / cfg.measurement_window});
      series.measured_bytes += window_bytes;
      window_bytes = 0;
      window_high_created = 0;
      window_low_created = 0;
      // The boundary also advances the control plane: schedule first, then
      // feed the closing window's measurement.
      manager.update_setpoint(ev.t);
      setpoint_now = manager.current_setpoint();
      manager.ingest_sample({ev.t, bandwidth});
      continue;
    }

    UserState& u = users[ev.user];
    if (!u.has_session || u.pages_served == cfg.pages_per_session) {
      u.has_session = true;
      u.pages_served = 0;
      u.classified = false;
      u.session_id = ++session_counter;
      ++series.sessions_created;
      if (cfg.granularity == Granularity::Session) {
        u.session_layers = manager.assign_session_layers(rng);
        classify(u, u.session_layers);
      } else {
        u.session_layers.clear();
      }
    }

    std::int64_t bytes = 0;
    std::vector<Layer> used;
    switch (cfg.granularity) {
      case Granularity::Session:
        used = u.session_layers;
        bytes = ctx.with_layers(std::span<const Layer>(used),
                                [&] { return model.render_page(ctx); });
        break;
      case Granularity::Page:
        used = manager.assign_session_layers(rng);
        classify(u, used);
        bytes = ctx.with_layers(std::span<const Layer>(used),
                                [&] { return model.render_page(ctx); });
        break;
      case Granularity::Component:
        classifying = &u;
        bytes = model.render_page(ctx);
        classifying = nullptr;
        break;
    }

    window_bytes += bytes;
    series.total_bytes += bytes;
    ++series.total_pages;
    ++u.pages_served;
    if (hooks && hooks->on_page)
      hooks->on_page({u.session_id, ev.user, ev.t, used, bytes});

    double delay = cfg.inter_request_delay;
    if (cfg.think_time_jitter)
      delay *= 0.9 + 0.2 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double next = ev.t + delay;
    if (next < cfg.duration) queue.push({next, kRequestPriority, seq++, ev.user});
  }

  return series;
}

}  // namespace layerctx
