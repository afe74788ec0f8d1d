#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "layerctx/controller.hpp"
#include "layerctx/layer.hpp"
#include "layerctx/runtime.hpp"

namespace layerctx {

struct MetricSample {
  double t = 0;      // seconds
  double value = 0;  // bandwidth in bytes per second
};

struct SetpointEntry {
  double t = 0;
  double bytes_per_sec = 0;
};

// Read-only snapshot handed to rule conditions; never re-enters the manager.
// last_sample is the sample whose ingestion triggered the rule.
struct KnowledgeView {
  const std::vector<Layer>& recommended;
  std::optional<MetricSample> last_sample;
  double setpoint;
  double controller_output;  // NaN when no controller is configured
};

// Edge-triggered threshold rule: fires once per crossing of `threshold`
// between consecutive samples, applies the activate/deactivate delta to the
// recommended layer set if the result passes constraint validation.
struct EcaRule {
  std::string name;
  std::string metric = "bandwidth";
  enum class Crossing { RisesAbove, FallsBelow };
  Crossing crossing = Crossing::RisesAbove;
  double threshold = 0;
  std::function<bool(const KnowledgeView&)> condition;  // optional, default true
  std::vector<Layer> activate;
  std::vector<Layer> deactivate;
};

// Monitor-analyze-plan-execute loop over a shared runtime: ingests bandwidth
// samples, evaluates rules, steps the PI controller, and publishes a
// recommended layer set plus a high-quality admission fraction. All entry
// points are thread-safe; readers see consistent snapshots.
class AutonomicManager {
 public:
  struct Config {
    std::vector<Layer> default_set;
    std::optional<Layer> high_band;
    std::optional<Layer> low_band;
    std::optional<PiController::Config> controller;
    std::vector<SetpointEntry> setpoints;  // strictly increasing t, values > 0
    std::vector<EcaRule> rules;
    std::size_t history_capacity = 1000;
    std::function<void(std::string_view)> event_sink;  // planning diagnostics
  };

  AutonomicManager(const Runtime& rt, Config cfg);

  // Samples must arrive in non-decreasing time order. Each sample updates
  // the knowledge ring, evaluates rule crossings against the previous
  // sample, and steps the controller over the elapsed interval.
  void ingest_sample(MetricSample sample);

  // Applies the setpoint schedule: the latest entry with time <= t wins.
  void update_setpoint(double t);

  // Currently recommended layer set (rule-driven); snapshot copy.
  std::vector<Layer> get_active_layers() const;

  // Layer set for a newly admitted session: {high_band} with probability
  // equal to the controller output, else {low_band}. Without a controller
  // the probability degenerates to whether the recommended set holds
  // high_band. Draws exactly one variate from rng.
  std::vector<Layer> assign_session_layers(std::mt19937_64& rng) const;

  double controller_output() const;  // NaN when no controller configured
  double current_setpoint() const;
  std::optional<Layer> high_band() const { return cfg_.high_band; }
  std::optional<Layer> low_band() const { return cfg_.low_band; }

  std::size_t samples_ingested() const;
  std::size_t rules_fired() const;
  std::size_t planning_failures() const;
  std::vector<MetricSample> history() const;
  const Runtime& runtime() const { return *rt_; }

 private:
  void apply_rule_locked(const EcaRule& rule);
  void emit_locked(const std::string& line);

  const Runtime* rt_;
  Config cfg_;
  mutable std::mutex mu_;
  std::optional<PiController> controller_;
  double setpoint_now_ = 0;
  std::shared_ptr<const std::vector<Layer>> recommended_;
  std::deque<MetricSample> history_;
  std::optional<MetricSample> last_;
  std::size_t samples_ = 0;
  std::size_t fired_ = 0;
  std::size_t planning_failures_ = 0;
};

}  // namespace layerctx
