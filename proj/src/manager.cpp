#include "layerctx/manager.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace layerctx {

namespace {
bool holds(const std::vector<Layer>& set, Layer l) {
  return std::find(set.begin(), set.end(), l) != set.end();
}

void check_set_valid(const Runtime& rt, const std::vector<Layer>& set, const char* what) {
  for (Layer l : set) rt.check_owned(l);
  ValidationResult check = rt.constraints().validate(set);
  if (!check.ok()) {
    std::string msg = std::string(what) + " violates constraints:";
    for (const ConstraintViolation& v : check.violations) msg += " " + v.describe() + ";";
    msg.pop_back();
    throw Error(msg);
  }
}
}  // namespace

AutonomicManager::AutonomicManager(const Runtime& rt, Config cfg)
    : rt_(&rt), cfg_(std::move(cfg)) {
  check_set_valid(rt, cfg_.default_set, "default layer set");
  if (cfg_.high_band) rt.check_owned(*cfg_.high_band);
  if (cfg_.low_band) rt.check_owned(*cfg_.low_band);
  if (cfg_.history_capacity == 0) throw Error("history capacity must be > 0");

  for (std::size_t i = 0; i < cfg_.setpoints.size(); ++i) {
    if (!(cfg_.setpoints[i].bytes_per_sec > 0))
      throw Error("setpoint values must be > 0");
    if (i > 0 && !(cfg_.setpoints[i].t > cfg_.setpoints[i - 1].t))
      throw Error("setpoint schedule times must be strictly increasing");
  }

  for (const EcaRule& rule : cfg_.rules) {
    if (rule.metric != "bandwidth")
      throw Error("rule '" + rule.name + "': unknown metric '" + rule.metric + "'");
    for (Layer l : rule.activate) rt.check_owned(l);
    for (Layer l : rule.deactivate) rt.check_owned(l);
    check_set_valid(rt, rule.activate, ("rule '" + rule.name + "' activation set").c_str());
  }

  if (cfg_.controller) {
    if (cfg_.setpoints.empty())
      throw Error("a controller requires a setpoint schedule");
    if (!cfg_.high_band || !cfg_.low_band)
      throw Error("a controller requires high_band and low_band layers");
    setpoint_now_ = cfg_.setpoints.front().bytes_per_sec;
    controller_.emplace(*cfg_.controller, setpoint_now_);
  } else if (!cfg_.setpoints.empty()) {
    setpoint_now_ = cfg_.setpoints.front().bytes_per_sec;
  }

  recommended_ = std::make_shared<const std::vector<Layer>>(cfg_.default_set);
}

void AutonomicManager::emit_locked(const std::string& line) {
  if (cfg_.event_sink) cfg_.event_sink(line);
}

void AutonomicManager::apply_rule_locked(const EcaRule& rule) {
  if (rule.condition) {
    const KnowledgeView view{*recommended_, last_, setpoint_now_,
                             controller_ ? controller_->output()
                                         : std::numeric_limits<double>::quiet_NaN()};
    if (!rule.condition(view)) return;
  }
  std::vector<Layer> next;
  next.reserve(recommended_->size() + rule.activate.size());
  for (Layer l : *recommended_)
    if (!holds(rule.deactivate, l)) next.push_back(l);
  for (Layer l : rule.activate)
    if (!holds(next, l)) next.push_back(l);

  ValidationResult check = rt_->constraints().validate(next);
  if (!check.ok()) {
    ++planning_failures_;
    std::string msg = "planning failure: rule '" + rule.name + "' result rejected:";
    for (const ConstraintViolation& v : check.violations) msg += " " + v.describe() + ";";
    msg.pop_back();
    emit_locked(msg);
    return;  // keep the previous recommendation
  }
  recommended_ = std::make_shared<const std::vector<Layer>>(std::move(next));
  ++fired_;
  emit_locked("rule '" + rule.name + "' fired");
}

void AutonomicManager::ingest_sample(MetricSample sample) {
  std::lock_guard lock(mu_);
  if (last_ && sample.t < last_->t)
    throw Error("out-of-order sample: t=" + std::to_string(sample.t) +
                " after t=" + std::to_string(last_->t));
  if (history_.size() == cfg_.history_capacity) history_.pop_front();
  history_.push_back(sample);
  ++samples_;

  if (last_) {
    const MetricSample prev = *last_;
    last_ = sample;  // knowledge is current before rules and controller run
    for (const EcaRule& rule : cfg_.rules) {
      const bool crossed =
          rule.crossing == EcaRule::Crossing::RisesAbove
              ? (prev.value <= rule.threshold && sample.value > rule.threshold)
              : (prev.value >= rule.threshold && sample.value < rule.threshold);
      if (crossed) apply_rule_locked(rule);
    }
    const double dt = sample.t - prev.t;
    if (controller_ && dt > 0) controller_->step(sample.value, dt);
  } else {
    last_ = sample;
  }
}

void AutonomicManager::update_setpoint(double t) {
  std::lock_guard lock(mu_);
  const SetpointEntry* chosen = nullptr;
  for (const SetpointEntry& e : cfg_.setpoints) {
    if (e.t <= t) chosen = &e;
    else break;
  }
  if (!chosen) return;  // before the first scheduled entry
  if (chosen->bytes_per_sec != setpoint_now_) {
    setpoint_now_ = chosen->bytes_per_sec;
    if (controller_) controller_->set_setpoint(setpoint_now_);
  }
}

std::vector<Layer> AutonomicManager::get_active_layers() const {
  std::shared_ptr<const std::vector<Layer>> snap;
  {
    std::lock_guard lock(mu_);
    snap = recommended_;
  }
  return *snap;
}

std::vector<Layer> AutonomicManager::assign_session_layers(std::mt19937_64& rng) const {
  Layer high, low;
  double p = 0;
  {
    std::lock_guard lock(mu_);
    if (!cfg_.high_band || !cfg_.low_band)
      throw Error("assign_session_layers requires high_band and low_band layers");
    high = *cfg_.high_band;
    low = *cfg_.low_band;
    p = controller_ ? controller_->output() : (holds(*recommended_, high) ? 1.0 : 0.0);
  }
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return {u < p ? high : low};
}

double AutonomicManager::controller_output() const {
  std::lock_guard lock(mu_);
  return controller_ ? controller_->output() : std::numeric_limits<double>::quiet_NaN();
}

double AutonomicManager::current_setpoint() const {
  std::lock_guard lock(mu_);
  return setpoint_now_;
}

std::size_t AutonomicManager::samples_ingested() const {
  std::lock_guard lock(mu_);
  return samples_;
}

std::size_t AutonomicManager::rules_fired() const {
  std::lock_guard lock(mu_);
  return fired_;
}

std::size_t AutonomicManager::planning_failures() const {
  std::lock_guard lock(mu_);
  return planning_failures_;
}

std::vector<MetricSample> AutonomicManager::history() const {
  std::lock_guard lock(mu_);
  return {history_.begin(), history_.end()};
}

}  // namespace layerctx
