#include "layerctx/case_study.hpp"

#include <utility>

#include "layerctx/errors.hpp"
#include "layerctx/report.hpp"

namespace layerctx {

namespace {

EcaRule resolve_rule(const Runtime& rt, const RuleSpec& spec, std::size_t index) {
  EcaRule rule;
  rule.name = spec.name.empty() ? "rule" + std::to_string(index) : spec.name;
  rule.metric = spec.metric;
  if (spec.op == ">")
    rule.crossing = EcaRule::Crossing::RisesAbove;
  else if (spec.op == "<")
    rule.crossing = EcaRule::Crossing::FallsBelow;
  else
    throw ConfigError("rules[" + std::to_string(index) + "].op",
                      "must be \">\" or \"<\", got \"" + spec.op + "\"");
  rule.threshold = spec.threshold;
  for (const std::string& name : spec.activate) rule.activate.push_back(rt.layer(name));
  for (const std::string& name : spec.deactivate) rule.deactivate.push_back(rt.layer(name));
  return rule;
}

}  // namespace

void check_setpoints_controllable(const AppConfig& cfg) {
  const double lo = cfg.simulation.all_low_bandwidth();
  const double hi = cfg.simulation.all_high_bandwidth();
  for (std::size_t i = 0; i < cfg.setpoints.size(); ++i) {
    const double sp = cfg.setpoints[i].bytes_per_sec;
    if (!(sp > lo && sp < hi))
      throw ConfigError("setpoints[" + std::to_string(i) + "].bytes_per_sec",
                        format_double(sp) + " is outside the controllable region (" +
                            format_double(lo) + ", " + format_double(hi) +
                            ") spanned by the all-low and all-high rates");
  }
}

CaseStudy make_case_study(const AppConfig& cfg, RunPin pin) {
  cfg.simulation.validate();
  CaseStudy study;
  study.runtime = std::make_unique<Runtime>();
  Runtime& rt = *study.runtime;
  study.high_band = rt.define_layer("high_band", {{"quality", "high"}});
  study.low_band = rt.define_layer("low_band", {{"quality", "low"}});

  for (const auto& [a, b] : cfg.constraints.excludes)
    rt.declare_excludes(rt.layer(a), rt.layer(b));
  for (const auto& [a, b] : cfg.constraints.dependencies)
    rt.declare_requires(rt.layer(a), rt.layer(b));

  AutonomicManager::Config mcfg;
  mcfg.high_band = study.high_band;
  mcfg.low_band = study.low_band;
  mcfg.default_set = {study.high_band};
  mcfg.setpoints = cfg.setpoints;
  for (std::size_t i = 0; i < cfg.rules.size(); ++i)
    mcfg.rules.push_back(resolve_rule(rt, cfg.rules[i], i));

  const bool want_controller = cfg.controller_enabled || pin != RunPin::Controlled;
  if (want_controller) {
    PiController::Config cc = cfg.controller;
    if (pin == RunPin::AllHigh) {
      cc.output_min = 1.0;
      cc.output_max = 1.0;
    } else if (pin == RunPin::AllLow) {
      cc.output_min = 0.0;
      cc.output_max = 0.0;
      mcfg.default_set = {study.low_band};
    }
    mcfg.controller = cc;
  }

  study.manager = std::make_unique<AutonomicManager>(rt, std::move(mcfg));
  return study;
}

BandwidthSeries run_case_study(const AppConfig& cfg, RunPin pin, std::string run_label,
                               const SimHooks* hooks) {
  CaseStudy study = make_case_study(cfg, pin);
  BandwidthSeries series =
      run_simulation(cfg.simulation, *study.runtime, *study.manager, hooks);
  series.run = std::move(run_label);
  return series;
}

ComparisonResult run_comparison(const AppConfig& cfg, bool run_a, bool run_b, bool run_c) {
  check_setpoints_controllable(cfg);
  ComparisonResult result;
  if (run_a) result.a = run_case_study(cfg, RunPin::AllHigh, "a");
  if (run_b) result.b = run_case_study(cfg, RunPin::Controlled, "b");
  if (run_c) result.c = run_case_study(cfg, RunPin::AllLow, "c");
  return result;
}

}  // namespace layerctx
