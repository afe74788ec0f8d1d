#include "layerctx/controller.hpp"

#include <algorithm>
#include <cmath>

#include "layerctx/errors.hpp"

namespace layerctx {

PiController::PiController(Config cfg, double setpoint) : cfg_(cfg), setpoint_(setpoint) {
  if (!(setpoint > 0)) throw Error("controller setpoint must be > 0");
  if (!std::isfinite(cfg.kp) || !std::isfinite(cfg.ki))
    throw Error("controller gains must be finite");
  if (!(cfg.output_min <= cfg.output_max))
    throw Error("controller output_min must be <= output_max");
  if (cfg.output_min < 0.0 || cfg.output_max > 1.0)
    throw Error("controller output bounds must lie in [0, 1]");
  output_ = cfg_.output_max;
}

void PiController::set_setpoint(double setpoint) {
  if (!(setpoint > 0)) throw Error("controller setpoint must be > 0");
  setpoint_ = setpoint;
}

double PiController::step(double measured, double dt) {
  if (!(dt > 0)) throw Error("controller step requires dt > 0");
  const double error = setpoint_ - measured;
  // Conditional integration: while the previous raw output sat beyond a
  // bound, errors pushing further out do not accumulate.
  const bool freeze = cfg_.anti_windup &&
                      ((saturated_high_ && error > 0) || (saturated_low_ && error < 0));
  if (!freeze) integral_ += error * dt;
  const double raw = (cfg_.kp * error + cfg_.ki * integral_) / setpoint_;
  output_ = std::clamp(raw, cfg_.output_min, cfg_.output_max);
  saturated_high_ = raw > cfg_.output_max;
  saturated_low_ = raw < cfg_.output_min;
  return output_;
}

}  // namespace layerctx
