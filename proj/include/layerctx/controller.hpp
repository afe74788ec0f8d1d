#pragma once

namespace layerctx {

// Discrete PI controller producing a fraction in [output_min, output_max].
// The error is normalized by the setpoint so the gains are dimensionless and
// survive setpoint changes.
class PiController {
 public:
  struct Config {
    double kp = 0.8;
    double ki = 0.3;  // per second
    double output_min = 0.0;
    double output_max = 1.0;
    bool anti_windup = true;
  };

  PiController(Config cfg, double setpoint);

  // One control step over an interval of dt seconds. Returns the clamped
  // output. dt must be > 0.
  double step(double measured, double dt);

  void set_setpoint(double setpoint);  // must be > 0
  double setpoint() const { return setpoint_; }
  // Last output; before the first step this is output_max (an unloaded
  // system serves full quality until the first measurement).
  double output() const { return output_; }
  double integral() const { return integral_; }
  const Config& config() const { return cfg_; }

 private:
  Config cfg_;
  double setpoint_;
  double integral_ = 0.0;
  double output_;
  bool saturated_high_ = false;
  bool saturated_low_ = false;
};

}  // namespace layerctx
