#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "layerctx/errors.hpp"
#include "layerctx/layer.hpp"

namespace layerctx {

struct ConstraintViolation {
  enum class Kind { Excludes, Requires };
  Kind kind;
  // Excludes: a and b are the conflicting pair. Requires: a needs b, b absent.
  Layer a;
  Layer b;
  std::string describe() const;
};

struct ValidationResult {
  std::vector<ConstraintViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Activation refused: the would-be effective layer set violates declared
// constraints. The body of the refused scope has not run.
class ActivationError : public Error {
 public:
  ActivationError(const std::string& what, std::vector<ConstraintViolation> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<ConstraintViolation>& violations() const { return violations_; }

 private:
  std::vector<ConstraintViolation> violations_;
};

// Declarative relationships between layers, checked against the effective
// layer set whenever an activation would change it.
class ConstraintSet {
 public:
  // Mutual exclusion; symmetric, duplicates collapse.
  void declare_excludes(Layer a, Layer b);
  // `a` can only be active while `b` is. Cyclic chains are rejected.
  void declare_requires(Layer a, Layer b);

  // Pure check of one candidate set; no order sensitivity, no side effects.
  ValidationResult validate(std::span<const Layer> effective_set) const;

  bool empty() const { return excludes_.empty() && requires_.empty(); }
  const std::vector<std::pair<Layer, Layer>>& excludes() const { return excludes_; }
  const std::vector<std::pair<Layer, Layer>>& dependencies() const { return requires_; }

 private:
  bool has_dependency_path(Layer from, Layer to) const;
  std::vector<std::pair<Layer, Layer>> excludes_;
  std::vector<std::pair<Layer, Layer>> requires_;
};

}  // namespace layerctx
