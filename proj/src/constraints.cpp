#include "layerctx/constraints.hpp"

#include <algorithm>

namespace layerctx {

namespace {
bool contains(std::span<const Layer> set, Layer l) {
  return std::find(set.begin(), set.end(), l) != set.end();
}
}  // namespace

std::string ConstraintViolation::describe() const {
  if (kind == Kind::Excludes)
    return "excludes(" + a.name() + ", " + b.name() + "): both active";
  return "requires(" + a.name() + ", " + b.name() + "): " + b.name() + " not active";
}

void ConstraintSet::declare_excludes(Layer a, Layer b) {
  if (a == b) throw Error("excludes(" + a.name() + ", " + a.name() + "): layer excludes itself");
  for (const auto& [x, y] : excludes_)
    if ((x == a && y == b) || (x == b && y == a)) return;
  // requires in either direction contradicts exclusion: no set could ever
  // contain the dependent layer.
  if (has_dependency_path(a, b) || has_dependency_path(b, a))
    throw Error("excludes(" + a.name() + ", " + b.name() + ") contradicts a requires declaration");
  excludes_.emplace_back(a, b);
}

void ConstraintSet::declare_requires(Layer a, Layer b) {
  if (a == b) throw Error("requires(" + a.name() + ", " + a.name() + "): layer requires itself");
  for (const auto& [x, y] : requires_)
    if (x == a && y == b) return;
  if (has_dependency_path(b, a))
    throw Error("requires(" + a.name() + ", " + b.name() + ") creates a dependency cycle");
  requires_.emplace_back(a, b);
  // A dependency path between two mutually exclusive layers would make the
  // dependent one impossible to activate.
  for (const auto& [x, y] : excludes_) {
    if (has_dependency_path(x, y) || has_dependency_path(y, x)) {
      requires_.pop_back();
      throw Error("requires(" + a.name() + ", " + b.name() +
                  ") contradicts an excludes declaration");
    }
  }
}

bool ConstraintSet::has_dependency_path(Layer from, Layer to) const {
  if (from == to) return true;
  std::vector<Layer> stack{from};
  std::vector<Layer> seen;
  while (!stack.empty()) {
    Layer cur = stack.back();
    stack.pop_back();
    for (const auto& [x, y] : requires_) {
      if (!(x == cur)) continue;
      if (y == to) return true;
      if (std::find(seen.begin(), seen.end(), y) == seen.end()) {
        seen.push_back(y);
        stack.push_back(y);
      }
    }
  }
  return false;
}

ValidationResult ConstraintSet::validate(std::span<const Layer> effective_set) const {
  ValidationResult result;
  for (const auto& [a, b] : excludes_)
    if (contains(effective_set, a) && contains(effective_set, b))
      result.violations.push_back({ConstraintViolation::Kind::Excludes, a, b});
  for (const auto& [a, b] : requires_)
    if (contains(effective_set, a) && !contains(effective_set, b))
      result.violations.push_back({ConstraintViolation::Kind::Requires, a, b});
  return result;
}

}  // namespace layerctx
