#include "layerctx/context.hpp"

#include <cassert>
#include <string>

#include "layerctx/constraints.hpp"
#include "layerctx/runtime.hpp"

namespace layerctx {

namespace {

// Tracks which layer ids were already seen while walking entries newest
// first. Bitmask for the common small case.
class SeenSet {
 public:
  explicit SeenSet(std::size_t layer_count) {
    if (layer_count > 64) big_.assign(layer_count, false);
  }
  // Returns the previous state and marks the id as seen.
  bool test_and_set(std::uint32_t id) {
    if (big_.empty()) {
      const std::uint64_t bit = std::uint64_t{1} << id;
      const bool was = (mask_ & bit) != 0;
      mask_ |= bit;
      return was;
    }
    const bool was = big_[id];
    big_[id] = true;
    return was;
  }

 private:
  std::uint64_t mask_ = 0;
  std::vector<bool> big_;
};

// Walks entries newest first across both stores, calling fn(layer) for each
// layer whose most recent entry is an activation.
template <typename Fn>
void for_each_effective(const std::vector<ContextEntry>& indefinite,
                        const std::vector<ContextEntry>& scoped,
                        std::size_t layer_count, Fn&& fn) {
  SeenSet seen(layer_count);
  auto visit = [&](const std::vector<ContextEntry>& entries) {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      if (seen.test_and_set(it->layer.id().value)) continue;
      if (it->mode == EntryMode::Activate) fn(it->layer);
    }
  };
  visit(scoped);
  visit(indefinite);
}

}  // namespace

ContextState::ContextState(const Runtime& rt) : runtime_(&rt) {}

void ContextState::check_owned(Layer layer) const { runtime_->check_owned(layer); }

std::vector<Layer> ContextState::active_layers() const {
  std::vector<Layer> out;
  for_each_effective(indefinite_, scoped_, runtime_->layer_count(),
                     [&](Layer l) { out.push_back(l); });
  return out;
}

bool ContextState::is_active(Layer layer) const {
  check_owned(layer);
  bool active = false;
  for_each_effective(indefinite_, scoped_, runtime_->layer_count(), [&](Layer l) {
    if (l == layer) active = true;
  });
  return active;
}

void ContextState::push_frame(std::span<const Layer> layers, EntryMode mode) {
  for (Layer l : layers) check_owned(l);
  frame_starts_.push_back(scoped_.size());
  for (Layer l : layers) scoped_.push_back({l, mode});
  if (mode == EntryMode::Activate && !runtime_->constraints().empty()) {
    ValidationResult check = runtime_->constraints().validate(active_layers());
    if (!check.ok()) {
      scoped_.resize(frame_starts_.back());
      frame_starts_.pop_back();
      std::string msg = "activation refused:";
      for (const ConstraintViolation& v : check.violations) msg += " " + v.describe() + ";";
      msg.pop_back();
      throw ActivationError(msg, std::move(check.violations));
    }
  }
}

void ContextState::pop_frame(std::size_t expected_depth) {
  assert(frame_starts_.size() == expected_depth + 1);
  (void)expected_depth;
  scoped_.resize(frame_starts_.back());
  frame_starts_.pop_back();
}

void ContextState::activate_indefinite(Layer layer) {
  check_owned(layer);
  indefinite_.push_back({layer, EntryMode::Activate});
  if (!runtime_->constraints().empty()) {
    ValidationResult check = runtime_->constraints().validate(active_layers());
    if (!check.ok()) {
      indefinite_.pop_back();
      std::string msg = "activation refused:";
      for (const ConstraintViolation& v : check.violations) msg += " " + v.describe() + ";";
      msg.pop_back();
      throw ActivationError(msg, std::move(check.violations));
    }
  }
}

void ContextState::deactivate(Layer layer) {
  check_owned(layer);
  for (auto it = indefinite_.rbegin(); it != indefinite_.rend(); ++it) {
    if (it->layer == layer) {
      indefinite_.erase(std::next(it).base());
      return;
    }
  }
  throw Error("deactivate: layer '" + layer.name() + "' has no indefinite activation");
}

std::vector<ContextEntry> ContextState::raw_entries() const {
  std::vector<ContextEntry> out = indefinite_;
  out.insert(out.end(), scoped_.begin(), scoped_.end());
  return out;
}

}  // namespace layerctx
