#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "layerctx/layer.hpp"

namespace layerctx {

class Runtime;

enum class EntryMode : std::uint8_t { Activate, Suppress };

struct ContextEntry {
  Layer layer;
  EntryMode mode;
  friend bool operator==(const ContextEntry&, const ContextEntry&) = default;
};

// Per-control-flow activation state: a list of indefinite activations plus a
// stack of scoped frames. Newer entries shadow older ones for the same layer;
// a Suppress entry hides the layer entirely while in scope.
//
// One context belongs to one control flow at a time; it is movable but not
// copyable, and never synchronized. Distinct threads use distinct contexts.
class ContextState {
 public:
  explicit ContextState(const Runtime& rt);
  ContextState(ContextState&&) noexcept = default;
  ContextState& operator=(ContextState&&) noexcept = default;
  ContextState(const ContextState&) = delete;
  ContextState& operator=(const ContextState&) = delete;

  const Runtime& runtime() const { return *runtime_; }

  // Effective activation order, newest first: scoped frames inner to outer,
  // then indefinite activations newest first. Suppressed layers are absent;
  // repeated activations collapse onto the most recent one.
  std::vector<Layer> active_layers() const;
  bool is_active(Layer layer) const;

  // Runs `body` with `layers` activated for its dynamic extent. Constraints
  // are checked against the new effective set before the body runs; on
  // violation the context is left unchanged and ActivationError is thrown.
  // The frame is popped however the body exits.
  template <typename Body>
  decltype(auto) with_layers(std::span<const Layer> layers, Body&& body) {
    push_frame(layers, EntryMode::Activate);
    FrameGuard guard(*this);
    return std::invoke(std::forward<Body>(body));
  }
  template <typename Body>
  decltype(auto) with_layers(std::initializer_list<Layer> layers, Body&& body) {
    return with_layers(std::span<const Layer>(layers.begin(), layers.size()),
                       std::forward<Body>(body));
  }

  // Runs `body` with `layers` suppressed for its dynamic extent. Suppression
  // shrinks the effective set, so no constraint check happens here.
  template <typename Body>
  decltype(auto) without_layers(std::span<const Layer> layers, Body&& body) {
    push_frame(layers, EntryMode::Suppress);
    FrameGuard guard(*this);
    return std::invoke(std::forward<Body>(body));
  }
  template <typename Body>
  decltype(auto) without_layers(std::initializer_list<Layer> layers, Body&& body) {
    return without_layers(std::span<const Layer>(layers.begin(), layers.size()),
                          std::forward<Body>(body));
  }

  // Indefinite-extent activation: stays active until deactivated. Checked
  // against constraints like with_layers.
  void activate_indefinite(Layer layer);
  // Removes the most recent indefinite activation of `layer`; error if none.
  void deactivate(Layer layer);

  // Raw entries oldest first (indefinite list, then scoped frames inner
  // frames last). Reflection surface for tooling and tests.
  std::vector<ContextEntry> raw_entries() const;
  std::size_t scoped_depth() const { return frame_starts_.size(); }

 private:
  struct FrameGuard {
    explicit FrameGuard(ContextState& ctx) : ctx_(&ctx), depth_(ctx.frame_starts_.size()) {}
    ~FrameGuard() { ctx_->pop_frame(depth_); }
    FrameGuard(const FrameGuard&) = delete;
    FrameGuard& operator=(const FrameGuard&) = delete;
    ContextState* ctx_;
    std::size_t depth_;
  };

  void push_frame(std::span<const Layer> layers, EntryMode mode);
  void pop_frame(std::size_t expected_depth);
  void check_owned(Layer layer) const;

  const Runtime* runtime_;
  std::vector<ContextEntry> indefinite_;
  std::vector<ContextEntry> scoped_;       // flattened frames
  std::vector<std::size_t> frame_starts_;  // index into scoped_ per frame
};

}  // namespace layerctx
