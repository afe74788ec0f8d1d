#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "layerctx/errors.hpp"
#include "layerctx/layer.hpp"
#include "layerctx/value.hpp"

namespace layerctx {

class ContextState;
class DispatchCursor;

enum class PartialKind { Around, Before, After };

// Plain base body: no access to the chain.
using BaseFn = std::function<Value(Args)>;
// Around partial (or chain-aware base): may proceed to the next definition.
using AroundFn = std::function<Value(DispatchCursor&, Args)>;
// Before/After body: cannot proceed, return value is ignored by design.
using HookFn = std::function<void(Args)>;

// One resolved stage of a dispatch chain. The base stage has no layer.
struct ChainStage {
  std::optional<Layer> layer;
  PartialKind kind = PartialKind::Around;
  const AroundFn* around = nullptr;  // set for Around stages, including base
  const HookFn* hook = nullptr;      // set for Before/After stages
  bool is_base() const { return !layer.has_value(); }
};

// Dispatch plan for one call site under one activation state: Before hooks
// in effective order, the proceed chain (Around partials ending in the base),
// After hooks in reverse effective order.
struct DispatchChain {
  std::vector<ChainStage> befores;
  std::vector<ChainStage> arounds;  // last element is the base stage
  std::vector<ChainStage> afters;
};

// Position in the proceed chain of one in-flight call. Each stage runs at
// most once per call: proceed advances a shared cursor. Only valid while the
// call that produced it is running.
class DispatchCursor {
 public:
  Value proceed(Args args) {
    if (next_ >= arounds_.size())
      throw DispatchError("proceed: no next definition in dispatch chain");
    const ChainStage& stage = arounds_[next_++];
    return (*stage.around)(*this, args);
  }
  Value proceed() { return proceed(Args{}); }

  bool has_next() const { return next_ < arounds_.size(); }
  std::size_t remaining() const { return arounds_.size() - next_; }
  // The context the call is running in; lets bodies start nested calls.
  ContextState& context() const { return *ctx_; }

 private:
  friend class Runtime;
  DispatchCursor(std::span<const ChainStage> arounds, ContextState& ctx)
      : arounds_(arounds), ctx_(&ctx) {}
  std::span<const ChainStage> arounds_;
  std::size_t next_ = 0;
  ContextState* ctx_;
};

}  // namespace layerctx
