#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "layerctx/constraints.hpp"
#include "layerctx/context.hpp"
#include "layerctx/dispatch.hpp"
#include "layerctx/errors.hpp"
#include "layerctx/layer.hpp"
#include "layerctx/value.hpp"

namespace layerctx {

struct MethodId {
  std::uint32_t value = 0;
  friend bool operator==(MethodId, MethodId) = default;
  friend auto operator<=>(MethodId, MethodId) = default;
};

namespace detail {
struct PartialSlots {
  AroundFn around;
  HookFn before;
  HookFn after;
};

struct MethodInfo {
  MethodId id;
  std::string name;
  AroundFn base;  // chain-aware wrapper; last stage of every chain
  std::vector<PartialSlots> by_layer;  // indexed by LayerId::value, sparse
  const Runtime* owner = nullptr;

  const PartialSlots* slots_for(LayerId lid) const {
    if (lid.value >= by_layer.size()) return nullptr;
    return &by_layer[lid.value];
  }
};
}  // namespace detail

// Handle to a registered layered method. Same lifetime rules as Layer.
class Method {
 public:
  Method() = default;
  MethodId id() const { return info_->id; }
  const std::string& name() const { return info_->name; }
  explicit operator bool() const { return info_ != nullptr; }
  friend bool operator==(Method a, Method b) { return a.info_ == b.info_; }

 private:
  friend class Runtime;
  explicit Method(const detail::MethodInfo* info) : info_(info) {}
  const detail::MethodInfo* info_ = nullptr;
};

// Registry of layers, layered methods, partial definitions and constraints.
// Registration is single-threaded setup; afterwards the runtime is immutable
// shared state and any number of contexts may dispatch through it
// concurrently.
class Runtime {
 public:
  Runtime() = default;
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  Layer define_layer(std::string name, Metadata metadata = {});
  // Base definition that ignores the chain (the common case).
  Method register_method(std::string name, BaseFn base);
  // Base definition that sees the cursor; proceeding past it still errors.
  Method register_method(std::string name, AroundFn base);

  void add_around(Method method, Layer layer, AroundFn body);
  void add_before(Method method, Layer layer, HookFn body);
  void add_after(Method method, Layer layer, HookFn body);

  std::optional<Layer> find_layer(std::string_view name) const;
  Layer layer(std::string_view name) const;  // throws RegistrationError
  std::optional<Method> find_method(std::string_view name) const;
  Method method(std::string_view name) const;
  std::vector<Layer> layers() const;
  std::size_t layer_count() const { return layers_.size(); }

  void declare_excludes(Layer a, Layer b);
  void declare_requires(Layer a, Layer b);
  const ConstraintSet& constraints() const { return constraints_; }

  ContextState make_context() const { return ContextState(*this); }

  // Resolves the full dispatch plan for `method` under the context's current
  // activation state. Exposed for reflection; call() is the normal path.
  DispatchChain compose_chain(const ContextState& ctx, Method method) const;

  // Full layered call: befores in effective order, proceed chain, afters in
  // reverse effective order. Errors propagate and skip remaining stages.
  Value call(ContextState& ctx, Method method, Args args) const;
  Value call(ContextState& ctx, Method method) const { return call(ctx, method, Args{}); }

  // Partial definitions attached to `layer`, as (method name, kind) pairs.
  std::vector<std::pair<std::string, PartialKind>> partials_of(Layer layer) const;

  void check_owned(Layer layer) const;
  void check_owned(Method method) const;

 private:
  detail::PartialSlots& slots_for_add(Method method, Layer layer, PartialKind kind);

  std::vector<std::unique_ptr<detail::LayerInfo>> layers_;
  std::vector<std::unique_ptr<detail::MethodInfo>> methods_;
  std::unordered_map<std::string, std::size_t> layer_names_;
  std::unordered_map<std::string, std::size_t> method_names_;
  ConstraintSet constraints_;
};

}  // namespace layerctx
