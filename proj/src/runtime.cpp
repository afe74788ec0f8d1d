#include "layerctx/runtime.hpp"

#include <algorithm>

namespace layerctx {

Layer Runtime::define_layer(std::string name, Metadata metadata) {
  if (name.empty()) throw RegistrationError("layer name must not be empty");
  if (layer_names_.count(name))
    throw RegistrationError("layer '" + name + "' already defined");
  auto info = std::make_unique<detail::LayerInfo>();
  info->id = LayerId{static_cast<std::uint32_t>(layers_.size())};
  info->name = std::move(name);
  info->metadata = std::move(metadata);
  info->owner = this;
  layer_names_.emplace(info->name, layers_.size());
  layers_.push_back(std::move(info));
  return Layer(layers_.back().get());
}

Method Runtime::register_method(std::string name, BaseFn base) {
  if (!base) throw RegistrationError("method '" + name + "': base definition must not be empty");
  return register_method(std::move(name),
                         AroundFn([fn = std::move(base)](DispatchCursor&, Args args) {
                           return fn(args);
                         }));
}

Method Runtime::register_method(std::string name, AroundFn base) {
  if (name.empty()) throw RegistrationError("method name must not be empty");
  if (!base) throw RegistrationError("method '" + name + "': base definition must not be empty");
  if (method_names_.count(name))
    throw RegistrationError("method '" + name + "' already registered");
  auto info = std::make_unique<detail::MethodInfo>();
  info->id = MethodId{static_cast<std::uint32_t>(methods_.size())};
  info->name = std::move(name);
  info->base = std::move(base);
  info->owner = this;
  method_names_.emplace(info->name, methods_.size());
  methods_.push_back(std::move(info));
  return Method(methods_.back().get());
}

detail::PartialSlots& Runtime::slots_for_add(Method method, Layer layer, PartialKind kind) {
  check_owned(method);
  check_owned(layer);
  auto& info = *methods_[method.id().value];
  if (info.by_layer.size() <= layer.id().value) info.by_layer.resize(layer.id().value + 1);
  auto& slots = info.by_layer[layer.id().value];
  const bool occupied = (kind == PartialKind::Around && slots.around) ||
                        (kind == PartialKind::Before && slots.before) ||
                        (kind == PartialKind::After && slots.after);
  if (occupied)
    throw RegistrationError("method '" + info.name + "': layer '" + layer.name() +
                            "' already has a partial of that kind");
  return slots;
}

void Runtime::add_around(Method method, Layer layer, AroundFn body) {
  if (!body) throw RegistrationError("around partial must not be empty");
  slots_for_add(method, layer, PartialKind::Around).around = std::move(body);
}

void Runtime::add_before(Method method, Layer layer, HookFn body) {
  if (!body) throw RegistrationError("before partial must not be empty");
  slots_for_add(method, layer, PartialKind::Before).before = std::move(body);
}

void Runtime::add_after(Method method, Layer layer, HookFn body) {
  if (!body) throw RegistrationError("after partial must not be empty");
  slots_for_add(method, layer, PartialKind::After).after = std::move(body);
}

std::optional<Layer> Runtime::find_layer(std::string_view name) const {
  auto it = layer_names_.find(std::string(name));
  if (it == layer_names_.end()) return std::nullopt;
  return Layer(layers_[it->second].get());
}

Layer Runtime::layer(std::string_view name) const {
  if (auto l = find_layer(name)) return *l;
  throw RegistrationError("unknown layer '" + std::string(name) + "'");
}

std::optional<Method> Runtime::find_method(std::string_view name) const {
  auto it = method_names_.find(std::string(name));
  if (it == method_names_.end()) return std::nullopt;
  return Method(methods_[it->second].get());
}

Method Runtime::method(std::string_view name) const {
  if (auto m = find_method(name)) return *m;
  throw RegistrationError("unknown method '" + std::string(name) + "'");
}

std::vector<Layer> Runtime::layers() const {
  std::vector<Layer> out;
  out.reserve(layers_.size());
  for (const auto& info : layers_) out.push_back(Layer(info.get()));
  return out;
}

void Runtime::declare_excludes(Layer a, Layer b) {
  check_owned(a);
  check_owned(b);
  constraints_.declare_excludes(a, b);
}

void Runtime::declare_requires(Layer a, Layer b) {
  check_owned(a);
  check_owned(b);
  constraints_.declare_requires(a, b);
}

void Runtime::check_owned(Layer layer) const {
  if (!layer) throw RegistrationError("null layer handle");
  if (&layer.owner() != this)
    throw RegistrationError("layer '" + layer.name() + "' belongs to a different runtime");
}

void Runtime::check_owned(Method method) const {
  if (!method) throw RegistrationError("null method handle");
  if (method.info_->owner != this)
    throw RegistrationError("method '" + method.name() + "' belongs to a different runtime");
}

DispatchChain Runtime::compose_chain(const ContextState& ctx, Method method) const {
  if (&ctx.runtime() != this)
    throw RegistrationError("context belongs to a different runtime");
  check_owned(method);
  const auto& info = *methods_[method.id().value];
  const std::vector<Layer> order = ctx.active_layers();

  DispatchChain chain;
  for (Layer l : order) {
    const detail::PartialSlots* slots = info.slots_for(l.id());
    if (!slots) continue;
    if (slots->before)
      chain.befores.push_back({l, PartialKind::Before, nullptr, &slots->before});
    if (slots->around)
      chain.arounds.push_back({l, PartialKind::Around, &slots->around, nullptr});
  }
  chain.arounds.push_back({std::nullopt, PartialKind::Around, &info.base, nullptr});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const detail::PartialSlots* slots = info.slots_for(it->id());
    if (slots && slots->after)
      chain.afters.push_back({*it, PartialKind::After, nullptr, &slots->after});
  }
  return chain;
}

Value Runtime::call(ContextState& ctx, Method method, Args args) const {
  const DispatchChain chain = compose_chain(ctx, method);
  for (const ChainStage& stage : chain.befores) (*stage.hook)(args);
  DispatchCursor cursor(chain.arounds, ctx);
  Value result = cursor.proceed(args);
  // An error above skips the afters: they only observe completed calls.
  for (const ChainStage& stage : chain.afters) (*stage.hook)(args);
  return result;
}

std::vector<std::pair<std::string, PartialKind>> Runtime::partials_of(Layer layer) const {
  check_owned(layer);
  std::vector<std::pair<std::string, PartialKind>> out;
  for (const auto& info : methods_) {
    const detail::PartialSlots* slots = info->slots_for(layer.id());
    if (!slots) continue;
    if (slots->around) out.emplace_back(info->name, PartialKind::Around);
    if (slots->before) out.emplace_back(info->name, PartialKind::Before);
    if (slots->after) out.emplace_back(info->name, PartialKind::After);
  }
  return out;
}

}  // namespace layerctx
