#include "layerctx/page_model.hpp"

#include <string>

namespace layerctx {

PageModel::PageModel(Runtime& rt, Layer high_band, Layer low_band, int first_level,
                     int second_per_first, PageBytes bytes, Reassign reassign)
    : rt_(&rt),
      high_(high_band),
      low_(low_band),
      first_level_(first_level),
      second_per_first_(second_per_first),
      bytes_(bytes),
      reassign_(std::move(reassign)) {
  if (first_level <= 0 || second_per_first <= 0)
    throw Error("page model needs at least one component per tier");
  if (bytes.first_high <= bytes.first_low || bytes.second_high <= bytes.second_low)
    throw Error("page model high variant must be larger than low variant");
  rt.check_owned(high_band);
  rt.check_owned(low_band);

  auto leaf_body = [](std::int64_t n) {
    return BaseFn([n](Args) -> Value { return n; });
  };
  auto leaf_around = [](std::int64_t n) {
    return AroundFn([n](DispatchCursor&, Args) -> Value { return n; });
  };

  second_.resize(first_level);
  for (int i = 0; i < first_level; ++i) {
    for (int j = 0; j < second_per_first; ++j) {
      const std::string name =
          "page.c" + std::to_string(i + 1) + ".s" + std::to_string(j + 1) + ".render";
      Method m = rt.register_method(name, leaf_body(bytes.second_low));
      rt.add_around(m, high_, leaf_around(bytes.second_high));
      rt.add_around(m, low_, leaf_around(bytes.second_low));
      second_[i].push_back(m);
    }
  }

  // First-level bodies contribute their own bytes and dispatch each nested
  // subcomponent through the runtime, so the active layers decide its tier.
  auto first_body = [this](int i, std::int64_t own) {
    return AroundFn([this, i, own](DispatchCursor& cur, Args) -> Value {
      std::int64_t total = own;
      for (Method sub : second_[i]) total += dispatch_component(cur.context(), sub);
      return total;
    });
  };
  for (int i = 0; i < first_level; ++i) {
    const std::string name = "page.c" + std::to_string(i + 1) + ".render";
    Method m = rt.register_method(name, first_body(i, bytes.first_low));
    rt.add_around(m, high_, first_body(i, bytes.first_high));
    rt.add_around(m, low_, first_body(i, bytes.first_low));
    first_.push_back(m);
  }
}

std::int64_t PageModel::dispatch_component(ContextState& ctx, Method m) const {
  if (reassign_) {
    // A reassignment replaces the tier for this component's extent; the
    // enclosing component's tier is suppressed, never stacked against.
    const std::vector<Layer> layers = reassign_();
    const Layer tiers[] = {high_, low_};
    return ctx.without_layers(std::span<const Layer>(tiers), [&] {
      return ctx.with_layers(std::span<const Layer>(layers),
                             [&] { return as_int(rt_->call(ctx, m)); });
    });
  }
  return as_int(rt_->call(ctx, m));
}

std::int64_t PageModel::render_page(ContextState& ctx) const {
  std::int64_t total = 0;
  for (Method m : first_) total += dispatch_component(ctx, m);
  return total;
}

std::int64_t PageModel::page_bytes_high() const {
  return static_cast<std::int64_t>(first_level_) *
         (bytes_.first_high + static_cast<std::int64_t>(second_per_first_) * bytes_.second_high);
}

std::int64_t PageModel::page_bytes_low() const {
  return static_cast<std::int64_t>(first_level_) *
         (bytes_.first_low + static_cast<std::int64_t>(second_per_first_) * bytes_.second_low);
}

}  // namespace layerctx
