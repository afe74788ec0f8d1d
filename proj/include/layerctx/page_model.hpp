#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "layerctx/runtime.hpp"

namespace layerctx {

// Byte sizes of the two component tiers in their high- and low-quality
// variants. High must exceed low per tier.
struct PageBytes {
  std::int64_t first_high = 6500;
  std::int64_t first_low = 2600;
  std::int64_t second_high = 3000;
  std::int64_t second_low = 1200;
};

// Layered model of one web page: `first_level` top components, each nesting
// `second_per_first` subcomponents. Every component has a base (low-quality)
// definition plus around partials on the high_band and low_band layers, so
// the bytes served follow whichever layer is active at dispatch time.
//
// Registers its methods on the runtime at construction. Not copyable or
// movable: registered bodies capture `this`.
class PageModel {
 public:
  // When set, every component dispatch suppresses the surrounding tier and
  // activates reassign() in its place, giving per-component granularity.
  using Reassign = std::function<std::vector<Layer>()>;

  PageModel(Runtime& rt, Layer high_band, Layer low_band, int first_level,
            int second_per_first, PageBytes bytes, Reassign reassign = {});
  PageModel(const PageModel&) = delete;
  PageModel& operator=(const PageModel&) = delete;

  // Renders the page under the context's current activation state and
  // returns total bytes served.
  std::int64_t render_page(ContextState& ctx) const;

  std::int64_t page_bytes_high() const;  // closed form, all components high
  std::int64_t page_bytes_low() const;

  Layer high_band() const { return high_; }
  Layer low_band() const { return low_; }
  const std::vector<Method>& first_level_methods() const { return first_; }

 private:
  std::int64_t dispatch_component(ContextState& ctx, Method m) const;

  Runtime* rt_;
  Layer high_;
  Layer low_;
  int first_level_;
  int second_per_first_;
  PageBytes bytes_;
  Reassign reassign_;
  std::vector<Method> first_;
  std::vector<std::vector<Method>> second_;
};

}  // namespace layerctx
