#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace layerctx {

class Runtime;

struct LayerId {
  std::uint32_t value = 0;
  friend bool operator==(LayerId, LayerId) = default;
  friend auto operator<=>(LayerId, LayerId) = default;
};

using Metadata = std::map<std::string, std::string>;

namespace detail {
struct LayerInfo {
  LayerId id;
  std::string name;
  Metadata metadata;
  const Runtime* owner = nullptr;
};
}  // namespace detail

// First-class handle to a registered layer. Cheap to copy and compare; valid
// for the lifetime of the owning runtime. Default-constructed handles are
// null and only usable for comparison.
class Layer {
 public:
  Layer() = default;

  LayerId id() const { return info_->id; }
  const std::string& name() const { return info_->name; }
  const Metadata& metadata() const { return info_->metadata; }
  const Runtime& owner() const { return *info_->owner; }

  explicit operator bool() const { return info_ != nullptr; }
  friend bool operator==(Layer a, Layer b) { return a.info_ == b.info_; }

 private:
  friend class Runtime;
  friend struct std::hash<Layer>;
  explicit Layer(const detail::LayerInfo* info) : info_(info) {}
  const detail::LayerInfo* info_ = nullptr;
};

}  // namespace layerctx

template <>
struct std::hash<layerctx::Layer> {
  std::size_t operator()(layerctx::Layer l) const noexcept {
    return std::hash<const void*>()(l.info_);
  }
};
