#pragma once

namespace layerctx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace layerctx
