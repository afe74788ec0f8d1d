#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

namespace layerctx {

// Dynamically typed value passed through layered-method dispatch.
using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

// Arguments view handed to method bodies. Non-owning; valid for the call.
using Args = std::span<const Value>;

inline std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v); }
inline double as_double(const Value& v) { return std::get<double>(v); }
inline bool as_bool(const Value& v) { return std::get<bool>(v); }
inline const std::string& as_string(const Value& v) { return std::get<std::string>(v); }
inline bool is_nothing(const Value& v) { return std::holds_alternative<std::monostate>(v); }

}  // namespace layerctx
