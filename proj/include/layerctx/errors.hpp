#pragma once

#include <stdexcept>
#include <string>

namespace layerctx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Misuse of the registry: duplicate names, unknown handles, handles from a
// different runtime, duplicate partial definitions.
class RegistrationError : public Error {
 public:
  using Error::Error;
};

// Raised during a call: proceeding past the end of a chain, argument type
// mismatches surfaced by bodies.
class DispatchError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value. `field` is the dotted path of the offending
// entry (empty when the error is not tied to one field).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : "config: " + field + ": " + what),
        field_(std::move(field)) {}
  explicit ConfigError(const std::string& what) : ConfigError(std::string(), what) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace layerctx
