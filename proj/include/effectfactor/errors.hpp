#pragma once

#include <stdexcept>
#include <string>

namespace efx {

/// A requested carrier, term enumeration, or round of work exceeds its cap.
class InstanceTooLarge : public std::runtime_error {
public:
  explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed run configuration (unknown preset, ill-typed table, bad field).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A membership assertion of the factored monad failed: the induced
/// structure left the reachable set, falsifying the construction at
/// this instance. Carries the offending element for the report.
class FactorizationViolation : public std::runtime_error {
public:
  explicit FactorizationViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace efx
