#pragma once

#include <stdexcept>
#include <string>

namespace mevgame {

// Invalid pool, market or trader parameters are reported as std::domain_error.

/// Raised when an evaluation produces a non-finite value or an iterative
/// routine cannot satisfy its contract.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed sweep specifications. `field()` holds the path of the
/// offending field, e.g. "/alpha/steps".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace mevgame
