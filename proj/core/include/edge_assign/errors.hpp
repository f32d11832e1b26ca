#pragma once

#include <stdexcept>
#include <string>

namespace edge_assign {

// Malformed or invalid configuration; carries the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& reason)
      : std::runtime_error(key.empty() ? reason : key + ": " + reason),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// An instance outside the exhaustive-search guard, or one the oracle
// cannot solve.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A produced assignment broke one of the feasibility constraints.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace edge_assign
