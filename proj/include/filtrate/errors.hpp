#pragma once

#include <stdexcept>
#include <string>

namespace filtrate {

/// Input outside the mathematical domain of an operation (v <= b, t <= 0, ...).
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Numerical failure: non-convergence, step underflow, no root in bracket.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what, std::string diagnostics = "")
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const { return diagnostics_; }

  private:
    std::string diagnostics_;
};

/// Configuration rejected before any computation; carries the offending key path.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& what, std::string key_path)
        : std::runtime_error(what), key_path_(std::move(key_path)) {}

    const std::string& key_path() const { return key_path_; }

  private:
    std::string key_path_;
};

}  // namespace filtrate
