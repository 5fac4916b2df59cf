#pragma once

#include <stdexcept>
#include <string>

namespace bcint {

// Exit-code classes used by the CLI: schema 2, math precondition 3, precision 4.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

class MathError : public std::runtime_error {
 public:
  MathError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error("PrecisionExhausted: " + what) {}
};

}  // namespace bcint
