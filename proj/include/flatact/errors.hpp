#pragma once

#include <stdexcept>
#include <string>

namespace flatact {

/// A configured resource bound (group order, coset count, search nodes) was exceeded.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input: the data cannot be interpreted, as opposed to a valid object
/// that fails a mathematical check.
class MalformedInput : public std::invalid_argument {
 public:
  explicit MalformedInput(const std::string& what, std::string location = {})
      : std::invalid_argument(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace flatact
