#pragma once

#include <stdexcept>
#include <string>

namespace mlnet {

// Input violates a model invariant (bad K, probability out of range,
// non-tree where a tree is required, ...). CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Instance is too large for an exhaustive method. CLI exit code 3.
class SizeCapError : public std::length_error {
 public:
  explicit SizeCapError(const std::string& what) : std::length_error(what) {}
};

}  // namespace mlnet
