#pragma once

#include <stdexcept>
#include <string>

namespace pgl2 {

// Bad input: wrong modulus, singular matrix, malformed expression, ...
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// The requested answer is not determined at the available precision.
// Callers are expected to rerun the pipeline with a higher relative
// precision; silently guessing is never allowed.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pgl2
