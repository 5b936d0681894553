#pragma once

#include <stdexcept>
#include <string>

namespace sforge {

// Shape/degree mismatches between operands.
struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Enumeration or grid size exceeded its configured cap.
struct CapacityError : std::length_error {
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Malformed config / file input; message names the offending field.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sforge
