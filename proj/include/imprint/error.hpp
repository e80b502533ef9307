#pragma once

#include <stdexcept>
#include <string>

namespace imprint {

/// Malformed input: regex syntax, unknown symbols, bad JSON, alphabet mismatch.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource bound was hit. `cap()` names the bound.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string cap, std::size_t limit, const std::string& where = {})
      : std::runtime_error(where.empty()
                               ? "cap '" + cap + "' exceeded (limit " + std::to_string(limit) + ")"
                               : where + ": cap '" + cap + "' exceeded (limit " +
                                     std::to_string(limit) + ")"),
        cap_(std::move(cap)),
        limit_(limit) {}

  const std::string& cap() const noexcept { return cap_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::string cap_;
  std::size_t limit_;
};

}  // namespace imprint
