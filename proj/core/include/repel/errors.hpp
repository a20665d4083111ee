#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repel {

/// Requested operation needs spectral data the model does not have
/// (e.g. eigenfunction evaluation on a hyperbolic surface).
class UnsupportedModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration would exceed a configured hard cap.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::size_t cap)
      : std::runtime_error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace repel
