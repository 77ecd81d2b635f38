#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frobpow {

/// Parameters that violate a documented precondition (bad prime, e not
/// dividing q - 1, ...). The CLI maps this to exit code 2.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured size cap. Exit code 3.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what + " (required " + std::to_string(required) + ", cap " +
                           std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

}  // namespace frobpow
