#pragma once

#include <cstdint>
#include <compare>

namespace padicprob {

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// A prime number below 2^64, checked at construction.
class Prime {
 public:
  /// Throws Error(InvalidArgument) when `value` is not prime.
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  operator std::uint64_t() const noexcept { return value_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(Prime a, Prime b) noexcept { return a.value_ == b.value_; }
  friend auto operator<=>(Prime a, Prime b) noexcept { return a.value_ <=> b.value_; }

 private:
  std::uint64_t value_;
};

}  // namespace padicprob
