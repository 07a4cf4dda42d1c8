#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permhash {

// Arbitrary-precision non-negative integer. Limbs are 32-bit, least
// significant first, with no leading zero limbs (zero is the empty vector).
//
// Only the arithmetic the hash engine needs is provided: division by a
// machine word (the mixed-radix digit extraction), shifts, comparison and
// conversions.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t value);

  static BigUint from_bytes_be(std::span<const std::uint8_t> bytes);
  // Throws Error(kParseError) on anything but [0-9]+.
  static BigUint from_decimal(std::string_view text);

  bool is_zero() const noexcept { return limbs_.empty(); }
  std::size_t bit_length() const noexcept;
  bool fits_u64() const noexcept { return limbs_.size() <= 2; }
  // Low 64 bits.
  std::uint64_t low_u64() const noexcept;

  // this /= divisor; returns the remainder. divisor must be non-zero.
  std::uint64_t divmod(std::uint64_t divisor);
  // Remainder without modifying the value.
  std::uint64_t mod(std::uint64_t divisor) const;

  BigUint& operator*=(std::uint64_t factor);
  BigUint& operator<<=(std::size_t bits);
  BigUint& operator>>=(std::size_t bits);
  friend BigUint operator<<(BigUint v, std::size_t bits) { return v <<= bits; }
  friend BigUint operator>>(BigUint v, std::size_t bits) { return v >>= bits; }

  std::string to_decimal() const;
  // Big-endian bytes, left-padded to `width` bytes (or minimal length when
  // width is 0). Throws kInvalidArgument when the value does not fit.
  std::vector<std::uint8_t> to_bytes_be(std::size_t width = 0) const;

  friend bool operator==(const BigUint&, const BigUint&) = default;
  friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

 private:
  void trim() noexcept;

  std::vector<std::uint32_t> limbs_;
};

}  // namespace permhash
