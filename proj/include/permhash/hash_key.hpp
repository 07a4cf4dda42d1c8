#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "permhash/big_uint.hpp"

namespace permhash {

// A key together with the bit width of the entropy source that produced it.
// Invariant: value < 2^source_bits, source_bits >= 1.
class HashKey {
 public:
  HashKey(BigUint value, std::size_t source_bits);

  // Key whose declared width is the value's own bit length (at least 1).
  static HashKey from_value(BigUint value);
  static HashKey from_u64(std::uint64_t value) { return from_value(BigUint(value)); }

  const BigUint& value() const noexcept { return value_; }
  std::size_t source_bits() const noexcept { return source_bits_; }

  // The leading `bits` bits of the key read as a `source_bits`-wide
  // big-endian string. Zero-extends on the right when the key is narrower.
  BigUint leading_bits(std::size_t bits) const;

 private:
  BigUint value_;
  std::size_t source_bits_;
};

// Block i is SHA-512(data || 0x00 || i as 4-byte big-endian); blocks are
// concatenated and the leading width_bits bits form the key.
// Throws kWidthNotByteAligned unless width_bits is a positive multiple of 8.
HashKey derive_key(std::span<const std::uint8_t> data, std::size_t width_bits);
HashKey derive_key(std::string_view data, std::size_t width_bits);

}  // namespace permhash
