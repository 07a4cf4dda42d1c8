#include "permhash/hash_key.hpp"

#include <string>
#include <vector>

#include "permhash/digest.hpp"
#include "permhash/errors.hpp"

namespace permhash {

HashKey::HashKey(BigUint value, std::size_t source_bits)
    : value_(std::move(value)), source_bits_(source_bits) {
  if (source_bits_ == 0) {
    throw Error(ErrorCode::kInvalidKey, "source_bits must be positive");
  }
  if (value_.bit_length() > source_bits_) {
    throw Error(ErrorCode::kInvalidKey, "key value needs " + std::to_string(value_.bit_length()) +
                                            " bits but source width is " +
                                            std::to_string(source_bits_));
  }
}

HashKey HashKey::from_value(BigUint value) {
  const std::size_t bits = value.bit_length();
  return HashKey(std::move(value), bits == 0 ? 1 : bits);
}

BigUint HashKey::leading_bits(std::size_t bits) const {
  if (bits <= source_bits_) return value_ >> (source_bits_ - bits);
  return value_ << (bits - source_bits_);
}

HashKey derive_key(std::span<const std::uint8_t> data, std::size_t width_bits) {
  if (width_bits == 0 || width_bits % 8 != 0) {
    throw Error(ErrorCode::kWidthNotByteAligned,
                "width_bits must be a positive multiple of 8, got " + std::to_string(width_bits));
  }
  const std::size_t width_bytes = width_bits / 8;
  std::vector<std::uint8_t> stream;
  stream.reserve(width_bytes + 64);
  std::vector<std::uint8_t> input(data.begin(), data.end());
  input.push_back(0x00);
  const std::size_t prefix = input.size();
  for (std::uint32_t block = 0; stream.size() < width_bytes; ++block) {
    input.resize(prefix);
    append_u32_be(input, block);
    const Sha512Digest digest = sha512(input);
    stream.insert(stream.end(), digest.begin(), digest.end());
  }
  stream.resize(width_bytes);
  return HashKey(BigUint::from_bytes_be(stream), width_bits);
}

HashKey derive_key(std::string_view data, std::size_t width_bits) {
  return derive_key(as_bytes(data), width_bits);
}

}  // namespace permhash
