#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace permhash {

using Sha512Digest = std::array<std::uint8_t, 64>;

Sha512Digest sha512(std::span<const std::uint8_t> data);

// Appends `value` as 4 big-endian bytes.
void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t value);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace permhash
