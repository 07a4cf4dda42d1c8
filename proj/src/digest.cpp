#include "permhash/digest.hpp"

#include <openssl/sha.h>

namespace permhash {

Sha512Digest sha512(std::span<const std::uint8_t> data) {
  Sha512Digest out{};
  SHA512(data.data(), data.size(), out.data());
  return out;
}

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t value) {
  out.push_back(static_cast<std::uint8_t>(value >> 24));
  out.push_back(static_cast<std::uint8_t>(value >> 16));
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value));
}

}  // namespace permhash
