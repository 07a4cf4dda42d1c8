#include "permhash/big_uint.hpp"

#include <algorithm>

#include "permhash/errors.hpp"

namespace permhash {

BigUint::BigUint(std::uint64_t value) {
  while (value != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(value));
    value >>= 32;
  }
}

BigUint BigUint::from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigUint out;
  out.limbs_.assign((bytes.size() + 3) / 4, 0);
  std::size_t bit = 0;
  for (auto it = bytes.rbegin(); it != bytes.rend(); ++it, bit += 8) {
    out.limbs_[bit / 32] |= static_cast<std::uint32_t>(*it) << (bit % 32);
  }
  out.trim();
  return out;
}

BigUint BigUint::from_decimal(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorCode::kParseError, "empty integer literal");
  }
  BigUint out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kParseError,
                  "invalid digit at position " + std::to_string(i) + " in integer literal");
    }
    // out = out * 10 + digit
    std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
    for (auto& limb : out.limbs_) {
      const std::uint64_t v = static_cast<std::uint64_t>(limb) * 10 + carry;
      limb = static_cast<std::uint32_t>(v);
      carry = v >> 32;
    }
    if (carry != 0) out.limbs_.push_back(static_cast<std::uint32_t>(carry));
  }
  out.trim();
  return out;
}

std::size_t BigUint::bit_length() const noexcept {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::size_t bits = 0;
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return (limbs_.size() - 1) * 32 + bits;
}

std::uint64_t BigUint::low_u64() const noexcept {
  std::uint64_t v = 0;
  if (!limbs_.empty()) v = limbs_[0];
  if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return v;
}

std::uint64_t BigUint::divmod(std::uint64_t divisor) {
  if (divisor == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  unsigned __int128 rem = 0;
  for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
    const unsigned __int128 cur = (rem << 32) | *it;
    *it = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<std::uint64_t>(rem);
}

std::uint64_t BigUint::mod(std::uint64_t divisor) const {
  if (divisor == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  unsigned __int128 rem = 0;
  for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
    rem = ((rem << 32) | *it) % divisor;
  }
  return static_cast<std::uint64_t>(rem);
}

BigUint& BigUint::operator*=(std::uint64_t factor) {
  unsigned __int128 carry = 0;
  for (auto& limb : limbs_) {
    const unsigned __int128 v = static_cast<unsigned __int128>(limb) * factor + carry;
    limb = static_cast<std::uint32_t>(v);
    carry = v >> 32;
  }
  while (carry != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(carry));
    carry >>= 32;
  }
  trim();
  return *this;
}

BigUint& BigUint::operator<<=(std::size_t bits) {
  if (limbs_.empty() || bits == 0) return *this;
  const std::size_t whole = bits / 32;
  const unsigned part = bits % 32;
  std::vector<std::uint32_t> out(limbs_.size() + whole + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    const std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << part;
    out[i + whole] |= static_cast<std::uint32_t>(v);
    out[i + whole + 1] |= static_cast<std::uint32_t>(v >> 32);
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigUint& BigUint::operator>>=(std::size_t bits) {
  const std::size_t whole = bits / 32;
  const unsigned part = bits % 32;
  if (whole >= limbs_.size()) {
    limbs_.clear();
    return *this;
  }
  std::vector<std::uint32_t> out(limbs_.size() - whole, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t v = limbs_[i + whole];
    if (i + whole + 1 < limbs_.size()) {
      v |= static_cast<std::uint64_t>(limbs_[i + whole + 1]) << 32;
    }
    out[i] = static_cast<std::uint32_t>(v >> part);
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

std::string BigUint::to_decimal() const {
  if (is_zero()) return "0";
  BigUint tmp = *this;
  std::string out;
  constexpr std::uint64_t kChunk = 1000000000ULL;
  while (!tmp.is_zero()) {
    std::uint64_t part = tmp.divmod(kChunk);
    for (int i = 0; i < 9; ++i) {
      out.push_back(static_cast<char>('0' + part % 10));
      part /= 10;
      if (tmp.is_zero() && part == 0) break;
    }
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> BigUint::to_bytes_be(std::size_t width) const {
  const std::size_t needed = (bit_length() + 7) / 8;
  if (width == 0) width = needed;
  if (needed > width) {
    throw Error(ErrorCode::kInvalidArgument, "value does not fit in " + std::to_string(width) + " bytes");
  }
  std::vector<std::uint8_t> out(width, 0);
  for (std::size_t i = 0; i < needed; ++i) {
    out[width - 1 - i] = static_cast<std::uint8_t>(limbs_[i / 4] >> (8 * (i % 4)));
  }
  return out;
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() <=> b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return std::strong_ordering::equal;
}

void BigUint::trim() noexcept {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

}  // namespace permhash
