#include "permhash/hash_key.hpp"

#include <gtest/gtest.h>

#include "permhash/errors.hpp"

namespace permhash {
namespace {

std::string hex(const BigUint& v, std::size_t bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : v.to_bytes_be(bytes)) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

// Golden vectors computed with Python's hashlib.
TEST(DeriveKey, EmptyInput512) {
  const HashKey key = derive_key("", 512);
  EXPECT_EQ(key.source_bits(), 512u);
  EXPECT_EQ(hex(key.value(), 64),
            "65faa9d920e0e9cff43fc3f30ab02ba2e8cf6f4643b58f7c1e64583fbec8a268"
            "e677b0ec4d54406e748becb53fda210f5d4f39cf2a5014b1ca496b0805182649");
}

TEST(DeriveKey, Abc1024ConcatenatesTwoBlocks) {
  const HashKey key = derive_key("abc", 1024);
  EXPECT_EQ(hex(key.value(), 128),
            "be2c90e5d0664ec8214996eeec5c1af2ec684c93b27bc0629574062d7bbf456a"
            "9ac9b33c41a7eafe9cf4f7c6d82f2b882ff94282323b6b05b63bfaa60b4fde2f"
            "de6719daaf57c832860857732de55aae7ac936bfcd955753bcf17e457921fdad"
            "808536fc3e4cf4ce64145ebf871f7cfa86acb421538677920da07f694203c4ff");
}

TEST(DeriveKey, TruncationKeepsLeadingBits) {
  EXPECT_EQ(derive_key("abc", 8).value(), BigUint(0xbe));
  EXPECT_EQ(derive_key("abc", 32).value(), derive_key("abc", 1024).leading_bits(32));
}

TEST(DeriveKey, Deterministic) {
  EXPECT_EQ(derive_key("key-1", 512).value(), derive_key("key-1", 512).value());
  EXPECT_NE(derive_key("key-1", 512).value(), derive_key("key-2", 512).value());
}

TEST(DeriveKey, RejectsUnalignedWidth) {
  try {
    derive_key("x", 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWidthNotByteAligned);
  }
  EXPECT_THROW(derive_key("x", 0), Error);
}

TEST(HashKey, EnforcesWidth) {
  EXPECT_THROW(HashKey(BigUint(8), 3), Error);
  EXPECT_NO_THROW(HashKey(BigUint(7), 3));
  EXPECT_THROW(HashKey(BigUint(0), 0), Error);
  EXPECT_EQ(HashKey::from_u64(0).source_bits(), 1u);
  EXPECT_EQ(HashKey::from_u64(4).source_bits(), 3u);
}

TEST(HashKey, LeadingBits) {
  const HashKey key(BigUint(0b1011), 4);
  EXPECT_EQ(key.leading_bits(2), BigUint(0b10));
  EXPECT_EQ(key.leading_bits(4), BigUint(0b1011));
  EXPECT_EQ(key.leading_bits(6), BigUint(0b101100));
}

}  // namespace
}  // namespace permhash
