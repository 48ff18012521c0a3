#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "bexp/error.hpp"
#include "bexp/formats.hpp"

using namespace bexp;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
  return bits;
}

}  // namespace

TEST(Formats, NamesRoundTrip) {
  for (auto f : {OutputFormat::Raw, OutputFormat::Ascii01, OutputFormat::U32}) {
    EXPECT_EQ(parse_format(to_string(f)), f);
  }
  EXPECT_THROW(parse_format("hex"), DomainError);
}

TEST(Formats, PackIsMsbFirst) {
  const std::vector<std::uint8_t> bits{1, 0, 1, 1, 0, 0, 0, 0, 1};
  const auto bytes = pack_bits(bits);
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], 0xB0);
  EXPECT_EQ(bytes[1], 0x80);
  EXPECT_EQ(unpack_bits(bytes, 9), bits);
}

TEST(Formats, AsciiLineBreaks) {
  const auto text80 = encode_bits(random_bits(80, 1), OutputFormat::Ascii01);
  EXPECT_EQ(text80.size(), 81u);
  EXPECT_EQ(text80.back(), '\n');
  const auto text81 = encode_bits(random_bits(81, 1), OutputFormat::Ascii01);
  EXPECT_EQ(text81.size(), 83u);
  EXPECT_EQ(text81[80], '\n');
  EXPECT_EQ(text81.back(), '\n');
}

TEST(Formats, U32NeedsWholeWords) {
  EXPECT_THROW(encode_bits(random_bits(33, 2), OutputFormat::U32), DomainError);
  std::vector<std::uint8_t> bits(32, 0);
  bits[0] = 1;
  bits[31] = 1;
  EXPECT_EQ(encode_bits(bits, OutputFormat::U32), "2147483649\n");
}

TEST(Formats, RoundTripAllFormats) {
  for (std::size_t n : {0u, 1u, 7u, 8u, 31u, 32u, 79u, 80u, 81u, 640u, 4096u, 10001u}) {
    const auto bits = random_bits(n, n);
    for (auto f : {OutputFormat::Raw, OutputFormat::Ascii01, OutputFormat::U32}) {
      if (f == OutputFormat::U32 && n % 32 != 0) continue;
      const auto text = encode_bits(bits, f);
      EXPECT_EQ(decode_bits(text, f, n), bits) << to_string(f) << " " << n;
    }
  }
}

TEST(Formats, DecodeRejectsGarbage) {
  EXPECT_THROW(decode_bits("0102\n", OutputFormat::Ascii01), DomainError);
  EXPECT_THROW(decode_bits("12x\n", OutputFormat::U32), DomainError);
  EXPECT_THROW(decode_bits("4294967296\n", OutputFormat::U32), DomainError);
  EXPECT_THROW(decode_bits("ab", OutputFormat::Raw, 17), DomainError);
}
