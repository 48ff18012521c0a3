#pragma once

// Bitstream file formats. A bitstream is a sequence of 0/1 values; all three
// encodings describe it in the same reading order.
//
//   raw      packed bytes, most significant bit first, last byte zero-padded
//   ascii01  one '0'/'1' per bit, newline after every 80 bits and at the end
//   u32      one unsigned 32-bit decimal per line (bit count must divide by 32)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bexp {

enum class OutputFormat { Raw, Ascii01, U32 };

OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);

inline constexpr std::size_t kAsciiLineWidth = 80;

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits);

std::string encode_bits(std::span<const std::uint8_t> bits, OutputFormat format);

// For raw input the bit count is 8 * size unless `n_bits` trims the padding.
std::vector<std::uint8_t> decode_bits(std::string_view text, OutputFormat format,
                                      std::optional<std::size_t> n_bits = std::nullopt);

}  // namespace bexp
