#include "bexp/formats.hpp"

#include <charconv>
#include <string>

#include "bexp/error.hpp"

namespace bexp {

OutputFormat parse_format(std::string_view name) {
  if (name == "raw") return OutputFormat::Raw;
  if (name == "ascii01") return OutputFormat::Ascii01;
  if (name == "u32") return OutputFormat::U32;
  throw DomainError("unknown format '" + std::string(name) + "' (expected raw, ascii01 or u32)");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Raw: return "raw";
    case OutputFormat::Ascii01: return "ascii01";
    case OutputFormat::U32: return "u32";
  }
  return "?";
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return bytes;
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits) {
  if (n_bits > bytes.size() * 8) throw DomainError("bit count exceeds the packed buffer");
  std::vector<std::uint8_t> bits(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return bits;
}

std::string encode_bits(std::span<const std::uint8_t> bits, OutputFormat format) {
  std::string out;
  switch (format) {
    case OutputFormat::Raw: {
      const auto bytes = pack_bits(bits);
      out.assign(bytes.begin(), bytes.end());
      break;
    }
    case OutputFormat::Ascii01:
      out.reserve(bits.size() + bits.size() / kAsciiLineWidth + 1);
      for (std::size_t i = 0; i < bits.size(); ++i) {
        out.push_back(bits[i] ? '1' : '0');
        if ((i + 1) % kAsciiLineWidth == 0) out.push_back('\n');
      }
      if (bits.size() % kAsciiLineWidth != 0) out.push_back('\n');
      break;
    case OutputFormat::U32:
      if (bits.size() % 32 != 0) {
        throw DomainError("u32 format needs a bit count divisible by 32, got " +
                          std::to_string(bits.size()));
      }
      for (std::size_t i = 0; i < bits.size(); i += 32) {
        std::uint32_t w = 0;
        for (std::size_t j = 0; j < 32; ++j) w = (w << 1) | (bits[i + j] & 1u);
        out += std::to_string(w);
        out.push_back('\n');
      }
      break;
  }
  return out;
}

std::vector<std::uint8_t> decode_bits(std::string_view text, OutputFormat format,
                                      std::optional<std::size_t> n_bits) {
  std::vector<std::uint8_t> bits;
  switch (format) {
    case OutputFormat::Raw: {
      const auto* p = reinterpret_cast<const std::uint8_t*>(text.data());
      bits = unpack_bits({p, text.size()}, n_bits.value_or(text.size() * 8));
      return bits;
    }
    case OutputFormat::Ascii01:
      bits.reserve(text.size());
      for (char c : text) {
        if (c == '0' || c == '1') {
          bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (c != '\n' && c != '\r') {
          throw DomainError("ascii01 input contains a character other than 0, 1 or newline");
        }
      }
      break;
    case OutputFormat::U32: {
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        if (line.empty()) continue;
        std::uint32_t w = 0;
        const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), w);
        if (ec != std::errc{} || end != line.data() + line.size()) {
          throw DomainError("u32 input line is not an unsigned 32-bit integer: '" +
                            std::string(line) + "'");
        }
        for (int j = 31; j >= 0; --j) bits.push_back(static_cast<std::uint8_t>((w >> j) & 1u));
      }
      break;
    }
  }
  if (n_bits) {
    if (*n_bits > bits.size()) throw DomainError("input holds fewer bits than requested");
    bits.resize(*n_bits);
  }
  return bits;
}

}  // namespace bexp
