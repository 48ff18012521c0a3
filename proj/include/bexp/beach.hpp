#pragma once

// BEACH: a pseudo-random bit generator that hops between B-Exponential maps.
//
// Each block runs `r` iterations of GL(B, .) under a fresh B = blimit * y,
// where y follows the logistic map 4y(1-y). The R-th iterate x is scaled by
// 2^52 and the low `bits_per_block` bits of floor(x * 2^52) are emitted.
// Iterates near 0 or 1 are replaced by the driver value (the zero-trap) and
// driver values outside [1/blimit, 1) are re-seeded from x.
//
// A Beach instance is single-owner state; it is cheap to copy and two copies
// evolve independently.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bexp {

struct BeachConfig {
  double seed = 0.0;
  unsigned r = 20;
  double blimit = 10000.0;
  double zero_trap_eps = 1e-10;
  unsigned bits_per_block = 32;

  // Throws DomainError naming the offending field (or forbidden seed).
  void validate() const;
};

struct BeachState {
  double x = 0.0;
  double y = 0.0;
  std::uint64_t blocks_emitted = 0;
};

// Returns x when it lies in [eps, 1-eps]; otherwise the driver iterate y if
// that lies in [eps, 1-eps]; otherwise eps.
double zero_trap(double x, double y, double eps);

class Beach {
 public:
  explicit Beach(const BeachConfig& config);
  Beach(const BeachConfig& config, const BeachState& state);

  const BeachConfig& config() const noexcept { return config_; }
  const BeachState& state() const noexcept { return state_; }

  // One outer iteration; the result is < 2^bits_per_block.
  std::uint64_t next_block();

  // ceil(n_bits / bits_per_block) blocks, MSB-first within each block,
  // truncated to n_bits. One byte per bit, each 0 or 1.
  std::vector<std::uint8_t> fill_bits(std::size_t n_bits);

  // Packed MSB-first bytes for n_bits bits; the final byte is zero-padded.
  std::vector<std::uint8_t> fill_bytes(std::size_t n_bits);

  // key=value lines; every real is a hexadecimal floating-point literal.
  std::string snapshot() const;
  static Beach from_snapshot(std::string_view text);

 private:
  BeachConfig config_;
  BeachState state_;
};

// Parses a decimal or hexadecimal (0x1.8p-2) floating-point literal. The
// whole string must be consumed.
double parse_real(std::string_view text);

// Exact hexadecimal rendering of a double, e.g. 0x1.3333333333333p-2.
std::string format_hex_real(double v);

}  // namespace bexp
