#include "bexp/beach.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "bexp/error.hpp"
#include "bexp/map.hpp"

namespace bexp {
namespace {

constexpr double kTwoPow52 = 4503599627370496.0;

}  // namespace

void BeachConfig::validate() const {
  if (seed == 0.0) throw DomainError("seed 0 is forbidden: 0 is a fixed point of every map");
  if (seed == 1.0) throw DomainError("seed 1 is forbidden: it maps onto the fixed point 0");
  if (seed == 0.75) {
    throw DomainError("seed 0.75 is forbidden: it is a fixed point of the logistic driver");
  }
  if (!(seed > 0.0 && seed < 1.0)) {
    throw DomainError("seed must lie strictly inside (0,1), got " + std::to_string(seed));
  }
  if (r < 1) throw DomainError("r (inner iterations) must be >= 1");
  if (!(blimit > 1.0) || !std::isfinite(blimit)) {
    throw DomainError("blimit must be a finite value > 1, got " + std::to_string(blimit));
  }
  if (!(zero_trap_eps > 0.0 && zero_trap_eps < 0.5)) {
    throw DomainError("zero_trap_eps must lie in (0, 0.5), got " + std::to_string(zero_trap_eps));
  }
  if (bits_per_block < 1 || bits_per_block > 52) {
    throw DomainError("bits_per_block must lie in 1..52, got " + std::to_string(bits_per_block));
  }
}

double zero_trap(double x, double y, double eps) {
  if (x >= eps && x <= 1.0 - eps) return x;
  if (y >= eps && y <= 1.0 - eps) return y;
  return eps;
}

Beach::Beach(const BeachConfig& config) : Beach(config, BeachState{config.seed, config.seed, 0}) {}

Beach::Beach(const BeachConfig& config, const BeachState& state) : config_(config), state_(state) {
  config_.validate();
  if (!(state_.x > 0.0 && state_.x < 1.0) || !(state_.y > 0.0 && state_.y < 1.0)) {
    throw DomainError("generator state x and y must lie strictly inside (0,1)");
  }
}

std::uint64_t Beach::next_block() {
  const double floor_y = 1.0 / config_.blimit;
  double x = state_.x;
  double y = 4.0 * state_.y * (1.0 - state_.y);

  // The driver trap below runs after the inner loop, so y can briefly sit
  // under 1/blimit here; B is held at 1 for that block.
  const MapParam p(std::max(1.0, config_.blimit * y));
  for (unsigned j = 0; j < config_.r; ++j) {
    x = zero_trap(gl(p, UnitInterval(x)), y, config_.zero_trap_eps);
  }
  const auto scaled = static_cast<std::uint64_t>(std::floor(x * kTwoPow52));

  if (y <= floor_y || y >= 1.0) y = (x >= floor_y && x < 1.0) ? x : floor_y;

  state_.x = x;
  state_.y = y;
  ++state_.blocks_emitted;
  const std::uint64_t mask = (std::uint64_t{1} << config_.bits_per_block) - 1;
  return scaled & mask;
}

std::vector<std::uint8_t> Beach::fill_bits(std::size_t n_bits) {
  std::vector<std::uint8_t> bits;
  bits.reserve(n_bits);
  const unsigned width = config_.bits_per_block;
  while (bits.size() < n_bits) {
    const std::uint64_t block = next_block();
    for (unsigned i = 0; i < width && bits.size() < n_bits; ++i) {
      bits.push_back(static_cast<std::uint8_t>((block >> (width - 1 - i)) & 1u));
    }
  }
  return bits;
}

std::vector<std::uint8_t> Beach::fill_bytes(std::size_t n_bits) {
  std::vector<std::uint8_t> bytes((n_bits + 7) / 8, 0);
  const unsigned width = config_.bits_per_block;
  std::size_t pos = 0;
  while (pos < n_bits) {
    const std::uint64_t block = next_block();
    for (unsigned i = 0; i < width && pos < n_bits; ++i, ++pos) {
      if ((block >> (width - 1 - i)) & 1u) bytes[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
    }
  }
  return bytes;
}

std::string format_hex_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_real(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw DomainError("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw DomainError("not a finite decimal or hexadecimal floating-point literal: '" + s + "'");
  }
  return v;
}

std::string Beach::snapshot() const {
  std::ostringstream os;
  os << "seed=" << format_hex_real(config_.seed) << '\n'
     << "r=" << config_.r << '\n'
     << "blimit=" << format_hex_real(config_.blimit) << '\n'
     << "eps=" << format_hex_real(config_.zero_trap_eps) << '\n'
     << "bits_per_block=" << config_.bits_per_block << '\n'
     << "x=" << format_hex_real(state_.x) << '\n'
     << "y=" << format_hex_real(state_.y) << '\n'
     << "blocks_emitted=" << state_.blocks_emitted << '\n';
  return os.str();
}

Beach Beach::from_snapshot(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("snapshot line without '=': " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto field = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw DomainError(std::string("snapshot is missing '") + key + "'");
    return it->second;
  };
  auto count = [&](const char* key) -> std::uint64_t {
    const std::string& s = field(key);
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError(std::string("bad integer for ") + key);
    return v;
  };

  BeachConfig config;
  config.seed = parse_real(field("seed"));
  config.r = static_cast<unsigned>(count("r"));
  config.blimit = parse_real(field("blimit"));
  config.zero_trap_eps = parse_real(field("eps"));
  config.bits_per_block = static_cast<unsigned>(count("bits_per_block"));
  BeachState state{parse_real(field("x")), parse_real(field("y")), count("blocks_emitted")};
  return Beach(config, state);
}

}  // namespace bexp
