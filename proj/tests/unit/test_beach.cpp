#include <gtest/gtest.h>

#include <bitset>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "bexp/beach.hpp"
#include "bexp/error.hpp"
#include "bexp/map.hpp"

using namespace bexp;

namespace {

BeachConfig seeded(double seed) {
  BeachConfig c;
  c.seed = seed;
  return c;
}

std::vector<std::uint64_t> read_golden(const std::string& name) {
  std::ifstream in(std::string(BEXP_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in) << name;
  std::vector<std::uint64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(std::stoull(line, nullptr, 16));
  }
  return out;
}

}  // namespace

TEST(BeachConfig, ForbiddenSeedsHaveDistinctMessages) {
  std::set<std::string> messages;
  for (double s : {0.0, 1.0, 0.75}) {
    try {
      Beach b(seeded(s));
      ADD_FAILURE() << "seed " << s << " accepted";
    } catch (const DomainError& e) {
      messages.insert(e.what());
    }
  }
  EXPECT_EQ(messages.size(), 3u);
}

TEST(BeachConfig, RejectsOutOfRangeFields) {
  EXPECT_THROW(Beach(seeded(-0.2)), DomainError);
  EXPECT_THROW(Beach(seeded(1.5)), DomainError);
  EXPECT_THROW(Beach(seeded(std::nan(""))), DomainError);
  auto c = seeded(0.3);
  c.r = 0;
  EXPECT_THROW(Beach{c}, DomainError);
  c = seeded(0.3);
  c.blimit = 1.0;
  EXPECT_THROW(Beach{c}, DomainError);
  c = seeded(0.3);
  c.zero_trap_eps = 0.0;
  EXPECT_THROW(Beach{c}, DomainError);
  c = seeded(0.3);
  c.bits_per_block = 53;
  EXPECT_THROW(Beach{c}, DomainError);
  c.bits_per_block = 0;
  EXPECT_THROW(Beach{c}, DomainError);
}

TEST(Beach, MatchesGoldenBlocks) {
  const auto golden = read_golden("beach_seed0.3.txt");
  ASSERT_EQ(golden.size(), 64u);
  Beach g(seeded(0.3));
  for (std::size_t i = 0; i < golden.size(); ++i) EXPECT_EQ(g.next_block(), golden[i]) << i;
}

TEST(Beach, MatchesGoldenFarBlock) {
  const auto golden = read_golden("beach_seed0.3_block99999.txt");
  ASSERT_EQ(golden.size(), 1u);
  Beach g(seeded(0.3));
  for (int i = 0; i < 99999; ++i) g.next_block();
  EXPECT_EQ(g.next_block(), golden[0]);
  EXPECT_EQ(g.state().blocks_emitted, 100000u);
}

TEST(Beach, Deterministic) {
  Beach a(seeded(0.3)), b(seeded(0.3));
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_block(), b.next_block()) << i;
  EXPECT_EQ(Beach(seeded(0.3)).fill_bytes(1'000'000), Beach(seeded(0.3)).fill_bytes(1'000'000));
}

TEST(Beach, BlockFitsWidth) {
  for (unsigned width : {1u, 8u, 17u, 32u, 52u}) {
    auto c = seeded(0.41);
    c.bits_per_block = width;
    Beach g(c);
    for (int i = 0; i < 500; ++i) EXPECT_LT(g.next_block(), std::uint64_t{1} << width) << width;
  }
}

TEST(Beach, FillBitsConsumesWholeBlocks) {
  Beach a(seeded(0.3));
  const auto bits = a.fill_bits(64);
  EXPECT_EQ(bits.size(), 64u);
  EXPECT_EQ(a.state().blocks_emitted, 2u);
  Beach b(seeded(0.3));
  EXPECT_EQ(b.fill_bits(33).size(), 33u);
  EXPECT_EQ(b.state().blocks_emitted, 2u);
  for (auto v : bits) EXPECT_LE(v, 1);
}

TEST(Beach, BitsAreMostSignificantFirst) {
  Beach a(seeded(0.3)), b(seeded(0.3));
  const std::uint64_t block = a.next_block();
  const auto bits = b.fill_bits(32);
  for (int i = 0; i < 32; ++i) EXPECT_EQ(bits[i], (block >> (31 - i)) & 1u) << i;
}

TEST(Beach, PackedBytesMatchBits) {
  Beach a(seeded(0.6)), b(seeded(0.6));
  const auto bits = a.fill_bits(1001);
  const auto bytes = b.fill_bytes(1001);
  ASSERT_EQ(bytes.size(), 126u);
  for (std::size_t i = 0; i < bits.size(); ++i) EXPECT_EQ((bytes[i / 8] >> (7 - i % 8)) & 1, bits[i]) << i;
  EXPECT_EQ(bytes.back() & 0x7f, 0);
}

TEST(ZeroTrap, Examples) {
  EXPECT_EQ(zero_trap(0.5, 0.3, 1e-4), 0.5);
  EXPECT_EQ(zero_trap(1e-5, 0.3, 1e-4), 0.3);
  EXPECT_EQ(zero_trap(1.0 - 1e-5, 0.3, 1e-4), 0.3);
  EXPECT_EQ(zero_trap(0.0, 0.0, 1e-4), 1e-4);
  EXPECT_EQ(zero_trap(1e-4, 0.3, 1e-4), 1e-4);
}

TEST(Beach, StateStaysInRange) {
  for (double seed : {0.3, 0.618, 0.9142, 1e-6, 0.999999}) {
    auto c = seeded(seed);
    Beach g(c);
    for (int i = 0; i < 20000; ++i) {
      g.next_block();
      const auto& s = g.state();
      ASSERT_GE(s.x, c.zero_trap_eps) << seed << " " << i;
      ASSERT_LE(s.x, 1.0 - c.zero_trap_eps) << seed << " " << i;
      ASSERT_GE(s.y, 1.0 / c.blimit) << seed << " " << i;
      ASSERT_LT(s.y, 1.0) << seed << " " << i;
      // The next block's B = blimit * y' stays inside [1, blimit].
      const double next_y = 4.0 * s.y * (1.0 - s.y);
      ASSERT_LE(c.blimit * next_y, c.blimit);
      ASSERT_GE(std::max(1.0, c.blimit * next_y), chaos_threshold());
    }
  }
}

TEST(Beach, SeedSensitivity) {
  const std::size_t n = 10000;
  const auto a = Beach(seeded(0.3)).fill_bits(n);
  const auto b = Beach(seeded(0.3 + 1e-10)).fill_bits(n);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < n; ++i) diff += a[i] != b[i];
  EXPECT_GE(diff, n * 3 / 10);
}

TEST(Beach, EveryBitPositionIsBalanced) {
  Beach g(seeded(0.3));
  const int blocks = 100000;
  std::vector<int> ones(32, 0);
  for (int i = 0; i < blocks; ++i) {
    const std::uint64_t v = g.next_block();
    for (int k = 0; k < 32; ++k) ones[k] += (v >> k) & 1u;
  }
  for (int k = 0; k < 32; ++k) {
    const double f = static_cast<double>(ones[k]) / blocks;
    EXPECT_GE(f, 0.49) << k;
    EXPECT_LE(f, 0.51) << k;
  }
}

TEST(Beach, NoShortCycle) {
  // A coarse trap width once collapsed every seed into one short cycle.
  Beach g(seeded(0.3));
  std::unordered_set<std::uint64_t> seen;
  for (int i = 0; i < 200000; ++i) {
    g.next_block();
    std::uint64_t key;
    const double x = g.state().x;
    std::memcpy(&key, &x, sizeof key);
    ASSERT_TRUE(seen.insert(key).second) << "state x repeated at block " << i;
  }
}

TEST(Snapshot, RoundTripResumesStream) {
  auto c = seeded(0.3);
  c.bits_per_block = 24;
  Beach a(c);
  for (int i = 0; i < 777; ++i) a.next_block();
  const std::string snap = a.snapshot();
  Beach b = Beach::from_snapshot(snap);
  EXPECT_EQ(b.snapshot(), snap);
  EXPECT_EQ(b.state().blocks_emitted, 777u);
  EXPECT_EQ(b.config().bits_per_block, 24u);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_block(), b.next_block()) << i;
}

TEST(Snapshot, RejectsMalformed) {
  const std::string snap = Beach(seeded(0.3)).snapshot();
  EXPECT_THROW(Beach::from_snapshot(""), DomainError);
  EXPECT_THROW(Beach::from_snapshot("seed=0.3\n"), DomainError);
  std::string bad = snap;
  bad.replace(bad.find("r=20"), 4, "r=2x");
  EXPECT_THROW(Beach::from_snapshot(bad), DomainError);
  EXPECT_THROW(Beach::from_snapshot(snap + "garbage\n"), DomainError);
}

TEST(ParseReal, DecimalAndHex) {
  EXPECT_EQ(parse_real("0.3"), 0.3);
  EXPECT_EQ(parse_real("0x1.8p-1"), 0.75);
  EXPECT_EQ(parse_real(format_hex_real(0.1)), 0.1);
  EXPECT_THROW(parse_real(""), DomainError);
  EXPECT_THROW(parse_real("0.3abc"), DomainError);
  EXPECT_THROW(parse_real("inf"), DomainError);
  EXPECT_THROW(parse_real("1e999"), DomainError);
}
