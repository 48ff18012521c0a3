#pragma once

// ENT-style randomness battery: Shannon entropy, chi-square with exceedance
// percentage, arithmetic mean, Monte-Carlo pi and lag-1 serial correlation.
// Inputs are byte buffers viewed either as bits (MSB first) or as bytes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bexp {

enum class WordSize : unsigned { Bit = 1, Byte = 8 };

// Number of words the buffer holds at the given word size.
std::size_t word_count(std::span<const std::uint8_t> data, WordSize ws);

// Occurrence count of each symbol (2 entries for bits, 256 for bytes).
std::vector<std::uint64_t> symbol_counts(std::span<const std::uint8_t> data, WordSize ws);

double shannon_entropy(std::span<const std::uint8_t> data, WordSize ws);

struct ChiSquare {
  double statistic;
  double percent;  // P(chi2_{k-1} > statistic) * 100
};

// Requires at least 10 * 2^word_size words.
ChiSquare chi_square(std::span<const std::uint8_t> data, WordSize ws);

// Upper tail of the chi-square distribution, as a probability in [0,1].
double chi_square_upper_tail(double statistic, double degrees_of_freedom);

double arithmetic_mean(std::span<const std::uint8_t> data, WordSize ws);

struct MonteCarloPi {
  double estimate;
  double error_percent;
  std::uint64_t points;
  std::uint64_t hits;
};

// Non-overlapping 6-byte groups: 24-bit X then 24-bit Y, each scaled by
// 2^-24; a point hits when X^2 + Y^2 < 1. Trailing bytes are ignored.
MonteCarloPi monte_carlo_pi(std::span<const std::uint8_t> data);

// Circular lag-1 Pearson correlation. Throws UndefinedStatistic for constant
// input.
double serial_correlation(std::span<const std::uint8_t> data, WordSize ws);

struct EntReport {
  WordSize word_size = WordSize::Bit;
  std::uint64_t n_words = 0;
  double entropy_per_word = 0.0;
  double chi_square_stat = 0.0;
  double chi_square_pct = 0.0;
  // False when the input is below 10 * 2^word_size words; the statistic is
  // still reported.
  bool chi_square_reliable = true;
  double mean = 0.0;
  double pi_estimate = 0.0;
  double pi_error_pct = 0.0;
  // nullopt for constant input.
  std::optional<double> serial_correlation;
};

inline constexpr std::size_t kMinBatteryBytes = 1000;

struct BatteryResult {
  EntReport bits;
  EntReport bytes;
};

BatteryResult run_battery(std::span<const std::uint8_t> data);

struct ThresholdCheck {
  std::string name;
  bool passed;
  std::string detail;
};

// Desk-scale acceptance thresholds applied to the 1-bit report:
// entropy >= 0.9999, chi-square % in (1, 99), |mean - 0.5| < 0.001,
// Monte-Carlo pi error < 0.5 %, |serial correlation| < 1e-3.
std::vector<ThresholdCheck> check_desk_thresholds(const EntReport& bit_report);

// Human-readable layout modelled on ENT's output.
std::string format_report_text(const EntReport& report);
// One `prefix.metric=value` line per field.
std::string format_report_machine(const EntReport& report);

}  // namespace bexp
