#include "bexp/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "bexp/error.hpp"

namespace bexp {
namespace {

unsigned bits_of(WordSize ws) { return static_cast<unsigned>(ws); }

// Calls fn(word) for every word in stream order.
template <typename Fn>
void for_each_word(std::span<const std::uint8_t> data, WordSize ws, Fn&& fn) {
  if (ws == WordSize::Byte) {
    for (std::uint8_t b : data) fn(static_cast<unsigned>(b));
    return;
  }
  for (std::uint8_t b : data) {
    for (int i = 7; i >= 0; --i) fn(static_cast<unsigned>((b >> i) & 1u));
  }
}

void require_nonempty(std::span<const std::uint8_t> data, const char* what) {
  if (data.empty()) throw DomainError(std::string(what) + " needs a non-empty input");
}

ChiSquare chi_square_unchecked(std::span<const std::uint8_t> data, WordSize ws) {
  const auto counts = symbol_counts(data, ws);
  const double expected = static_cast<double>(word_count(data, ws)) / counts.size();
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  const double df = static_cast<double>(counts.size() - 1);
  return {stat, 100.0 * chi_square_upper_tail(stat, df)};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t word_count(std::span<const std::uint8_t> data, WordSize ws) {
  return ws == WordSize::Byte ? data.size() : data.size() * 8;
}

std::vector<std::uint64_t> symbol_counts(std::span<const std::uint8_t> data, WordSize ws) {
  std::vector<std::uint64_t> counts(std::size_t{1} << bits_of(ws), 0);
  if (ws == WordSize::Byte) {
    for (std::uint8_t b : data) ++counts[b];
  } else {
    std::uint64_t ones = 0;
    for (std::uint8_t b : data) ones += static_cast<std::uint64_t>(std::popcount(b));
    counts[1] = ones;
    counts[0] = data.size() * 8 - ones;
  }
  return counts;
}

double shannon_entropy(std::span<const std::uint8_t> data, WordSize ws) {
  require_nonempty(data, "entropy");
  const auto counts = symbol_counts(data, ws);
  const double n = static_cast<double>(word_count(data, ws));
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double chi_square_upper_tail(double statistic, double degrees_of_freedom) {
  if (!(degrees_of_freedom > 0.0)) throw DomainError("chi-square needs positive degrees of freedom");
  if (!(statistic >= 0.0)) throw DomainError("chi-square statistic must be non-negative");
  return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

ChiSquare chi_square(std::span<const std::uint8_t> data, WordSize ws) {
  const std::size_t needed = 10 * (std::size_t{1} << bits_of(ws));
  if (word_count(data, ws) < needed) {
    throw DomainError("chi-square needs at least " + std::to_string(needed) + " words, got " +
                      std::to_string(word_count(data, ws)));
  }
  return chi_square_unchecked(data, ws);
}

double arithmetic_mean(std::span<const std::uint8_t> data, WordSize ws) {
  require_nonempty(data, "mean");
  const auto counts = symbol_counts(data, ws);
  std::uint64_t sum = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) sum += v * counts[v];
  return static_cast<double>(sum) / static_cast<double>(word_count(data, ws));
}

MonteCarloPi monte_carlo_pi(std::span<const std::uint8_t> data) {
  if (data.size() < 6) throw DomainError("Monte-Carlo pi needs at least 6 bytes");
  // X^2 + Y^2 < 1 with X = xi / 2^24 is xi^2 + yi^2 < 2^48, exact in integers.
  constexpr std::uint64_t radius_sq = std::uint64_t{1} << 48;
  std::uint64_t points = 0;
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i + 6 <= data.size(); i += 6) {
    const std::uint64_t xi = (std::uint64_t{data[i]} << 16) | (std::uint64_t{data[i + 1]} << 8) | data[i + 2];
    const std::uint64_t yi = (std::uint64_t{data[i + 3]} << 16) | (std::uint64_t{data[i + 4]} << 8) | data[i + 5];
    ++points;
    if (xi * xi + yi * yi < radius_sq) ++hits;
  }
  const double estimate = 4.0 * static_cast<double>(hits) / static_cast<double>(points);
  const double error = 100.0 * std::abs(estimate - std::numbers::pi) / std::numbers::pi;
  return {estimate, error, points, hits};
}

double serial_correlation(std::span<const std::uint8_t> data, WordSize ws) {
  if (word_count(data, ws) < 3) throw DomainError("serial correlation needs at least 3 words");
  // Exact integer sums; the closing pair joins the last word to the first.
  unsigned __int128 sum = 0, sum_sq = 0, sum_lag = 0;
  bool have_first = false;
  unsigned first = 0, prev = 0;
  for_each_word(data, ws, [&](unsigned w) {
    if (have_first) {
      sum_lag += static_cast<unsigned __int128>(prev) * w;
    } else {
      first = w;
      have_first = true;
    }
    sum += w;
    sum_sq += static_cast<unsigned __int128>(w) * w;
    prev = w;
  });
  sum_lag += static_cast<unsigned __int128>(prev) * first;

  const unsigned __int128 n = word_count(data, ws);
  const unsigned __int128 sum2 = sum * sum;
  const unsigned __int128 var_term = n * sum_sq - sum2;
  if (var_term == 0) throw UndefinedStatistic("serial correlation is undefined for constant input");
  const long double cov = static_cast<long double>(n * sum_lag) - static_cast<long double>(sum2);
  return static_cast<double>(cov / static_cast<long double>(var_term));
}

BatteryResult run_battery(std::span<const std::uint8_t> data) {
  if (data.size() < kMinBatteryBytes) {
    throw DomainError("battery needs at least " + std::to_string(kMinBatteryBytes) +
                      " bytes, got " + std::to_string(data.size()));
  }
  const MonteCarloPi pi = monte_carlo_pi(data);
  auto report_for = [&](WordSize ws) {
    EntReport r;
    r.word_size = ws;
    r.n_words = word_count(data, ws);
    r.entropy_per_word = shannon_entropy(data, ws);
    const ChiSquare chi = chi_square_unchecked(data, ws);
    r.chi_square_stat = chi.statistic;
    r.chi_square_pct = chi.percent;
    r.chi_square_reliable = r.n_words >= 10 * (std::uint64_t{1} << bits_of(ws));
    r.mean = arithmetic_mean(data, ws);
    r.pi_estimate = pi.estimate;
    r.pi_error_pct = pi.error_percent;
    try {
      r.serial_correlation = serial_correlation(data, ws);
    } catch (const UndefinedStatistic&) {
      r.serial_correlation.reset();
    }
    return r;
  };
  return {report_for(WordSize::Bit), report_for(WordSize::Byte)};
}

std::vector<ThresholdCheck> check_desk_thresholds(const EntReport& r) {
  std::vector<ThresholdCheck> out;
  out.push_back({"entropy", r.entropy_per_word >= 0.9999,
                 exact(r.entropy_per_word) + " >= 0.9999"});
  out.push_back({"chi_square_pct", r.chi_square_pct > 1.0 && r.chi_square_pct < 99.0,
                 fixed(r.chi_square_pct, 2) + " in (1, 99)"});
  out.push_back({"mean", std::abs(r.mean - 0.5) < 1e-3, "|" + exact(r.mean) + " - 0.5| < 0.001"});
  out.push_back({"pi_error_pct", r.pi_error_pct < 0.5, fixed(r.pi_error_pct, 4) + " < 0.5"});
  const bool serial_ok = r.serial_correlation && std::abs(*r.serial_correlation) < 1e-3;
  out.push_back({"serial_correlation", serial_ok,
                 (r.serial_correlation ? exact(*r.serial_correlation) : std::string("undefined")) +
                     " within +-0.001"});
  return out;
}

std::string format_report_text(const EntReport& r) {
  const bool bit = r.word_size == WordSize::Bit;
  std::ostringstream os;
  os << "Word size:           " << (bit ? "1 bit" : "8 bits") << '\n'
     << "Words:               " << r.n_words << '\n'
     << "Entropy:             " << fixed(r.entropy_per_word, 6) << " bits per "
     << (bit ? "bit" : "byte") << '\n'
     << "Chi-square:          " << fixed(r.chi_square_stat, 2) << " (randomly exceeded "
     << fixed(r.chi_square_pct, 2) << " % of the time"
     << (r.chi_square_reliable ? ")" : ", too few words to be reliable)") << '\n'
     << "Arithmetic mean:     " << fixed(r.mean, 4) << " (random = "
     << (bit ? "0.5" : "127.5") << ")\n"
     << "Monte Carlo pi:      " << fixed(r.pi_estimate, 9) << " (error " << fixed(r.pi_error_pct, 2)
     << " %)\n"
     << "Serial correlation:  "
     << (r.serial_correlation ? fixed(*r.serial_correlation, 6) : std::string("undefined"))
     << '\n';
  return os.str();
}

std::string format_report_machine(const EntReport& r) {
  const std::string p = r.word_size == WordSize::Bit ? "bit." : "byte.";
  std::ostringstream os;
  os << p << "word_size=" << bits_of(r.word_size) << '\n'
     << p << "n_words=" << r.n_words << '\n'
     << p << "entropy=" << exact(r.entropy_per_word) << '\n'
     << p << "chi_square=" << exact(r.chi_square_stat) << '\n'
     << p << "chi_square_pct=" << exact(r.chi_square_pct) << '\n'
     << p << "chi_square_reliable=" << (r.chi_square_reliable ? 1 : 0) << '\n'
     << p << "mean=" << exact(r.mean) << '\n'
     << p << "pi_estimate=" << exact(r.pi_estimate) << '\n'
     << p << "pi_error_pct=" << exact(r.pi_error_pct) << '\n'
     << p << "serial_correlation="
     << (r.serial_correlation ? exact(*r.serial_correlation) : std::string("undefined")) << '\n';
  return os.str();
}

}  // namespace bexp
