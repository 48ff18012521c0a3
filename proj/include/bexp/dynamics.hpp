#pragma once

// Numerical dynamics of the B-Exponential family: orbits, Lyapunov exponents,
// Schwarzian derivatives, bifurcation scans, k-th return maps and symbolic
// transition coverage.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "bexp/map.hpp"

namespace bexp {

enum class MapKind { GL, Numerator, Tent };

MapKind parse_map_kind(std::string_view name);
std::string_view to_string(MapKind kind);

inline constexpr std::size_t kDefaultTransient = 1000;
inline constexpr std::size_t kDefaultKeep = 200;
inline constexpr std::size_t kDefaultLyapunovIterations = 10000;

// One iteration of the selected map on the real line. Returns nullopt when the
// image leaves [0,1] beyond rounding slack or is not finite; values within the
// slack are clamped.
std::optional<double> try_step(MapKind kind, const MapParam& p, double x);

struct OrbitSample {
  MapKind map;
  double b;
  double x0;
  std::size_t transient;
  std::vector<double> values;
};

OrbitSample orbit(MapKind map, double b, double x0, std::size_t length, std::size_t transient);

struct LyapunovEstimate {
  double b;
  double lambda;            // nats per iteration
  std::size_t iterations;   // terms requested
  std::size_t transient;
  std::size_t skipped;      // terms dropped at the critical point
};

// Mean of ln|GL'(x_t)| along a post-transient orbit of GL.
LyapunovEstimate lyapunov(double b, double x0, std::size_t iterations = kDefaultLyapunovIterations,
                          std::size_t transient = kDefaultTransient);

// f'''/f' - (3/2)(f''/f')^2 for GL(B, .) at x.
double schwarzian(double b, double x);

struct BifurcationPoint {
  double b;
  // Empty when the orbit escaped [0,1] before or during sampling.
  std::vector<double> attractor_samples;
  bool escaped = false;
};

struct ScanOptions {
  MapKind map = MapKind::GL;
  std::size_t transient = kDefaultTransient;
  std::size_t keep = kDefaultKeep;
  double x0 = 0.3;
};

std::vector<BifurcationPoint> bifurcation_scan(double b_start, double b_end, std::size_t b_steps,
                                               const ScanOptions& options = {});

// Number of distinct sample values after rounding to `resolution`.
std::size_t distinct_rounded(const std::vector<double>& samples, double resolution = 1e-3);

// max - min of the samples, 0 for an empty set.
double sample_spread(const std::vector<double>& samples);

// A point whose post-transient samples round to at most this many distinct
// values is treated as a periodic window (or no attractor at all).
inline constexpr std::size_t kCollapseDistinctLimit = 16;

bool is_collapsed(const BifurcationPoint& point);

// First grid parameter at which the scan escapes after having held a bounded
// orbit at the previous grid point; nullopt if no such transition exists.
std::optional<double> locate_escape_onset(const std::vector<BifurcationPoint>& scan);

struct ReturnPair {
  double x;
  double x_after_k;
  std::size_t k;
};

std::vector<ReturnPair> return_map(double b, double x0, std::size_t k, std::size_t count,
                                   std::size_t transient = kDefaultTransient);

// symbol 0 for x < 0.5, symbol 1 for x >= 0.5.
inline int symbol_of(double x) { return x < 0.5 ? 0 : 1; }

// present[from][to] is true when the transition from -> to occurs.
using TransitionMatrix = std::array<std::array<bool, 2>, 2>;

TransitionMatrix symbolic_transitions(double b, double x0, std::size_t length);

}  // namespace bexp
