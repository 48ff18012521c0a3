#include "bexp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "bexp/error.hpp"

namespace bexp {
namespace {

// ln|f'| is undefined at the critical point; smaller magnitudes are skipped.
constexpr double kCriticalDerivative = 1e-300;
// Schwarzian is only evaluated where |f'| exceeds this.
constexpr double kSchwarzianMinSlope = 1e-8;

void require_open_unit(double x0, const char* name) {
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw DomainError(std::string(name) + " must lie strictly inside (0,1), got " +
                      std::to_string(x0));
  }
}

void require_chaotic(const MapParam& p, const char* what) {
  if (!p.chaotic()) {
    throw DomainError(std::string(what) + " requires B >= e^-4, got " + std::to_string(p.b()));
  }
}

double step_or_throw(MapKind kind, const MapParam& p, double x, long step) {
  auto next = try_step(kind, p, x);
  if (!next) {
    throw OrbitEscaped("orbit of " + std::string(to_string(kind)) + " at B=" +
                           std::to_string(p.b()) + " left [0,1] at step " + std::to_string(step),
                       step);
  }
  return *next;
}

}  // namespace

MapKind parse_map_kind(std::string_view name) {
  if (name == "gl") return MapKind::GL;
  if (name == "numerator") return MapKind::Numerator;
  if (name == "gt" || name == "tent") return MapKind::Tent;
  throw DomainError("unknown map '" + std::string(name) + "' (expected gl, numerator or gt)");
}

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::GL: return "gl";
    case MapKind::Numerator: return "numerator";
    case MapKind::Tent: return "gt";
  }
  return "?";
}

std::optional<double> try_step(MapKind kind, const MapParam& p, double x) {
  double v = 0.0, slack = kRangeSlack;
  switch (kind) {
    case MapKind::GL:
      v = gl_unchecked(p, x);
      slack = gl_rounding_slack(p, x);
      break;
    case MapKind::Numerator: v = numerator_unchecked(p.b(), x); break;
    case MapKind::Tent:
      if (!(x >= 0.0 && x <= 1.0)) return std::nullopt;
      return tent_generalized(p, UnitInterval(x)).value();
  }
  if (v >= 0.0 && v <= 1.0) return v;
  if (v > 1.0 && v <= 1.0 + slack) return 1.0;
  if (v < 0.0 && v >= -slack) return 0.0;
  return std::nullopt;
}

OrbitSample orbit(MapKind map, double b, double x0, std::size_t length, std::size_t transient) {
  require_open_unit(x0, "x0");
  const MapParam p(b);
  if (map == MapKind::Tent) require_chaotic(p, "generalized tent orbit");

  OrbitSample out{map, b, x0, transient, {}};
  out.values.reserve(length);
  double x = x0;
  long step = 0;
  for (std::size_t i = 0; i < transient; ++i) x = step_or_throw(map, p, x, ++step);
  for (std::size_t i = 0; i < length; ++i) {
    x = step_or_throw(map, p, x, ++step);
    out.values.push_back(x);
  }
  return out;
}

LyapunovEstimate lyapunov(double b, double x0, std::size_t iterations, std::size_t transient) {
  require_open_unit(x0, "x0");
  if (iterations < 1000) {
    throw DomainError("Lyapunov estimate needs at least 1000 iterations, got " +
                      std::to_string(iterations));
  }
  const MapParam p(b);

  double x = x0;
  long step = 0;
  for (std::size_t i = 0; i < transient; ++i) x = step_or_throw(MapKind::GL, p, x, ++step);

  double sum = 0.0;
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < iterations; ++t) {
    if (x == 0.0) {
      throw DegenerateOrbit("orbit was absorbed by the fixed point 0 at step " +
                            std::to_string(step));
    }
    const double slope = std::abs(gl_derivative(p, UnitInterval(x), 1));
    if (slope < kCriticalDerivative) {
      ++skipped;
    } else {
      sum += std::log(slope);
    }
    x = step_or_throw(MapKind::GL, p, x, ++step);
  }
  if (skipped * 100 > iterations) {
    throw DegenerateOrbit(std::to_string(skipped) + " of " + std::to_string(iterations) +
                          " Lyapunov terms hit the critical point (limit is 1%)");
  }
  const double lambda = sum / static_cast<double>(iterations - skipped);
  return {b, lambda, iterations, transient, skipped};
}

double schwarzian(double b, double x) {
  const MapParam p(b);
  const UnitInterval u(x);
  const double d1 = gl_derivative(p, u, 1);
  if (!(std::abs(d1) > kSchwarzianMinSlope)) {
    throw DomainError("Schwarzian is undefined near the critical point (|f'| = " +
                      std::to_string(std::abs(d1)) + ")");
  }
  const double r2 = gl_derivative(p, u, 2) / d1;
  const double r3 = gl_derivative(p, u, 3) / d1;
  return r3 - 1.5 * r2 * r2;
}

std::vector<BifurcationPoint> bifurcation_scan(double b_start, double b_end, std::size_t b_steps,
                                               const ScanOptions& options) {
  if (!(b_start > 0.0) || !(b_end > b_start) || !std::isfinite(b_end)) {
    throw DomainError("bifurcation scan needs 0 < b_start < b_end");
  }
  if (b_steps < 2) throw DomainError("bifurcation scan needs at least 2 grid points");
  if (options.keep < 1) throw DomainError("bifurcation scan must keep at least 1 sample");
  require_open_unit(options.x0, "x0");
  if (options.map == MapKind::Tent) require_chaotic(MapParam(b_start), "generalized tent scan");

  std::vector<BifurcationPoint> points;
  points.reserve(b_steps);
  const double width = b_end - b_start;
  for (std::size_t i = 0; i < b_steps; ++i) {
    const double b = (i + 1 == b_steps)
                         ? b_end
                         : b_start + width * static_cast<double>(i) / static_cast<double>(b_steps - 1);
    const MapParam p(b);
    BifurcationPoint point{b, {}, false};
    point.attractor_samples.reserve(options.keep);
    double x = options.x0;
    for (std::size_t n = 0; n < options.transient + options.keep; ++n) {
      auto next = try_step(options.map, p, x);
      if (!next) {
        point.escaped = true;
        point.attractor_samples.clear();
        break;
      }
      x = *next;
      if (n >= options.transient) point.attractor_samples.push_back(x);
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::size_t distinct_rounded(const std::vector<double>& samples, double resolution) {
  std::set<long long> keys;
  for (double s : samples) keys.insert(std::llround(s / resolution));
  return keys.size();
}

double sample_spread(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return *hi - *lo;
}

bool is_collapsed(const BifurcationPoint& point) {
  return point.escaped || distinct_rounded(point.attractor_samples) <= kCollapseDistinctLimit;
}

std::optional<double> locate_escape_onset(const std::vector<BifurcationPoint>& scan) {
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (scan[i].escaped && !scan[i - 1].escaped) return scan[i].b;
  }
  return std::nullopt;
}

std::vector<ReturnPair> return_map(double b, double x0, std::size_t k, std::size_t count,
                                   std::size_t transient) {
  if (k < 1) throw DomainError("return map order k must be >= 1");
  if (count < 1) throw DomainError("return map needs count >= 1");
  const MapParam p(b);
  require_chaotic(p, "return map");
  const auto trajectory = orbit(MapKind::GL, b, x0, count + k, transient).values;

  std::vector<ReturnPair> pairs;
  pairs.reserve(count);
  for (std::size_t n = 0; n < count; ++n) pairs.push_back({trajectory[n], trajectory[n + k], k});
  return pairs;
}

TransitionMatrix symbolic_transitions(double b, double x0, std::size_t length) {
  const MapParam p(b);
  require_chaotic(p, "symbolic dynamics");
  const auto values = orbit(MapKind::GL, b, x0, length, 0).values;

  TransitionMatrix present{};
  int prev = symbol_of(x0);
  for (double v : values) {
    const int cur = symbol_of(v);
    present[prev][cur] = true;
    prev = cur;
  }
  return present;
}

}  // namespace bexp
