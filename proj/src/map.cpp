#include "bexp/map.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "bexp/error.hpp"

namespace bexp {
namespace {

// B - sqrt(B) written as sqrt(B) * (sqrt(B) - 1) so it stays accurate near B = 1.
double denominator(double log_b) {
  return std::exp(0.5 * log_b) * std::expm1(0.5 * log_b);
}

// Numerator with the constant terms regrouped through expm1:
//   (B-1) - a (B^a - 1) - b (B^b - 1),  a + b = 1.
// Every term is O(ln B), so the cancellation near B = 1 costs a bounded
// number of ulps instead of growing like 1/(B-1).
double numerator_core(double log_b, double a, double b) {
  return (std::expm1(log_b) - a * std::expm1(a * log_b)) - b * std::expm1(b * log_b);
}

// n-th derivative of t -> t B^t:  B^t (ln B)^(n-1) (n + t ln B).
double weighted_power_derivative(double log_b, double t, int n) {
  return std::exp(t * log_b) * std::pow(log_b, n - 1) * (n + t * log_b);
}

// Rounding bound for numerator_core / denominator: a few ulps scaled by how
// much the numerator terms cancel. Near e^-4 the terms are ~8x the result.
double cancellation_slack(double log_b, double a, double b) {
  const double t0 = std::expm1(log_b), ta = a * std::expm1(a * log_b), tb = b * std::expm1(b * log_b);
  const double sum = std::abs(t0 - ta - tb);
  if (!(sum > 0.0)) return kRangeSlack;
  return std::max(kRangeSlack, kRangeSlack * (std::abs(t0) + std::abs(ta) + std::abs(tb)) / sum);
}

}  // namespace

MapParam::MapParam(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("map parameter B must be a finite positive number, got " +
                      std::to_string(b));
  }
  log_b_ = std::log(b);
  regime_ = b >= chaos_threshold() ? Regime::Chaotic : Regime::SubChaotic;
  near_singular_ = std::abs(b - 1.0) < kNearSingularWidth;
}

UnitInterval::UnitInterval(double x) : x_(x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("value must lie in [0,1], got " + std::to_string(x));
  }
}

double clamp_to_unit(double v, const char* what, double slack) {
  if (v >= 0.0 && v <= 1.0) return v;
  if (v > 1.0 && v <= 1.0 + slack) return 1.0;
  if (v < 0.0 && v >= -slack) return 0.0;
  throw NumericFault(std::string(what) + " produced " + std::to_string(v) +
                     ", outside [0,1] beyond rounding tolerance");
}

double gl_unchecked(const MapParam& p, double x) {
  if (p.near_singular()) return 4.0 * x * (1.0 - x);
  const double l = p.log_b();
  return numerator_core(l, x, 1.0 - x) / denominator(l);
}

double gl_rounding_slack(const MapParam& p, double x) {
  if (p.near_singular()) return kRangeSlack;
  return cancellation_slack(p.log_b(), x, 1.0 - x);
}

UnitInterval gl(const MapParam& p, UnitInterval x) {
  return UnitInterval(clamp_to_unit(gl_unchecked(p, x), "GL", gl_rounding_slack(p, x)));
}

double gl_derivative(const MapParam& p, UnitInterval x, int order) {
  if (order < 1 || order > 3) {
    throw DomainError("derivative order must be 1, 2 or 3, got " + std::to_string(order));
  }
  const double xv = x;
  if (p.near_singular()) {
    switch (order) {
      case 1: return 4.0 - 8.0 * xv;
      case 2: return -8.0;
      default: return 0.0;
    }
  }
  const double l = p.log_b();
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  const double d = weighted_power_derivative(l, xv, order) +
                   sign * weighted_power_derivative(l, 1.0 - xv, order);
  return -d / denominator(l);
}

double numerator_unchecked(double b, double x) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("numerator map parameter B must be positive, got " + std::to_string(b));
  }
  return numerator_core(std::log(b), x, 1.0 - x);
}

double numerator(double b, UnitInterval x) { return numerator_unchecked(b, x); }

UnitInterval conjugacy(UnitInterval x) {
  const double s = std::sin(0.5 * std::numbers::pi * x.value());
  return UnitInterval(std::min(1.0, s * s));
}

UnitInterval conjugacy_inverse(UnitInterval y) {
  return UnitInterval(std::min(1.0, 2.0 / std::numbers::pi * std::asin(std::sqrt(y.value()))));
}

UnitInterval tent_generalized(const MapParam& p, UnitInterval x) {
  if (!p.chaotic()) {
    throw DomainError("generalized tent map requires B >= e^-4, got " + std::to_string(p.b()));
  }
  const double xv = x;
  if (p.near_singular()) return UnitInterval(1.0 - 2.0 * std::abs(xv - 0.5));

  // Closed form with s = sin^2(pi x/2) and 1 - s = cos^2(pi x/2) taken directly.
  const double half_angle = 0.5 * std::numbers::pi * xv;
  const double sn = std::sin(half_angle);
  const double cs = std::cos(half_angle);
  const double l = p.log_b();
  const double inner = clamp_to_unit(numerator_core(l, sn * sn, cs * cs) / denominator(l), "GT",
                                     cancellation_slack(l, sn * sn, cs * cs));
  return UnitInterval(std::min(1.0, 2.0 / std::numbers::pi * std::asin(std::sqrt(inner))));
}

}  // namespace bexp
