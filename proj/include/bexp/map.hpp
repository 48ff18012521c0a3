#pragma once

// The B-Exponential map family
//
//   GL(B, x) = (B - x B^x - (1-x) B^(1-x)) / (B - sqrt(B)),   0 <= x <= 1, B > 0
//
// together with its numerator G(B, x), the sine-squared conjugacy C(x) and the
// generalized tent map GT = C^-1 o GL o C. Everything here is a pure function.

#include <cmath>
#include <limits>

namespace bexp {

// e^-4, below which GL stops mapping [0,1] onto itself.
inline double chaos_threshold() {
  static const double value = std::exp(-4.0);
  return value;
}

// |B - 1| below this evaluates GL through its B -> 1 limit 4x(1-x).
inline constexpr double kNearSingularWidth = 1e-6;

// Smallest excursion outside [0,1] treated as rounding and clamped. GL widens
// it where its numerator cancels (see gl_rounding_slack).
inline constexpr double kRangeSlack = 4.0 * std::numeric_limits<double>::epsilon();

enum class Regime { SubChaotic, Chaotic };

// The map parameter B, validated and classified once.
class MapParam {
 public:
  explicit MapParam(double b);

  double b() const noexcept { return b_; }
  Regime regime() const noexcept { return regime_; }
  bool chaotic() const noexcept { return regime_ == Regime::Chaotic; }
  bool near_singular() const noexcept { return near_singular_; }
  // ln B, cached since every evaluation needs it.
  double log_b() const noexcept { return log_b_; }

 private:
  double b_;
  double log_b_;
  Regime regime_;
  bool near_singular_;
};

// A state value constrained to [0,1].
class UnitInterval {
 public:
  explicit UnitInterval(double x);

  double value() const noexcept { return x_; }
  operator double() const noexcept { return x_; }

 private:
  double x_;
};

UnitInterval gl(const MapParam& p, UnitInterval x);

// GL evaluated for any real x with no codomain check. Used by the dynamics
// code to observe orbits escaping [0,1] when B < e^-4. May return +-inf/NaN.
double gl_unchecked(const MapParam& p, double x);

// d^n GL / dx^n for n in {1, 2, 3}.
double gl_derivative(const MapParam& p, UnitInterval x, int order);

// G(B, x) = B - x B^x - (1-x) B^(1-x), no normalization, no clamping.
double numerator(double b, UnitInterval x);
double numerator_unchecked(double b, double x);

// C(x) = sin^2(pi x / 2) and its inverse (2/pi) asin(sqrt(y)).
UnitInterval conjugacy(UnitInterval x);
UnitInterval conjugacy_inverse(UnitInterval y);

// Generalized tent map. Requires B >= e^-4.
UnitInterval tent_generalized(const MapParam& p, UnitInterval x);

// Clamp v into [0,1] if it is within `slack` of the interval; throws
// NumericFault otherwise.
double clamp_to_unit(double v, const char* what, double slack = kRangeSlack);

// How far gl_unchecked(p, x) may stray outside [0,1] through rounding alone.
double gl_rounding_slack(const MapParam& p, double x);

}  // namespace bexp
