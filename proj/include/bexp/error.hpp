#pragma once

#include <stdexcept>
#include <string>

namespace bexp {

// Bad caller input: parameters outside a documented domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed value left its codomain by more than rounding can explain.
// Indicates a defect in the evaluation path, not bad input.
class NumericFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An orbit left [0,1] (or became non-finite) while being iterated.
class OrbitEscaped : public std::runtime_error {
 public:
  OrbitEscaped(std::string what, long step)
      : std::runtime_error(std::move(what)), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

// An orbit fell onto a state where the requested quantity is undefined
// (absorbing fixed point, too many critical-point hits).
class DegenerateOrbit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistic is undefined for the given data (e.g. zero variance).
class UndefinedStatistic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bexp
