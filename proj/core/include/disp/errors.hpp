#pragma once

#include <stdexcept>
#include <string>

namespace disp {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must share a dimension do not.
class DimensionMismatchError : public Error {
public:
  using Error::Error;
};

/// An AxisBox violates 0 <= a_i < b_i <= 1.
class MalformedBoxError : public Error {
public:
  using Error::Error;
};

/// A parameter is outside its documented range, or a stated
/// precondition (epsilon window, dimension requirement, ...) fails.
/// The message spells out the violated inequality.
class ValidityError : public Error {
public:
  using Error::Error;
};

/// Malformed input text (point-set or set-family files).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A search exceeded its node budget. Carries the best bound proved
/// before giving up; never a silent approximation.
class BudgetExceededError : public Error {
public:
  BudgetExceededError(const std::string& what, double best_value, long long nodes)
      : Error(what), best_value(best_value), nodes(nodes) {}
  double best_value;
  long long nodes;
};

}  // namespace disp
