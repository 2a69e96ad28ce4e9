#pragma once

#include <stdexcept>
#include <string>

namespace pseudoseg {

/// Base class for every domain error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Genericity failure: a vertex of one curve lies on another curve.
class DegenerateError : public Error {
 public:
  DegenerateError(std::string curve_a, std::size_t segment_a, std::string curve_b,
                  std::size_t segment_b)
      : Error("degenerate configuration: curve '" + curve_a + "' segment " +
              std::to_string(segment_a) + " touches curve '" + curve_b + "' segment " +
              std::to_string(segment_b)),
        curve_a_(std::move(curve_a)),
        curve_b_(std::move(curve_b)),
        segment_a_(segment_a),
        segment_b_(segment_b) {}

  const std::string& curve_a() const { return curve_a_; }
  const std::string& curve_b() const { return curve_b_; }
  std::size_t segment_a() const { return segment_a_; }
  std::size_t segment_b() const { return segment_b_; }

 private:
  std::string curve_a_;
  std::string curve_b_;
  std::size_t segment_a_;
  std::size_t segment_b_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class InvalidThroughs : public Error {
 public:
  using Error::Error;
};

class ChoiceMismatch : public Error {
 public:
  using Error::Error;
};

class RealizationFailure : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class MalformedStream : public Error {
 public:
  using Error::Error;
};

class ShatterHypothesisFailed : public Error {
 public:
  ShatterHypothesisFailed(std::size_t z, std::size_t value)
      : Error("shatter hypothesis fails at z=" + std::to_string(z) + " (pi=" +
              std::to_string(value) + ")"),
        z_(z),
        value_(value) {}
  std::size_t z() const { return z_; }
  std::size_t value() const { return value_; }

 private:
  std::size_t z_;
  std::size_t value_;
};

class NotDoubleGrounded : public Error {
 public:
  using Error::Error;
};

class SharedCrossingX : public Error {
 public:
  using Error::Error;
};

class SharedEndpointX : public Error {
 public:
  using Error::Error;
};

class UnknownWire : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class RetryLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudoseg
