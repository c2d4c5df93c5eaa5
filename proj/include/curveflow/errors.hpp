#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curveflow {

/// Base class for all library-specific failures. Argument validation uses
/// std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S_thetatheta + S dropped to or below the strict-convexity floor.
class DegenerateCurvatureError : public Error {
 public:
  DegenerateCurvatureError(const std::string& what, double margin, double theta,
                           std::size_t index)
      : Error(what), margin_(margin), theta_(theta), index_(index) {}

  double margin() const { return margin_; }
  double theta() const { return theta_; }
  std::size_t index() const { return index_; }

 private:
  double margin_;
  double theta_;
  std::size_t index_;
};

/// Curve handed to support_of is not strictly convex and counterclockwise.
class NonConvexInputError : public Error {
 public:
  using Error::Error;
};

/// Forcing text rejected; offset is the byte position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Forcing evaluation failed: a referenced context field is missing, or the
/// result is non-finite at some grid point.
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& what) : Error(what), has_location_(false) {}
  EvalError(const std::string& what, std::size_t index, double theta)
      : Error(what), has_location_(true), index_(index), theta_(theta) {}

  bool has_location() const { return has_location_; }
  std::size_t index() const { return index_; }
  double theta() const { return theta_; }

 private:
  bool has_location_;
  std::size_t index_ = 0;
  double theta_ = 0.0;
};

/// dF/dS requested for a forcing that depends on derivative or curvature
/// variables; callers should use the matrix-free Jacobian instead.
class UnsupportedDerivativeError : public Error {
 public:
  using Error::Error;
};

/// Time stepping produced a non-finite state.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Configuration file or flag rejected; key names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key) : Error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace curveflow
