#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace slitlab {

/// Base class for every error raised by the library.
/// `kind()` is a stable machine-readable tag used by the CLI error report.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message) : Error("invalid_argument", message) {}
};

/// Raised when a Fresnel quadrature grid is too coarse for the requested propagation.
class SamplingError : public Error {
 public:
  SamplingError(const std::string& message, double required_spacing)
      : Error("sampling_criterion", message), required_spacing_(required_spacing) {}

  /// Largest input spacing (meters) that would satisfy the criterion.
  double required_spacing() const noexcept { return required_spacing_; }

 private:
  double required_spacing_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& message)
      : Error("io", path + ": " + message), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace slitlab
