#pragma once

#include <stdexcept>
#include <string>

namespace arw {

/// n is not expressible as a sum of two squares.
class NotRepresentableError : public std::domain_error {
 public:
  explicit NotRepresentableError(const std::string& what) : std::domain_error(what) {}
};

/// Requested partial-derivative order is above the supported cap.
class UnsupportedOrderError : public std::invalid_argument {
 public:
  explicit UnsupportedOrderError(const std::string& what) : std::invalid_argument(what) {}
};

/// omega(n) is undefined because some split prime has exponent > 1.
class OmegaInvalidError : public std::domain_error {
 public:
  explicit OmegaInvalidError(const std::string& what) : std::domain_error(what) {}
};

/// Pigeonhole enumeration exhausted the caller-imposed box.
class NotFoundWithinBoxError : public std::runtime_error {
 public:
  explicit NotFoundWithinBoxError(const std::string& what) : std::runtime_error(what) {}
};

/// A grid vertex evaluated to exactly zero even after perturbation.
class DegenerateGridError : public std::runtime_error {
 public:
  explicit DegenerateGridError(const std::string& what) : std::runtime_error(what) {}
};

/// Nodal extraction is untrustworthy: too much length near near-singular zeros.
class SkippedLowMarginError : public std::runtime_error {
 public:
  explicit SkippedLowMarginError(const std::string& what) : std::runtime_error(what) {}
};

/// CLI / experiment configuration failed validation.
class ConfigInvalidError : public std::invalid_argument {
 public:
  explicit ConfigInvalidError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace arw
